#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "polyapx/rational.hpp"

namespace polyapx {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;  // seconds
    std::vector<std::string> details;
};

constexpr uint64_t kAcceptanceSeed = 20240601;

// runs one criterion (1..11); details are collected, nothing is printed
CriterionResult run_criterion(int id, uint64_t seed = kAcceptanceSeed);
// runs every criterion, printing one PASS/FAIL line each (details indented below)
std::vector<CriterionResult> run_acceptance(std::ostream& out, uint64_t seed = kAcceptanceSeed);

// E(f,d) by enumerating (d+2)-point references: on each reference the
// levelled error h solves p(x_i) + (−1)^i h = f_i; E is the largest |h|
Rational reference_minimax(const std::vector<std::pair<Rational, Rational>>& values, int d);

}  // namespace polyapx
