#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "polyapx/poly.hpp"

namespace polyapx {

struct MinimaxResult {
    Rational eps_star;
    RatPoly coeffs;                  // in the original node variable
    std::vector<int> active_points;  // indices into the node list with |err| = eps_star
    std::vector<int> active_signs;   // sign of p − f at each active point
    int d = 0;
    // longest run of active points (in node order) with alternating error signs
    int alternation() const;
};

// min over c of max_i |Σ_j c_j·basis_values[i][j] − targets[i]|, exact
struct BasisMinimax {
    Rational eps_star;
    std::vector<Rational> coeffs;
};
BasisMinimax minimax_lp_basis(const std::vector<std::vector<Rational>>& basis_values, const std::vector<Rational>& targets);

// E(f,d) on a finite point set, by an exact simplex (Bland's rule) on the LP dual
MinimaxResult minimax_lp(const std::vector<std::pair<Rational, Rational>>& values, int d);
// spectrum on weights 0..n
MinimaxResult minimax_lp(const std::vector<Rational>& spectrum, int d);
// smallest d with E(f,d) ≤ eps
int deg_eps(const std::vector<Rational>& spectrum, const Rational& eps);

// Multilinear polynomial over N ≤ 20 variables; monomials are bitmasks.
struct MultilinearPoly {
    int N = 0;
    std::map<uint32_t, Rational> coef;
    int degree() const;
    Rational norm() const;
    Rational eval(uint32_t x) const;
    Rational eval(const std::vector<Rational>& x) const;
};
using BoolFn = std::function<Rational(uint32_t)>;
// exact on all x with |x| ≤ n, degree ≤ n
MultilinearPoly multilinear_interpolant(int N, int n, const BoolFn& f);

// polynomial in block weights w_1..w_k; key = exponent vector
struct BlockPoly {
    std::vector<int> block_sizes;
    std::map<std::vector<int>, Rational> coef;
    int degree() const;
    Rational eval(const std::vector<Rational>& w) const;
};
// blocks are consecutive runs of variables: first block_sizes[0] variables, and so on
BlockPoly symmetrize(const MultilinearPoly& phi, const std::vector<int>& block_sizes);
RatPoly symmetrize_univariate(const MultilinearPoly& phi);

// ∏ f_i = Σ_{∅≠S} (−1)^(|S|+1) ∨_{i∈S} f_i
struct InclExcl {
    std::vector<std::pair<int, uint32_t>> terms;  // (sign, subset of function indices)
    std::vector<std::vector<int>> fs;
    int eval(size_t point) const;
};
InclExcl incl_excl_expand(const std::vector<std::vector<int>>& truth_tables);

}  // namespace polyapx
