#pragma once

#include "polyapx/blocks.hpp"
#include "polyapx/symmetric.hpp"

namespace polyapx {

struct ExtensionResult {
    SymApprox input;
    int m = 0;
    int n = 0;
    Rational delta;
    SymApprox output;
    double degree_ratio = 0;  // deg(out)/(deg(in) + log2(1/δ))·√((m+1)/n)
    bool passthrough = false;
    int d = 0;           // max(deg φ, 1)
    Rational alpha;      // indicator accuracy, ≤ δ(4e)^(−d−1)
    IndicatorParams indicator;
};

// phi approximates F_{2m} on weights 0..2m; F must vanish on (m, 2m]
ExtensionResult extend_approx(const SymApprox& phi, int m, int n, const Rational& delta);
extern const double kExtensionDegreeConstant;  // K_ext

// f vanishing above weight k: extension of the exact interpolant on 0..2m,
// m = ⌈k + log2(1/eps)⌉
SymApprox small_support_core(const SymSpec& spec, const Rational& eps);
// any symmetric f: λ + f′(t) + f″(n − t), each small-support part at eps/2
SymApprox small_support_approx(const SymSpec& spec, const Rational& eps);

// 2^d·C(⌈weight/⌊m/d⌋⌉, d)
Integer extrapolation_bound(int d, int m, int N, int weight);

}  // namespace polyapx
