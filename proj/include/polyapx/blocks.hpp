#pragma once

#include "polyapx/polyexpr.hpp"

namespace polyapx {

// T(t)/T(0), T = (∏_i T_{⌈√(n/2^i)⌉}(1 + (2^i − t)/n))^d, i = 0..⌈log2 n⌉
PolyExpr dyadic_decay_poly(int n, int d);

struct ReciprocalApprox {
    RatPoly poly;
    Rational eps;  // (1−eps)/t ≤ p(t) ≤ (1+eps)/t on [1, n]
};
ReciprocalApprox reciprocal_approx(int d, const Rational& n);
// degree ⌊√(2(n−1))⌋, rescaled by 1/(1+eps) so that 1/(2t) ≤ p(t) ≤ 1/t on [1, n]
RatPoly reciprocal_corollary(const Rational& n);
int reciprocal_corollary_degree(const Rational& n);

// Σ_{i≤D} C(i+d−1, i)(1−t)^i
RatPoly reciprocal_power_approx(int d, int D);
// same polynomial, kept in the variable u = 1 − t (positive coefficients)
RatPoly reciprocal_power_in_u(int d, int D);

// binomial tail with threshold ⌈2.5e^−7·d⌉
PolyExpr amplifier_poly(int d);
int amplifier_threshold(int d);
// exp(−d·κ), κ = min KL(2.5e^−7 ‖ {2,3}e^−7); bounds both tails
BigFloat amplifier_eps(int d, long prec = kDefaultPrecision);

// P[Bin(d, y) < k], summed directly so tiny values keep relative accuracy
BigFloat binomial_lower_tail(int d, int k, const BigFloat& y);

struct IndicatorCertificate {
    Rational err_on_01;    // |p − 1| on [0,1]
    Rational bound_on_12;  // |p| on (1,2]
    Rational decay_const;  // |p(t)|·t^d on (2,n]
};

struct IndicatorParams {
    int D = 0;        // truncation order of the 1/t^d series
    int deg_p1 = 0;   // reciprocal approximant degree
    int s = 0;        // Chebyshev degree inside the amplifier, ⌈√n⌉
    int amp_d = 0;    // amplifier (binomial tail) degree
    int amp_k = 0;    // its threshold count
    Rational eps3;    // amplifier tail target
    Rational series_err;  // (5/6)^(D+1)·C(D+d,d)·d
};

struct IntervalIndicator {
    Rational n;
    int d = 0;
    Rational eps;
    PolyExpr poly;
    IndicatorCertificate certified;
    IndicatorParams params;
    int degree() const { return poly.degree(); }
};

// Amplifier input normalization: q*(t) = (T_s(1 + (2−t)/s²) + 1)/Q. On [0,1]
// q* ≥ 3/Q, on [2, s²] q* ≤ 2/Q, and q* ∈ [0,1] on [0, s²].
Rational indicator_amp_scale();  // Q
Rational indicator_amp_good();   // 3/Q
Rational indicator_amp_bad();    // 2/Q
Rational indicator_amp_theta();  // midpoint

IntervalIndicator interval_indicator(const Rational& n, int d, const Rational& eps);

// K_sig: deg ≤ K_sig·√n·(d + log2(1/eps))
extern const double kIndicatorDegreeConstant;

// T_d(1 − c(n − t)), d = ⌈(π/4)√(n/(n−m))⌉, c = (1 − cos(π/2d))/(n − m):
// value 1 at n, 0 at m, bounded by 1 on [0, n]
PolyExpr single_zero_factor(int n, int m, long prec = kDefaultPrecision);
int single_zero_degree(int n, int m);

}  // namespace polyapx
