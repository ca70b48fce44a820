#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polyapx/polyexpr.hpp"

namespace polyapx {

struct SymSpec {
    int n = 0;
    std::vector<Rational> values;  // f(0..n), each in [−1,1]
    int ell = 0;     // smallest ℓ with f constant on weights in the open interval (ℓ, n−ℓ)
    int supp_k = 0;  // smallest k with f(t) = 0 for all t > k

    static SymSpec from_values(std::vector<Rational> values);
    static SymSpec and_spec(int n);
    static SymSpec or_spec(int n);
    static SymSpec exact_spec(int n, int j);  // EXACT_{n,j}
    static SymSpec constant(int n, const Rational& c);
};

enum class Construction { AndCheb, ExactWeight, SymmetricCombo, Sampling, Extension, Interpolant };
std::string construction_name(Construction c);
Construction parse_construction(const std::string& s);

struct SymApprox {
    SymSpec spec;
    PolyExpr poly;  // in the Hamming weight t
    Rational certified_eps;
    Construction construction = Construction::Interpolant;
    std::set<int> exact_on;
    int argmax = 0;
    long precision = 0;  // 0 when the polynomial is exact
    std::function<PolyExpr(long)> builder;  // rebuilds poly at another precision (may be empty)
    int degree() const { return poly.degree(); }
    PolyExpr rebuild(long prec) const { return builder ? builder(prec) : poly; }
};

constexpr int kExactSweepMaxDegree = 2048;

// Exhaustive sweep over weights 0..n. Float-backed polynomials are rebuilt at
// 2·prec by `build` and every value must agree at half precision.
struct WeightSweep {
    Rational max_err;
    int argmax = 0;
    std::set<int> exact_on;  // |err| = 0 (exact) or ≤ 2^−100 (float)
    std::vector<Rational> errors;
};
WeightSweep sweep_weights(const std::function<PolyExpr(long)>& build, const std::vector<Rational>& target,
                          long prec = kDefaultPrecision);
SymApprox certify(SymSpec spec, const std::function<PolyExpr(long)>& build, Construction c,
                  long prec = kDefaultPrecision);

enum class Which { AND, OR };

// raw Chebyshev-product polynomial with p(n) = 1 and |p| ≤ 1 on [0,n] (d < n)
PolyExpr and_cheb_raw(int n, int d, long prec = kDefaultPrecision);
SymApprox and_or_approx(int n, int d, Which which, long prec = kDefaultPrecision);
// smallest d whose certified error is ≤ eps
SymApprox and_or_for_eps(int n, const Rational& eps, Which which, long prec = kDefaultPrecision);

struct ExactWeightParams {
    int ell = 0, r = 0;
    bool interpolant = false;
};
ExactWeightParams exact_weight_params(int n, int m, const Rational& eps);
// polynomial for EXACT_{n,n−k}; exact on weights ≤ m and ≥ n−m
PolyExpr exact_weight_poly(int n, int k, int m, const Rational& eps, long prec = kDefaultPrecision);
SymApprox exact_weight_approx(int n, int k, int m, const Rational& eps, long prec = kDefaultPrecision);

// degree-≤n interpolant of the spectrum
RatPoly spectrum_interpolant(const SymSpec& spec);
SymApprox interpolant_approx(const SymSpec& spec);

SymApprox symmetric_approx(const SymSpec& spec, const Rational& eps, long prec = kDefaultPrecision);

struct SamplingResult {
    SymApprox approx;
    Rational pi_norm_bound;
    Rational pq_norm;   // ‖p·q‖ (0 on the fallback branch)
    int inner_d = 0;    // 5⌈8k + ln(1/eps)⌉
    int pq_degree = 0;
    bool fallback = false;
    std::vector<Rational> nodes;  // t_0..t_n
    RatPoly pq;
};
SamplingResult sampling_approx(const SymSpec& spec, const Rational& eps);
// frozen exponent a in pi_norm_bound ≤ 2^(a(k + log2(1/eps)))
extern const double kSamplingNormExponent;

struct LinearFormApprox {
    int N = 0, n = 0;
    std::vector<int> A, B;  // 1-based variable indices
    bool conjunction = false;
    PolyExpr poly;          // applied to count = Σ_A x_i + Σ_B (1 − x_i)
    int count_max = 0;      // largest achievable count
    Rational certified_eps;
    int degree() const { return poly.degree(); }
    // value of the target and the approximant on an explicit input
    int target(const std::vector<int>& x) const;
    int count(const std::vector<int>& x) const;
};
LinearFormApprox restricted_disjunction_approx(int N, int n, const std::vector<int>& A, const std::vector<int>& B,
                                               int d, long prec = kDefaultPrecision);
// ∧_A x_i ∧ ∧_B ¬x_i, via the disjunction with A and B exchanged
LinearFormApprox restricted_conjunction_approx(int N, int n, const std::vector<int>& A, const std::vector<int>& B,
                                               int d, long prec = kDefaultPrecision);
// error ≤ ½·exp(−c_impl·d²/n)
extern const double kDisjunctionDecayConstant;

// K in: smallest d with AND error ≤ 1/3 is ≤ K√n
extern const double kPaturiConstant;

}  // namespace polyapx
