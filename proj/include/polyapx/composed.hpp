#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "polyapx/oracle.hpp"
#include "polyapx/polyexpr.hpp"

namespace polyapx {

// p at 0..top: exact, or at kDefaultPrecision checked against p2 at twice that and rationalized
std::vector<Rational> count_values(const PolyExpr& p, const PolyExpr& p2, int top);

// ---- surjectivity ----

struct BlockTerm {
    int ell = 0;                    // column-subset size
    Rational mu;                    // coefficient of Σ_{|S|=ell} ∧_{j∈S} [column j empty]
    PolyExpr q;                     // replacement for that conjunction, in the count Σ_{j∈S} w_j
    std::vector<Rational> q_values; // q at counts 0..n (rationalized after the 2P recheck)
    Rational q_err;                 // certified |q − [count = 0]| on 0..n
    int degree = 0;
};

struct BlockSymApprox {
    int n = 0, r = 0;
    bool general = false;   // ε < 1/3 path (AND-based outer) instead of the Chebyshev outer
    int outer_degree = 0;
    PolyExpr outer;         // in the number of nonempty columns c
    std::vector<Rational> outer_values;  // outer(c) for c = 0..r, exact or rationalized
    Rational outer_err;     // max_c |outer(c) − [c = r]|
    Rational conj_err;      // Σ_ell |mu|·C(r,ell)·q_err
    std::vector<BlockTerm> terms;
    Rational certified_eps; // outer_err + conj_err
    int tracked_degree = 0;

    // value at column weights w_1..w_r
    Rational eval(const std::vector<int>& w) const;
    // outer polynomial applied to the exact count of nonempty columns
    Rational outer_eval(const std::vector<int>& w) const;
    // Σ_{ell ≤ k} mu_ell·C(k, ell): the collapsed expansion at k empty columns
    Rational expansion_at(int k) const;
    static int target(const std::vector<int>& w);
};

BlockSymApprox surjectivity_approx(int n, int r, const Rational& eps);
// all weight vectors with Σ w_j ≤ n
std::vector<std::vector<int>> weight_vectors(int n, int r);
struct BlockSweep {
    Rational max_err;
    std::vector<int> argmax;
    size_t count = 0;
};
BlockSweep sweep_block(const BlockSymApprox& a);
// tracked_degree ≤ K_surj·(√n·(r·log2(1/ε))^(1/4) + √(n·log2(1/ε)))
extern const double kSurjDegreeConstant;
double surj_degree_shape(int n, int r, const Rational& eps);

// ---- selector composition ----

enum class InnerPolicy { ExactInterpolant, OracleOptimal };

struct SelectorInstance {
    int M = 0;                        // x ranges over masks of M bits
    std::vector<uint32_t> X;          // explicit domain
    int N = 0, n = 0, b = 1;
    std::vector<std::vector<int>> f;  // f[i][j] = f_{i+1}(X[j])
    InnerPolicy inner = InnerPolicy::ExactInterpolant;
};

struct SelectorResult {
    int outer_degree = 0;                // d of the OR_{n/b} approximant
    std::vector<Rational> a;             // a_0..a_d
    Rational outer_err;
    Rational inner_target;               // required ‖f_S − f̃_S‖
    Rational inner_err;                  // worst achieved
    int max_inner_degree = 0;
    int degree_bound = 0;                // max deg f̃_S + d·b
    std::function<Rational(size_t, uint32_t)> eval;  // F̃(X[j], y)
    std::function<int(size_t, uint32_t)> target;     // F(X[j], y)
    Rational max_error;                  // exhaustive over x ∈ X, |y| = n
};

SelectorResult selector_compose(const SelectorInstance& inst, const Rational& eps);
// outer d·b ≤ C·√(n·b·log2(1/ε)) on toy instances
extern const double kSelectorConstant;

// φ′ over (x: M, y: N, z: n) variables ↦ φ*(x, y) = E_{|z| = n − |y|} φ′(x, y z), multilinear in (x, y)
MultilinearPoly homogenize(const MultilinearPoly& phi_prime, int M, int N, int n);

// ---- conjunction norm ledger ----

struct PiExpr {
    enum class Kind { Constant, Conjunction, Disjunction, Table, Sum, Product, Compose };
    Kind kind = Kind::Constant;
    Rational value;                  // Constant
    uint32_t pos = 0, neg = 0;       // literal masks for Conjunction / Disjunction
    std::vector<Rational> table;     // Table: values on {0,1}^nvars
    std::vector<Rational> weights;   // Sum
    std::vector<std::shared_ptr<PiExpr>> kids;
    RatPoly p;                       // Compose: p ∘ kids[0]

    static std::shared_ptr<PiExpr> constant(const Rational& c);
    static std::shared_ptr<PiExpr> conjunction(uint32_t pos, uint32_t neg);
    static std::shared_ptr<PiExpr> disjunction(uint32_t pos, uint32_t neg);
    static std::shared_ptr<PiExpr> from_table(std::vector<Rational> t);
    static std::shared_ptr<PiExpr> sum(std::vector<std::shared_ptr<PiExpr>> kids, std::vector<Rational> weights);
    static std::shared_ptr<PiExpr> product(std::vector<std::shared_ptr<PiExpr>> kids);
    static std::shared_ptr<PiExpr> compose(RatPoly p, std::shared_ptr<PiExpr> inner);

    Rational eval(uint32_t x) const;
};
using PiPtr = std::shared_ptr<PiExpr>;

Rational pi_norm_bound(const PiExpr& e);
// explicit expansion into conjunctions, keyed by (pos, neg) literal masks
std::map<std::pair<uint32_t, uint32_t>, Rational> conjunction_expansion(const PiExpr& e, int nvars);

}  // namespace polyapx
