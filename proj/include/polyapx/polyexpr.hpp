#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "polyapx/poly.hpp"

namespace polyapx {

using Coef = std::variant<Rational, BigFloat>;

// Univariate polynomial kept as an expression tree (products, compositions,
// Chebyshev and binomial-tail leaves). Degrees reach the thousands in the
// interval indicator, where monomial coefficients would be astronomically
// large; the tree evaluates stably and still expands when small.
class PolyExpr {
public:
    enum class Kind { Mono, MonoF, Cheb, BinomTail, Compose, Product, Power, LinComb };

    PolyExpr();  // zero polynomial

    static PolyExpr constant(const Rational& c);
    static PolyExpr constant(const BigFloat& c);
    static PolyExpr identity();
    static PolyExpr mono(RatPoly p);
    static PolyExpr mono(FloatPoly p);
    static PolyExpr cheb(int d);
    // Σ_{i≥k} C(d,i) t^i (1−t)^(d−i)
    static PolyExpr binom_tail(int d, int k);
    static PolyExpr compose(const PolyExpr& outer, const PolyExpr& inner);
    static PolyExpr product(std::vector<PolyExpr> factors);
    static PolyExpr power(const PolyExpr& base, int e);
    static PolyExpr lincomb(const Coef& c0, std::vector<std::pair<Coef, PolyExpr>> terms);

    Kind kind() const;
    int degree() const;
    bool exact() const;     // every coefficient rational
    long precision() const; // largest float leaf precision, 0 when exact

    BigFloat eval(const BigFloat& t) const;
    Rational eval(const Rational& t) const;  // BackendMismatch unless exact()

    RatPoly expand_exact() const;
    FloatPoly expand_float(long prec) const;

    // node accessors for serialization
    const RatPoly& rat_poly() const;
    const FloatPoly& float_poly() const;
    int param_d() const;
    int param_k() const;
    const std::vector<PolyExpr>& children() const;
    const std::vector<Coef>& coefs() const;  // LinComb: [c0, c1, ...]

    friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) { return product({a, b}); }
    friend PolyExpr operator+(const PolyExpr& a, const PolyExpr& b) {
        return lincomb(Rational(0), {{Rational(1), a}, {Rational(1), b}});
    }
    friend PolyExpr operator-(const PolyExpr& a, const PolyExpr& b) {
        return lincomb(Rational(0), {{Rational(1), a}, {Rational(-1), b}});
    }
    friend PolyExpr operator*(const Coef& c, const PolyExpr& a) { return lincomb(Rational(0), {{c, a}}); }

    struct Node;

private:
    explicit PolyExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// a·t + b over rationals
PolyExpr affine(const Rational& a, const Rational& b);

Coef coef_abs(const Coef& c);
BigFloat coef_float(const Coef& c, long prec);

}  // namespace polyapx
