#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "polyapx/bigfloat.hpp"
#include "polyapx/errors.hpp"
#include "polyapx/rational.hpp"

namespace polyapx {

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const BigFloat& x) { return x.is_zero(); }

// constant v in the same backend (and precision) as proto
inline Rational like(const Rational&, long v) { return Rational(v); }
inline BigFloat like(const BigFloat& proto, long v) { return BigFloat(v, proto.prec()); }
inline Rational like(const Rational&, const Rational& v) { return v; }
inline BigFloat like(const BigFloat& proto, const Rational& v) { return BigFloat(v, proto.prec()); }

inline long precision_of(const Rational&) { return 0; }
inline long precision_of(const BigFloat& x) { return x.prec(); }

// Dense polynomial, coefficient i multiplies t^i. No trailing zeros.
template <class T>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    static UniPoly constant(const T& c) { return UniPoly(std::vector<T>{c}); }
    // a·t + b
    static UniPoly linear(const T& a, const T& b) { return UniPoly(std::vector<T>{b, a}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](size_t i) const { return c_[i]; }
    T coeff(int i, const T& proto) const {
        return i >= 0 && i <= degree() ? c_[static_cast<size_t>(i)] : like(proto, 0);
    }
    const T& leading() const { return c_.back(); }

    T eval(const T& t) const {
        if (c_.empty()) return like(t, 0);
        if (precision_of(c_.front()) != precision_of(t))
            throw BackendMismatch("polynomial and argument precisions differ");
        T acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) {
            acc *= t;
            acc += c_[i];
        }
        return acc;
    }

    T norm(const T& proto) const {
        T s = like(proto, 0);
        for (const auto& a : c_) s += abs(a);
        return s;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d;
        for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(like(c_[i], static_cast<long>(i))));
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        const auto& lo = a.c_.size() < b.c_.size() ? a : b;
        const auto& hi = a.c_.size() < b.c_.size() ? b : a;
        std::vector<T> r = hi.c_;
        for (size_t i = 0; i < lo.c_.size(); ++i) r[i] += lo.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<T> r;
        for (const auto& x : a.c_) r.push_back(-x);
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, like(a.c_.front(), 0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const T& s, const UniPoly& a) {
        std::vector<T> r;
        for (const auto& x : a.c_) r.push_back(s * x);
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = UniPoly<Rational>;
using FloatPoly = UniPoly<BigFloat>;

template <class T>
T poly_eval(const UniPoly<T>& p, const T& t) {
    return p.eval(t);
}

template <class T>
T poly_norm(const UniPoly<T>& p, const T& proto) {
    return p.norm(proto);
}

inline Rational poly_norm(const RatPoly& p) { return p.norm(Rational(0)); }

// p(q(t))
template <class T>
UniPoly<T> compose(const UniPoly<T>& p, const UniPoly<T>& q) {
    UniPoly<T> acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * q + UniPoly<T>::constant(p[static_cast<size_t>(i)]);
    return acc;
}

template <class T>
UniPoly<T> pow(const UniPoly<T>& p, int e) {
    if (p.zero()) return e == 0 ? UniPoly<T>() : p;
    UniPoly<T> r = UniPoly<T>::constant(like(p[0], 1)), b = p;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

// exact division by (t − a) when a is a root; returns quotient, remainder
template <class T>
std::pair<UniPoly<T>, T> divide_linear(const UniPoly<T>& p, const T& a) {
    if (p.zero()) return {UniPoly<T>(), like(a, 0)};
    std::vector<T> q(static_cast<size_t>(std::max(p.degree(), 0)), like(a, 0));
    T carry = p.leading();
    for (int i = p.degree() - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = p[static_cast<size_t>(i)] + carry * a;
    }
    return {UniPoly<T>(std::move(q)), carry};
}

// Newton divided differences, expanded to monomials.
template <class T>
UniPoly<T> lagrange_interpolate(const std::vector<T>& nodes, const std::vector<T>& values) {
    if (nodes.size() != values.size()) throw InvalidArgument("nodes and values differ in length");
    const size_t m = nodes.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (nodes[i] == nodes[j]) throw RepeatedNode("repeated interpolation node");
    if (m == 0) return {};
    std::vector<T> dd = values;
    for (size_t k = 1; k < m; ++k)
        for (size_t i = m - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);
    UniPoly<T> acc = UniPoly<T>::constant(dd[m - 1]);
    for (size_t i = m - 1; i-- > 0;) {
        acc = acc * UniPoly<T>::linear(like(nodes[0], 1), -nodes[i]);
        acc = acc + UniPoly<T>::constant(dd[i]);
    }
    return acc;
}

// t(t−1)…(t−n+1)/n!
RatPoly falling_factorial_over_factorial(int n);
// C(t, s) as a polynomial in t
RatPoly binomial_poly(int s);

FloatPoly to_float(const RatPoly& p, long prec);

std::string to_string(const RatPoly& p);

}  // namespace polyapx
