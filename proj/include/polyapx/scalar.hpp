#pragma once

#include <string>
#include <variant>

#include "polyapx/poly.hpp"

namespace polyapx {

// Runtime-tagged scalar: exact rational or big-float at its own precision.
using Scalar = std::variant<Rational, BigFloat>;
using AnyPoly = std::variant<RatPoly, FloatPoly>;

struct Backend {
    enum class Kind { Rational, Float } kind = Kind::Rational;
    long precision_bits = 0;

    static Backend rational() { return {Kind::Rational, 0}; }
    static Backend floating(long prec) { return {Kind::Float, prec}; }
    bool is_float() const { return kind == Kind::Float; }
    std::string name() const { return is_float() ? "float" : "rational"; }
    friend bool operator==(const Backend&, const Backend&) = default;
};

Backend backend_of(const Scalar& s);
std::string scalar_to_string(const Scalar& s);  // "num/den" or hex float
double scalar_to_double(const Scalar& s);

// dynamic dispatch; throws BackendMismatch when polynomial and argument backends differ
Scalar poly_eval(const AnyPoly& p, const Scalar& t);
Scalar poly_norm(const AnyPoly& p, long prec = kDefaultPrecision);
AnyPoly lagrange_interpolate(const std::vector<Scalar>& nodes, const std::vector<Scalar>& values);

}  // namespace polyapx
