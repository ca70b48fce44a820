#include "polyapx/poly.hpp"

namespace polyapx {

RatPoly falling_factorial_over_factorial(int n) {
    RatPoly p = RatPoly::constant(Rational(1));
    for (int i = 0; i < n; ++i) p = p * RatPoly::linear(Rational(1), Rational(-i));
    return Rational(1, 1) / Rational(factorial(n)) * p;
}

RatPoly binomial_poly(int s) {
    RatPoly p = RatPoly::constant(Rational(1));
    for (int i = 0; i < s; ++i) p = p * RatPoly::linear(Rational(1), Rational(-i));
    return Rational(Integer(1), factorial(s)) * p;
}

FloatPoly to_float(const RatPoly& p, long prec) {
    std::vector<BigFloat> c;
    for (const auto& a : p.coeffs()) c.emplace_back(a, prec);
    return FloatPoly(std::move(c));
}

std::string to_string(const RatPoly& p) {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& a = p[static_cast<size_t>(i)];
        if (a == 0) continue;
        if (!s.empty()) s += a < 0 ? " - " : " + ";
        else if (a < 0) s += "-";
        Rational m = abs(a);
        if (i == 0 || m != 1) s += to_string(m);
        if (i >= 1) s += (i == 0 || m != 1) ? "*t" : "t";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace polyapx
