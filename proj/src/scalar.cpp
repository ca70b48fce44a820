#include "polyapx/scalar.hpp"

namespace polyapx {

Backend backend_of(const Scalar& s) {
    if (std::holds_alternative<Rational>(s)) return Backend::rational();
    return Backend::floating(std::get<BigFloat>(s).prec());
}

std::string scalar_to_string(const Scalar& s) {
    if (auto q = std::get_if<Rational>(&s)) return to_string(*q);
    return std::get<BigFloat>(s).to_hex();
}

double scalar_to_double(const Scalar& s) {
    if (auto q = std::get_if<Rational>(&s)) return q->get_d();
    return std::get<BigFloat>(s).to_double();
}

Scalar poly_eval(const AnyPoly& p, const Scalar& t) {
    if (auto rp = std::get_if<RatPoly>(&p)) {
        auto q = std::get_if<Rational>(&t);
        if (!q) throw BackendMismatch("rational polynomial evaluated at a float");
        return rp->eval(*q);
    }
    auto x = std::get_if<BigFloat>(&t);
    if (!x) throw BackendMismatch("float polynomial evaluated at a rational");
    return std::get<FloatPoly>(p).eval(*x);
}

Scalar poly_norm(const AnyPoly& p, long prec) {
    if (auto rp = std::get_if<RatPoly>(&p)) return rp->norm(Rational(0));
    const auto& fp = std::get<FloatPoly>(p);
    return fp.norm(BigFloat(0, fp.zero() ? prec : fp[0].prec()));
}

AnyPoly lagrange_interpolate(const std::vector<Scalar>& nodes, const std::vector<Scalar>& values) {
    if (nodes.size() != values.size()) throw InvalidArgument("nodes and values differ in length");
    bool all_rational = true;
    long prec = 0;
    for (const auto* v : {&nodes, &values})
        for (const auto& s : *v) {
            if (std::holds_alternative<BigFloat>(s)) {
                all_rational = false;
                long p = std::get<BigFloat>(s).prec();
                if (prec != 0 && p != prec) throw BackendMismatch("mixed float precisions");
                prec = p;
            }
        }
    if (all_rational) {
        std::vector<Rational> n, v;
        for (const auto& s : nodes) n.push_back(std::get<Rational>(s));
        for (const auto& s : values) v.push_back(std::get<Rational>(s));
        return lagrange_interpolate(n, v);
    }
    for (const auto* v : {&nodes, &values})
        for (const auto& s : *v)
            if (std::holds_alternative<Rational>(s)) throw BackendMismatch("mixed rational and float inputs");
    std::vector<BigFloat> n, v;
    for (const auto& s : nodes) n.push_back(std::get<BigFloat>(s));
    for (const auto& s : values) v.push_back(std::get<BigFloat>(s));
    return lagrange_interpolate(n, v);
}

}  // namespace polyapx
