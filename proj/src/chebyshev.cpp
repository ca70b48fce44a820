#include "polyapx/chebyshev.hpp"

namespace polyapx {

RatPoly cheb_coeffs(int d) {
    if (d < 0) throw InvalidArgument("negative Chebyshev degree");
    RatPoly a = RatPoly::constant(Rational(1));
    if (d == 0) return a;
    RatPoly b = RatPoly::linear(Rational(1), Rational(0));
    const RatPoly two_t = RatPoly::linear(Rational(2), Rational(0));
    for (int k = 1; k < d; ++k) {
        RatPoly c = two_t * b - a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

std::vector<ChebNode> cheb_nodes(int d, ChebNodeKind kind, long prec) {
    if (d < 1) throw InvalidArgument("Chebyshev nodes need d >= 1");
    std::vector<ChebNode> out;
    const long w = prec + 32;
    const BigFloat pi = BigFloat::pi(w);
    if (kind == ChebNodeKind::Root) {
        for (int i = 1; i <= d; ++i)
            out.push_back({d, i, kind, BigFloat(cos(pi * (2 * i - 1) / (2L * d)), prec)});
    } else {
        for (int i = 0; i <= d; ++i) out.push_back({d, i, kind, BigFloat(cos(pi * i / d), prec)});
    }
    return out;
}

BigFloat cheb_closed_form(int d, const BigFloat& t) {
    if (abs(t) < 1) throw InvalidArgument("closed form needs |t| >= 1");
    const long w = t.prec() + 64;
    BigFloat tw(t, w);
    BigFloat s = sqrt(tw * tw - 1);
    BigFloat v = (pow(tw + s, d) + pow(tw - s, d)) / 2;
    return BigFloat(v, t.prec());
}

BigFloat cheb_factored(int d, const BigFloat& t) {
    if (d == 0) return BigFloat(1, t.prec());
    const long w = t.prec() + 32;
    BigFloat acc = ldexp(BigFloat(1, w), d - 1);
    BigFloat tw(t, w);
    for (const auto& nd : cheb_nodes(d, ChebNodeKind::Root, w)) acc *= tw - nd.location;
    return BigFloat(acc, t.prec());
}

}  // namespace polyapx
