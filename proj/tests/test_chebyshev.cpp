#include "test_util.hpp"

#include <cmath>

#include "polyapx/chebyshev.hpp"

using namespace polyapx;
using testutil::q;

TEST_SUITE("chebyshev") {

TEST_CASE("evaluation examples") {
    CHECK(cheb_eval(0, q(5, 7)) == 1);
    CHECK(cheb_eval(2, q(3)) == 17);
    for (int d = 0; d <= 60; ++d) CHECK(cheb_eval(d, q(1)) == 1);
    CHECK(cheb_eval(3, q(1, 2)) == -1);  // cos(π) with t = cos(π/3)
    CHECK_THROWS_AS(cheb_eval(-1, q(0)), InvalidArgument);
}

TEST_CASE("coefficient expansion") {
    CHECK(cheb_coeffs(0) == RatPoly({1}));
    CHECK(cheb_coeffs(1) == RatPoly({0, 1}));
    CHECK(cheb_coeffs(3) == RatPoly({0, -3, 0, 4}));
    CHECK(cheb_coeffs(5).leading() == 16);
    for (int d = 1; d <= 30; ++d) {
        const RatPoly c = cheb_coeffs(d);
        CHECK(c.degree() == d);
        CHECK(c.leading() == Rational(pow2(d - 1)));
        for (const auto& a : c.coeffs()) CHECK(is_integer(a));
        CHECK(c.eval(q(2, 3)) == cheb_eval(d, q(2, 3)));
    }
}

TEST_CASE("trigonometric identity at 256 bits") {
    const long P = 256;
    const BigFloat tol = ldexp(BigFloat(1, P), -120);
    const BigFloat pi = BigFloat::pi(P);
    for (int d = 0; d <= 64; ++d)
        for (int j = 0; j < 100; ++j) {
            const BigFloat th = pi * BigFloat(q(j, 99), P);
            CHECK(abs(cheb_eval(d, cos(th)) - cos(th * BigFloat(d, P))) <= tol);
        }
}

TEST_CASE("containment on [-1,1]") {
    const BigFloat lim = BigFloat(1, 256) + ldexp(BigFloat(1, 256), -120);
    for (int d : {1, 2, 7, 16, 33, 64})
        for (int j = 0; j <= 1000; ++j) CHECK(abs(cheb_eval(d, BigFloat(q(2 * j - 1000, 1000), 256))) <= lim);
}

TEST_CASE("growth above 1") {
    int bad = 0;
    for (int d = 1; d <= 50; ++d)
        for (int j = 1; j <= 50; ++j) {
            const Rational delta = q(j, 50);
            const Rational v = cheb_eval(d, Rational(1 + delta));
            bad += v < 1 + Rational(d * d) * delta;
            // 2^(d√δ − 1), in doubles with 1e-9 slack for rounding
            bad += std::log2(v.get_d()) < d * std::sqrt(delta.get_d()) - 1 - 1e-9;
        }
    CHECK(bad == 0);
}

TEST_CASE("derivative at least d^2 on [1,2]") {
    // T_d is convex on [1,∞): the forward secant is at least T_d'(t)
    for (int d = 1; d <= 30; ++d)
        for (int j = 0; j <= 20; ++j) {
            const Rational t = 1 + q(j, 20), h = q(1, 1000000);
            const Rational slope = (cheb_eval(d, Rational(t + h)) - cheb_eval(d, t)) / h;
            CHECK(slope >= Rational(d * d));
        }
}

TEST_CASE("roots and extrema") {
    for (int d : {1, 2, 5, 12, 31}) {
        const auto roots = cheb_nodes(d, ChebNodeKind::Root);
        CHECK(roots.size() == static_cast<size_t>(d));
        for (const auto& r : roots) CHECK(abs(cheb_eval(d, r.location)) <= ldexp(BigFloat(1, 256), -100));
        const auto ext = cheb_nodes(d, ChebNodeKind::Extremum);
        CHECK(ext.size() == static_cast<size_t>(d + 1));
        for (const auto& e : ext) {
            const BigFloat v = abs(cheb_eval(d, e.location));
            CHECK(abs(v - BigFloat(1, 256)) <= ldexp(BigFloat(1, 256), -100));
        }
        // roots are cos((2i−1)π/2d), independently recomputed in double
        for (const auto& r : roots)
            CHECK(std::abs(r.location.to_double() - std::cos((2.0 * r.i - 1) * M_PI / (2.0 * d))) < 1e-14);
    }
}

TEST_CASE("factored and closed forms") {
    for (int d = 1; d <= 32; ++d)
        for (int j = 0; j <= 40; ++j) {
            const BigFloat t(q(j - 20, 20), 256);
            const BigFloat a = cheb_factored(d, t), b = cheb_eval(d, t);
            CHECK(abs(a - b) <= ldexp(max(abs(b), BigFloat(1, 256)), -100));
        }
    for (int d = 0; d <= 40; ++d)
        for (int j = 0; j <= 10; ++j) {
            const BigFloat t(1 + q(j, 5), 256);
            const BigFloat a = cheb_closed_form(d, t), b = cheb_eval(d, t);
            CHECK(abs(a - b) <= ldexp(abs(b), -100));
        }
}

}
