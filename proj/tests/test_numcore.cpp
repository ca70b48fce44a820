#include "test_util.hpp"

#include "polyapx/json_io.hpp"
#include "polyapx/parallel.hpp"
#include "polyapx/scalar.hpp"

using namespace polyapx;
using testutil::q;

TEST_SUITE("numcore") {

TEST_CASE("rationals stay canonical") {
    const Rational a = parse_rational("6/4");
    CHECK(a.get_num() == 3);
    CHECK(a.get_den() == 2);
    CHECK(parse_rational("-0.125") == q(-1, 8));
    CHECK(parse_rational("0.3333") == q(3333, 10000));
    CHECK(to_string(q(-10, 4)) == "-5/2");
    CHECK(to_string(q(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
    CHECK(ceil_log2(q(8)) == 3);
    CHECK(ceil_log2(q(9)) == 4);
    CHECK(ceil_log2(q(1, 3)) == -1);
}

TEST_CASE("poly_eval examples") {
    CHECK(RatPoly().eval(q(7)) == 0);
    CHECK(RatPoly({0, 0, 1}).eval(q(3, 2)) == q(9, 4));
    const RatPoly ff({0, q(-1, 2), q(1, 2)});  // t(t−1)/2
    CHECK(ff.eval(q(2)) == 1);
    CHECK(RatPoly().degree() == -1);
    CHECK(RatPoly({1, 2, 0, 0}).degree() == 1);
}

TEST_CASE("backend mismatch is a typed error") {
    const AnyPoly p = RatPoly({1, 1});
    CHECK_THROWS_AS(poly_eval(p, Scalar(BigFloat(1, 128))), BackendMismatch);
    const AnyPoly f = FloatPoly({BigFloat(1, 128)});
    CHECK_THROWS_AS(poly_eval(f, Scalar(q(1))), BackendMismatch);
    CHECK(std::get<Rational>(poly_eval(p, Scalar(q(2)))) == 3);
}

TEST_CASE("poly_norm examples") {
    CHECK(poly_norm(RatPoly({0, 1})) == 1);
    CHECK(poly_norm(RatPoly({-3, 2})) == 5);
    CHECK(poly_norm(RatPoly({1, -2, 1})) == 4);
    CHECK(std::get<Rational>(polyapx::poly_norm(AnyPoly(RatPoly({-3, 2})))) == 5);
}

TEST_CASE("norm is submultiplicative and subadditive") {
    Rng rng(11);
    int bad = 0;
    for (int it = 0; it < 1000; ++it) {
        const RatPoly a(testutil::random_coeffs(rng, static_cast<int>(rng.range(0, 10))));
        const RatPoly b(testutil::random_coeffs(rng, static_cast<int>(rng.range(0, 10))));
        bad += poly_norm(a * b) > poly_norm(a) * poly_norm(b);
        bad += poly_norm(a + b) > poly_norm(a) + poly_norm(b);
        bad += poly_norm(q(-5, 3) * a) != q(5, 3) * poly_norm(a);
    }
    CHECK(bad == 0);
}

TEST_CASE("lagrange examples") {
    auto interp = [](std::vector<Rational> xs, std::vector<Rational> ys) {
        std::vector<Scalar> X(xs.begin(), xs.end()), Y(ys.begin(), ys.end());
        return std::get<RatPoly>(lagrange_interpolate(X, Y));
    };
    CHECK(interp({0, 1}, {0, 1}) == RatPoly({0, 1}));
    CHECK(interp({0, 1, 2}, {0, 1, 1}) == RatPoly({0, q(3, 2), q(-1, 2)}));
    // AND_n: p(n) = 1, p(i) = 0 below; the falling factorial t(t−1)…(t−n+1)/n!
    for (int n = 1; n <= 8; ++n) {
        std::vector<Rational> xs, ys;
        for (int i = 0; i <= n; ++i) {
            xs.push_back(i);
            ys.push_back(i == n ? 1 : 0);
        }
        const RatPoly p = interp(xs, ys);
        CHECK(p.degree() == n);
        RatPoly ff({1});
        for (int i = 0; i < n; ++i) ff = ff * RatPoly({q(-i, n - i), q(1, n - i)});
        CHECK(p == ff);
    }
    CHECK_THROWS_AS(interp({0, 1, 0}, {1, 2, 3}), RepeatedNode);
    CHECK_THROWS_AS(interp({0, 1}, {1}), InvalidArgument);
}

TEST_CASE("interpolation round trip on random rational data") {
    Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        const int m = static_cast<int>(rng.range(1, 12));
        std::vector<Scalar> X, Y;
        std::set<Rational> seen;
        while (static_cast<int>(X.size()) < m) {
            const Rational x = q(rng.range(-40, 40), rng.range(1, 7));
            if (!seen.insert(x).second) continue;
            X.push_back(x);
            Y.push_back(q(rng.range(-30, 30), rng.range(1, 5)));
        }
        const RatPoly p = std::get<RatPoly>(lagrange_interpolate(X, Y));
        CHECK(p.degree() <= m - 1);
        for (int i = 0; i < m; ++i)
            CHECK(testutil::eval_naive(p.coeffs(), std::get<Rational>(X[i])) == std::get<Rational>(Y[i]));
    }
}

TEST_CASE("float interpolation agrees with rational") {
    Rng rng(5);
    std::vector<Scalar> Xq, Yq, Xf, Yf;
    for (int i = 0; i < 8; ++i) {
        const Rational y = q(rng.range(-9, 9), rng.range(1, 4));
        Xq.push_back(Rational(i));
        Yq.push_back(y);
        Xf.push_back(BigFloat(Rational(i), 256));
        Yf.push_back(BigFloat(y, 256));
    }
    const RatPoly pq = std::get<RatPoly>(lagrange_interpolate(Xq, Yq));
    const FloatPoly pf = std::get<FloatPoly>(lagrange_interpolate(Xf, Yf));
    for (int k = 0; k < 20; ++k) {
        const Rational t = q(k - 5, 3);
        const BigFloat a = pf.eval(BigFloat(t, 256));
        const BigFloat b(pq.eval(t), 256);
        CHECK(abs(a - b) <= ldexp(BigFloat(1, 256), -128) * max(abs(b), BigFloat(1, 256)));
    }
}

TEST_CASE("float and rational backends agree at 256 bits") {
    Rng rng(3);
    for (int it = 0; it < 200; ++it) {
        const auto c = testutil::random_coeffs(rng, static_cast<int>(rng.range(0, 12)));
        const Rational t = q(rng.range(-20, 20), rng.range(1, 8));
        std::vector<BigFloat> cf;
        for (const auto& x : c) cf.push_back(BigFloat(x, 256));
        const BigFloat exact(testutil::eval_naive(c, t), 256);
        const BigFloat got = FloatPoly(cf).eval(BigFloat(t, 256));
        const BigFloat scale = max(abs(exact), BigFloat(1, 256));
        CHECK(abs(got - exact) <= ldexp(scale, -128));
    }
}

TEST_CASE("bigfloat hex strings are lossless") {
    const BigFloat third(q(1, 3), 256);
    const BigFloat back = BigFloat::parse(third.to_hex(), 256);
    CHECK(back == third);
    CHECK(BigFloat::parse("0x1.8p+1", 64).to_rational() == 3);
    CHECK(BigFloat(0, 128).to_hex() == BigFloat::parse(BigFloat(0, 128).to_hex(), 128).to_hex());
    CHECK(agrees_at_half_precision(BigFloat(q(1, 3), 256), BigFloat(BigFloat(q(1, 3), 512), 256)));
    CHECK_FALSE(agrees_at_half_precision(BigFloat(q(1, 3), 256), BigFloat(q(1, 3) + q(1, 1000000), 256)));
}

TEST_CASE("polynomial JSON") {
    const RatPoly p({q(1, 2), 0, -3});
    const Json j = poly_json(p);
    CHECK(j.at("backend") == "rational");
    CHECK(j.at("precision_bits") == 0);
    CHECK(j.at("coeffs") == Json::array({"1/2", "0", "-3"}));
    CHECK(json_poly(j).expand_exact() == p);

    const FloatPoly f({BigFloat(q(1, 3), 128), BigFloat(2, 128)});
    const Json jf = poly_json(f);
    CHECK(jf.at("backend") == "float");
    CHECK(jf.at("precision_bits") == 128);
    const PolyExpr back = json_poly(jf);
    CHECK(back.expand_float(128).coeffs()[0] == f.coeffs()[0]);

    // trees survive serialization exactly
    const PolyExpr e = PolyExpr::compose(PolyExpr::cheb(5), affine(q(1, 7), q(-1, 2))) * PolyExpr::binom_tail(6, 2);
    const Json je = poly_json(e);
    CHECK(json_poly(je).expand_exact() == e.expand_exact());
    CHECK(poly_json(json_poly(je)).dump() == je.dump());
    CHECK_THROWS_AS(json_poly(Json{{"backend", "float"}, {"precision_bits", 32}, {"coeffs", Json::array({"0x1p+0"})}}),
                    InvalidArgument);
}

TEST_CASE("expression trees match dense arithmetic") {
    const RatPoly a({1, -2, q(1, 3)}), b({0, 5, 0, 1});
    const PolyExpr ea = PolyExpr::mono(a), eb = PolyExpr::mono(b);
    CHECK((ea * eb).expand_exact() == a * b);
    CHECK((ea + eb).expand_exact() == a + b);
    CHECK((ea - eb).expand_exact() == a - b);
    CHECK(PolyExpr::power(ea, 3).expand_exact() == a * a * a);
    RatPoly comp;
    for (int i = b.degree(); i >= 0; --i) comp = comp * a + RatPoly({b[static_cast<size_t>(i)]});
    CHECK(PolyExpr::compose(eb, ea).expand_exact() == comp);
    CHECK(PolyExpr::compose(eb, ea).degree() == 6);
    CHECK(PolyExpr::compose(eb, ea).eval(q(2, 5)) == comp.eval(q(2, 5)));
    // binomial tail Σ_{i≥k} C(d,i) t^i (1−t)^(d−i) at t = 1/3
    const Rational t = q(1, 3);
    Rational tail = 0;
    for (int i = 2; i <= 6; ++i) tail += testutil::binom(6, i) * pow(t, i) * pow(1 - t, 6 - i);
    CHECK(PolyExpr::binom_tail(6, 2).eval(t) == tail);
}

TEST_CASE("splitmix stream is the documented one") {
    Rng r(0);
    CHECK(r.next() == 0xE220A8397B1DCDAFULL);
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(9);
    for (int i = 0; i < 1000; ++i) {
        const long v = c.range(-3, 4);
        CHECK(v >= -3);
        CHECK(v <= 4);
    }
}

TEST_CASE("parallel_for fills every slot") {
    std::vector<int> v(1000, 0);
    parallel_for(v.size(), [&](size_t i) { v[i] = static_cast<int>(i) * 2; });
    for (size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i) * 2);
    const auto m = parallel_max(50, [](size_t i) { return BigFloat(i == 7 || i == 30 ? 9 : 1, 64); });
    CHECK(m.index == 7);
}

}
