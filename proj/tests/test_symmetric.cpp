#include "test_util.hpp"

#include <cmath>

#include "polyapx/oracle.hpp"
#include "polyapx/symmetric.hpp"

using namespace polyapx;
using testutil::q;

namespace {

// exhaustive error of a = max_t |p(t) − f(t)|, recomputed here at doubled precision
Rational sweep(const SymApprox& a) {
    Rational worst = 0;
    for (int t = 0; t <= a.spec.n; ++t) {
        Rational e;
        if (a.poly.exact()) e = abs(Rational(a.poly.eval(Rational(t)) - a.spec.values[t]));
        else e = abs(a.poly.eval(BigFloat(Rational(t), 512)) - BigFloat(a.spec.values[t], 512)).to_rational();
        worst = std::max(worst, e);
    }
    return worst;
}

BigFloat at(const SymApprox& a, int t) { return a.poly.eval(BigFloat(Rational(t), 256)); }

}  // namespace

TEST_SUITE("symmetric") {

TEST_CASE("spec scanning") {
    const auto a = SymSpec::and_spec(5);
    CHECK(a.values == std::vector<Rational>{0, 0, 0, 0, 0, 1});
    CHECK(a.ell == 0);
    CHECK(SymSpec::or_spec(5).ell == 0);
    CHECK(SymSpec::exact_spec(10, 3).ell == 3);
    CHECK(SymSpec::exact_spec(10, 3).supp_k == 3);
    CHECK(SymSpec::exact_spec(10, 8).ell == 2);
    CHECK(SymSpec::constant(6, q(1, 3)).ell == 0);
    CHECK(SymSpec::from_values({1, 0, 0, 0, 0}).supp_k == 0);
    CHECK(SymSpec::from_values({0, 0, 0, 0}).supp_k == 0);
    CHECK_THROWS_AS(SymSpec::from_values({0, 2}), InvalidArgument);
}

TEST_CASE("AND and OR small exact cases") {
    const auto a1 = and_or_approx(1, 1, Which::AND);
    CHECK(a1.poly.expand_exact() == RatPoly({0, 1}));
    CHECK(a1.certified_eps == 0);
    const auto a3 = and_or_approx(3, 3, Which::AND);
    CHECK(a3.poly.expand_exact() == RatPoly({0, q(1, 3), q(-1, 2), q(1, 6)}));
    CHECK(a3.certified_eps == 0);
}

TEST_CASE("certified error equals the exhaustive sweep") {
    for (int n : {8, 20, 32})
        for (int d : {1, 3, 6, 11}) {
            const auto a = and_or_approx(n, d, Which::AND);
            CHECK(a.degree() <= d);
            CHECK(abs(Rational(sweep(a) - a.certified_eps)) <= Rational(1) / Rational(pow2(200)));
            if (d >= n) {
                CHECK(at(a, n) == BigFloat(1, 256));
                continue;
            }
            // the raw product is 1 at n; balancing by 1/(1 + M) puts equal error on both sides
            const PolyExpr raw = and_cheb_raw(n, d, 256);
            CHECK(abs(raw.eval(BigFloat(n, 256)) - 1) <= ldexp(BigFloat(1, 256), -100));
            BigFloat M(0, 256);
            for (int t = 0; t < n; ++t) M = max(M, abs(raw.eval(BigFloat(t, 256))));
            CHECK(abs(at(a, n) - 1 / (1 + M)) <= ldexp(BigFloat(1, 256), -100));
            CHECK(abs((1 - at(a, n)) - BigFloat(a.certified_eps, 256)) <= ldexp(BigFloat(1, 256), -100));
        }
}

TEST_CASE("negation duality") {
    for (int n : {5, 16})
        for (int d : {2, 4, 7}) {
            const auto A = and_or_approx(n, d, Which::AND), O = and_or_approx(n, d, Which::OR);
            CHECK(O.certified_eps == A.certified_eps);
            for (int t = 0; t <= n; ++t) CHECK(abs(at(O, t) - (1 - at(A, n - t))) <= ldexp(BigFloat(1, 256), -200));
        }
}

TEST_CASE("error decays with degree for n=32") {
    Rational prev = 2;
    int strict_drops = 0;
    for (int d = 0; d <= 32; ++d) {
        const auto a = and_or_approx(32, d, Which::AND);
        CHECK(a.certified_eps <= prev);
        strict_drops += a.certified_eps < prev;
        prev = a.certified_eps;
        if (prev == 0) break;
    }
    CHECK(prev == 0);
    CHECK(strict_drops >= 10);
}

TEST_CASE("AND at 1/3: oracle sandwich and Paturi shape") {
    for (int n : {4, 8, 16, 32, 64}) {
        const auto a = and_or_for_eps(n, q(1, 3), Which::AND);
        CHECK(a.certified_eps <= q(1, 3));
        CHECK(sweep(a) <= q(1, 3));
        const int oracle = deg_eps(SymSpec::and_spec(n).values, q(1, 3));
        CHECK(a.degree() >= oracle);
        CHECK(a.degree() <= 10 * std::max(oracle, 1));
        CHECK(a.degree() <= kPaturiConstant * std::sqrt(double(n)));
    }
    const auto a32 = and_or_for_eps(32, q(3333, 10000), Which::AND);
    CHECK(a32.certified_eps <= q(1, 3));
}

TEST_CASE("EXACT construction") {
    {
        const auto a = exact_weight_approx(24, 0, 0, q(1, 8));
        CHECK(abs(at(a, 24) - 1) <= ldexp(BigFloat(1, 256), -100));
        CHECK(a.certified_eps <= q(1, 8));
        CHECK(sweep(a) <= q(1, 8));
    }
    {
        const auto a = exact_weight_approx(24, 2, 2, q(1, 8));
        CHECK(abs(at(a, 22) - 1) <= ldexp(BigFloat(1, 256), -100));
        for (int t : {0, 1, 2, 23, 24}) CHECK(abs(at(a, t)) <= ldexp(BigFloat(1, 256), -100));
        for (int t : {0, 1, 2, 22, 23, 24}) CHECK(a.exact_on.count(t) == 1);
        CHECK(sweep(a) <= q(1, 8));
    }
    // ℓ ≥ n/2: the degree-n product interpolant
    const auto b = exact_weight_approx(6, 2, 3, q(1, 8));
    CHECK(b.certified_eps == 0);
    CHECK(b.poly.exact());
    RatPoly prod({1});
    for (int i = 0; i <= 6; ++i)
        if (i != 4) prod = prod * RatPoly({q(-i, 4 - i), q(1, 4 - i)});
    CHECK(b.poly.expand_exact() == prod);
    CHECK_THROWS_AS(exact_weight_approx(10, 3, 2, q(1, 8)), InvalidArgument);
    CHECK_THROWS_AS(exact_weight_approx(10, 1, 11, q(1, 8)), InvalidArgument);
}

TEST_CASE("general symmetric construction") {
    const auto c = symmetric_approx(SymSpec::constant(12, q(-2, 5)), q(1, 8));
    CHECK(c.degree() == 0);
    CHECK(c.certified_eps == 0);

    std::vector<Rational> maj;
    for (int t = 0; t <= 8; ++t) maj.push_back(t >= 4 ? 1 : 0);
    const auto m = symmetric_approx(SymSpec::from_values(maj), q(1, 8));
    CHECK(m.degree() <= 8);
    CHECK(m.certified_eps == 0);

    const auto e = symmetric_approx(SymSpec::exact_spec(16, 16), q(1, 4));
    const auto a = and_or_for_eps(16, q(1, 4), Which::AND);
    CHECK(e.certified_eps <= q(1, 4));
    CHECK(a.certified_eps <= q(1, 4));
    for (int t = 0; t <= 16; ++t)
        CHECK(abs(at(e, t) - at(a, t)).to_rational() <= e.certified_eps + a.certified_eps);

    Rng rng(17);
    for (int it = 0; it < 6; ++it) {
        const int n = 24, ell = static_cast<int>(rng.range(0, 4));
        std::vector<Rational> v(n + 1, q(rng.range(-4, 4), 4));
        for (int t = 0; t <= ell; ++t) v[t] = q(rng.range(-4, 4), 4);
        for (int t = n - ell; t <= n; ++t) v[t] = q(rng.range(-4, 4), 4);
        const auto s = symmetric_approx(SymSpec::from_values(v), q(1, 8));
        CHECK(sweep(s) <= q(1, 8));
        for (int t = 0; t <= ell; ++t) CHECK(s.exact_on.count(t) == 1);
        for (int t = n - ell; t <= n; ++t) CHECK(s.exact_on.count(t) == 1);
    }
}

TEST_CASE("sampling construction") {
    {
        // k = 0: f ≡ 0 or supported only at weight 0
        const auto r = sampling_approx(SymSpec::from_values({q(1, 2), 0, 0, 0, 0, 0, 0, 0, 0}), q(1, 8));
        CHECK(r.approx.certified_eps == 0);
    }
    std::vector<Rational> v(33, 0);
    v[0] = 1;
    v[1] = -1;
    const auto r = sampling_approx(SymSpec::from_values(v), q(1, 8));
    CHECK(r.approx.poly.exact());
    for (int t : {0, 1, 31, 32}) CHECK(r.approx.poly.eval(Rational(t)) == v[t]);
    for (int t = 2; t <= 30; ++t) CHECK(abs(Rational(r.approx.poly.eval(Rational(t)) - v[t])) <= q(1, 8));
    // p·q is ε-close to f at the sampled nodes t_i for i ≥ 2k
    for (int i = 2; i <= 32; ++i) CHECK(abs(Rational(r.pq.eval(r.nodes[i]) - v[i])) <= q(1, 8));
    CHECK(r.nodes[5] == 1 - pow(1 - q(5, 32), 16));
    CHECK(r.inner_d == 5 * static_cast<int>(std::ceil(8 + std::log(8.0))));

    // the coefficient norm stays within 2^(a(k + log 1/ε))
    std::vector<Rational> w(33, 0);
    w[1] = 1;
    w[2] = q(1, 2);
    for (long e : {2, 3, 4}) {
        const Rational eps = Rational(1) / Rational(pow2(e));
        const auto s = sampling_approx(SymSpec::from_values(w), eps);
        CHECK(s.pq_norm > 0);
        CHECK(std::log2(s.pq_norm.get_d()) <= kSamplingNormExponent * (2 + e));
        for (int t = 0; t <= 32; ++t) CHECK(abs(Rational(s.approx.poly.eval(Rational(t)) - w[t])) <= eps);
    }
    // k ≥ n/4 falls back to f itself
    std::vector<Rational> big(9, 0);
    big[2] = 1;
    const auto fb = sampling_approx(SymSpec::from_values(big), q(1, 8));
    CHECK(fb.fallback);
    CHECK(fb.approx.certified_eps == 0);
}

TEST_CASE("restricted disjunction") {
    {
        const auto a = restricted_disjunction_approx(8, 2, {1}, {2, 3, 4}, 3);
        CHECK(a.degree() == 0);
        CHECK(a.certified_eps == 0);
    }
    {
        const auto a = restricted_disjunction_approx(1, 1, {1}, {}, 1);
        CHECK(a.certified_eps == 0);
        CHECK(a.poly.expand_exact() == RatPoly({0, 1}));
    }
    const auto a = restricted_disjunction_approx(12, 6, {1, 2, 3, 4}, {5, 6}, 8);
    Rational worst = 0;
    for (uint32_t x = 0; x < (1U << 12); ++x) {
        if (__builtin_popcount(x) > 6) continue;
        std::vector<int> bits(12);
        for (int i = 0; i < 12; ++i) bits[i] = (x >> i) & 1;
        const bool OR = bits[0] || bits[1] || bits[2] || bits[3] || !bits[4] || !bits[5];
        CHECK(a.target(bits) == OR);
        const BigFloat v = a.poly.eval(BigFloat(Rational(a.count(bits)), 256));
        worst = std::max(worst, abs(v - BigFloat(OR ? 1 : 0, 256)).to_rational());
    }
    CHECK(worst <= a.certified_eps);
    CHECK(a.certified_eps < q(1, 2));
    CHECK(a.certified_eps <= q(1, 2) * std::exp(-kDisjunctionDecayConstant * 64 / 6) + q(1, 1000000000));

    const auto c = restricted_conjunction_approx(12, 6, {1, 2}, {3}, 8);
    for (uint32_t x = 0; x < (1U << 12); ++x) {
        if (__builtin_popcount(x) > 6) continue;
        std::vector<int> bits(12);
        for (int i = 0; i < 12; ++i) bits[i] = (x >> i) & 1;
        const bool AND = bits[0] && bits[1] && !bits[2];
        CHECK(c.target(bits) == AND);
        const BigFloat v = c.poly.eval(BigFloat(Rational(c.count(bits)), 256));
        CHECK(abs(v - BigFloat(AND ? 1 : 0, 256)).to_rational() <= c.certified_eps);
    }
}

}
