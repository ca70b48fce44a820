#include "test_util.hpp"

#include "polyapx/oracle.hpp"
#include "polyapx/symmetric.hpp"

using namespace polyapx;
using testutil::q;

namespace {

// E(f,d) on a finite node set by de la Vallée Poussin: the optimum is the
// largest levelled error over (d+2)-point references
Rational brute_minimax(const std::vector<Rational>& f, int d) {
    const int m = static_cast<int>(f.size());
    if (d + 1 >= m) return 0;
    Rational best = 0;
    std::vector<int> idx(d + 2);
    for (int i = 0; i < d + 2; ++i) idx[i] = i;
    while (true) {
        // unknowns c_0..c_d, h:  Σ c_j x^j + (−1)^i h = f(x_i)
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        for (int i = 0; i < d + 2; ++i) {
            std::vector<Rational> row;
            Rational p = 1;
            for (int j = 0; j <= d; ++j, p *= idx[i]) row.push_back(p);
            row.push_back(i % 2 ? -1 : 1);
            A.push_back(row);
            b.push_back(f[idx[i]]);
        }
        best = std::max(best, abs(testutil::solve(A, b).back()));
        int k = d + 1;
        while (k >= 0 && idx[k] == m - (d + 2) + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < d + 2; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("minimax examples") {
    const auto r = minimax_lp(std::vector<Rational>{0, 1, 1}, 1);
    CHECK(r.eps_star == q(1, 4));
    CHECK(r.coeffs == RatPoly({q(1, 4), q(1, 2)}));
    CHECK(r.alternation() >= 3);
    CHECK(minimax_lp(std::vector<Rational>{0, 1}, 0).eps_star == q(1, 2));
    for (int n = 1; n <= 7; ++n) CHECK(minimax_lp(SymSpec::and_spec(n).values, n).eps_star == 0);
    CHECK(minimax_lp(SymSpec::and_spec(4).values, 9).eps_star == 0);
}

TEST_CASE("result is self-consistent") {
    Rng rng(41);
    for (int it = 0; it < 30; ++it) {
        const int n = static_cast<int>(rng.range(2, 8));
        std::vector<Rational> f;
        for (int t = 0; t <= n; ++t) f.push_back(q(rng.range(-6, 6), 6));
        const int d = static_cast<int>(rng.range(0, n - 1));
        const auto r = minimax_lp(f, d);
        CHECK(r.coeffs.degree() <= d);
        Rational worst = 0;
        for (int t = 0; t <= n; ++t) worst = std::max(worst, abs(Rational(r.coeffs.eval(Rational(t)) - f[t])));
        CHECK(worst == r.eps_star);
        for (size_t i = 0; i < r.active_points.size(); ++i) {
            const int t = r.active_points[i];
            const Rational e = r.coeffs.eval(Rational(t)) - f[t];
            CHECK(abs(e) == r.eps_star);
            CHECK(sign(e) == r.active_signs[i]);
        }
        if (r.eps_star > 0) CHECK(r.alternation() >= d + 2);
    }
}

TEST_CASE("LP agrees with reference enumeration") {
    Rng rng(43);
    for (int it = 0; it < 20; ++it) {
        const int n = static_cast<int>(rng.range(1, 6));
        const int d = static_cast<int>(rng.range(0, 3));
        std::vector<Rational> f;
        for (int t = 0; t <= n; ++t) f.push_back(q(rng.range(-8, 8), 8));
        CHECK(minimax_lp(f, d).eps_star == brute_minimax(f, d));
    }
}

TEST_CASE("non-integer nodes") {
    // |x| on {−1, 0, 1} by a constant: 1/2; by a line: still 1/2
    const std::vector<std::pair<Rational, Rational>> v{{-1, 1}, {0, 0}, {1, 1}};
    CHECK(minimax_lp(v, 0).eps_star == q(1, 2));
    CHECK(minimax_lp(v, 1).eps_star == q(1, 2));
    CHECK(minimax_lp(v, 2).eps_star == 0);
}

TEST_CASE("deg_eps") {
    CHECK(deg_eps(SymSpec::or_spec(2).values, q(1, 4)) == 1);
    CHECK(deg_eps(SymSpec::or_spec(2).values, q(1, 5)) == 2);
    CHECK(deg_eps(SymSpec::constant(5, q(1, 3)).values, q(1, 8)) == 0);
    for (int n = 2; n <= 12; ++n) {
        const int d = deg_eps(SymSpec::and_spec(n).values, q(1, 3));
        CHECK(minimax_lp(SymSpec::and_spec(n).values, d).eps_star <= q(1, 3));
        if (d > 0) CHECK(minimax_lp(SymSpec::and_spec(n).values, d - 1).eps_star > q(1, 3));
    }
}

TEST_CASE("oracle never beats a construction") {
    for (int n : {6, 12, 20})
        for (int d : {1, 2, 4}) {
            const auto a = and_or_approx(n, d, Which::AND);
            CHECK(minimax_lp(a.spec.values, a.degree()).eps_star <= a.certified_eps);
        }
}

TEST_CASE("multilinear interpolation") {
    const auto c = multilinear_interpolant(3, 3, [](uint32_t) { return q(2, 7); });
    CHECK(c.coef.size() == 1);
    CHECK(c.coef.at(0) == q(2, 7));
    const auto x1 = multilinear_interpolant(2, 2, [](uint32_t x) { return Rational(x & 1); });
    CHECK(x1.coef.size() == 1);
    CHECK(x1.coef.at(1) == 1);
    const auto o = multilinear_interpolant(3, 2, [](uint32_t x) { return Rational(x != 0); });
    CHECK(o.degree() <= 2);
    int admissible = 0;
    for (uint32_t x = 0; x < 8; ++x)
        if (__builtin_popcount(x) <= 2) {
            ++admissible;
            CHECK(o.eval(x) == Rational(x != 0));
        }
    CHECK(admissible == 7);
    // full domain: agrees with the Möbius transform computed here
    Rng rng(47);
    const int N = 5;
    std::vector<Rational> f(1 << N);
    for (auto& v : f) v = q(rng.range(-3, 3));
    const auto p = multilinear_interpolant(N, N, [&](uint32_t x) { return f[x]; });
    for (uint32_t S = 0; S < (1U << N); ++S) {
        Rational c = 0;
        for (uint32_t T = S;; T = (T - 1) & S) {
            c += (__builtin_popcount(S ^ T) % 2 ? -1 : 1) * f[T];
            if (T == 0) break;
        }
        const auto it = p.coef.find(S);
        CHECK((it == p.coef.end() ? Rational(0) : it->second) == c);
    }
    CHECK(p.norm() >= 0);
    std::vector<Rational> half(N, q(1, 2));
    Rational avg = 0;
    for (const auto& v : f) avg += v;
    CHECK(p.eval(half) == avg / (1 << N));
}

TEST_CASE("symmetrization") {
    MultilinearPoly x1x2{2, {{3U, Rational(1)}}};
    CHECK(symmetrize_univariate(x1x2) == RatPoly({0, q(-1, 2), q(1, 2)}));
    MultilinearPoly sum{2, {{1U, Rational(1)}, {2U, Rational(1)}}};
    CHECK(symmetrize_univariate(sum) == RatPoly({0, 1}));
    // spectrum of a symmetric f is reproduced exactly
    for (int n = 1; n <= 10; ++n) {
        Rng rng(50 + n);
        std::vector<Rational> spec;
        for (int t = 0; t <= n; ++t) spec.push_back(q(rng.range(-5, 5), 5));
        const auto phi = multilinear_interpolant(n, n, [&](uint32_t x) { return spec[__builtin_popcount(x)]; });
        const RatPoly p = symmetrize_univariate(phi);
        CHECK(p.degree() <= phi.degree());
        for (int t = 0; t <= n; ++t) CHECK(p.eval(Rational(t)) == spec[t]);
    }
    // two blocks: x1·x3 with blocks {1,2},{3,4} → (w1/2)(w2/2)
    MultilinearPoly x1x3{4, {{5U, Rational(1)}}};
    const BlockPoly b = symmetrize(x1x3, {2, 2});
    for (int w1 = 0; w1 <= 2; ++w1)
        for (int w2 = 0; w2 <= 2; ++w2) CHECK(b.eval({Rational(w1), Rational(w2)}) == q(w1 * w2, 4));
    CHECK(b.degree() == 2);
}

TEST_CASE("inclusion-exclusion") {
    {
        const auto e = incl_excl_expand({{0, 1, 1, 0}});
        for (size_t x = 0; x < 4; ++x) CHECK(e.eval(x) == std::vector<int>{0, 1, 1, 0}[x]);
    }
    // all 4-tuples of Boolean functions on a 2-point domain
    for (int code = 0; code < 256; ++code) {
        std::vector<std::vector<int>> fs(4, std::vector<int>(2));
        for (int i = 0; i < 4; ++i)
            for (int x = 0; x < 2; ++x) fs[i][x] = (code >> (2 * i + x)) & 1;
        const auto e = incl_excl_expand(fs);
        for (size_t x = 0; x < 2; ++x) CHECK(e.eval(x) == (fs[0][x] & fs[1][x] & fs[2][x] & fs[3][x]));
    }
}

}
