#include "test_util.hpp"

#include <cmath>

#include "polyapx/bounds.hpp"
#include "polyapx/composed.hpp"
#include "polyapx/oracle.hpp"
#include "polyapx/symmetric.hpp"

using namespace polyapx;
using testutil::q;

namespace {

BoundQuery query(Family f, double n, int k, double D, double r = 1) { return {f, n, r, k, D, default_constants(f)}; }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("family names") {
    for (Family f : {Family::Symmetric, Family::Kdnf, Family::EdRangeFree, Family::EdRangeDep, Family::Surj})
        CHECK(parse_family(family_name(f)) == f);
    CHECK(parse_family("ed") == Family::EdRangeFree);
    CHECK_THROWS_AS(parse_family("dnf"), InvalidArgument);
}

TEST_CASE("constants follow the stated relations") {
    const double C = default_constants(Family::Kdnf).C;
    CHECK(C == doctest::Approx(kSelectorConstant * std::sqrt(2.0) / std::log(2.0)));
    CHECK(default_constants(Family::Kdnf).c == doctest::Approx(2 * (C + 1) * (C + 1)));
    CHECK(default_constants(Family::EdRangeFree).c == doctest::Approx(16 * C * C));
}

TEST_CASE("closed-form examples") {
    for (double n : {64.0, 1000.0})
        for (double D : {1.0, 5.0}) CHECK(closed_form(query(Family::Kdnf, n, 0, D)) == 0);
    for (double n : {1024.0, 16384.0})
        for (double D : {1.0, 8.0}) {
            const double C = default_constants(Family::EdRangeFree).C;
            CHECK(closed_form(query(Family::EdRangeFree, n, 1, D)) == doctest::Approx(std::min(n, C * std::sqrt(n * D))));
        }
    CHECK(closed_form(query(Family::Surj, 4, 0, 1, 8)) == 0);
    // symmetric: c(√(nk) + √(nΔ)) below the clamp
    const double c = default_constants(Family::Symmetric).c;
    CHECK(closed_form(query(Family::Symmetric, 10000, 2, 3)) ==
          doctest::Approx(std::min(10000.0, c * (std::sqrt(20000.0) + std::sqrt(30000.0)))));
    // clamped by n
    CHECK(closed_form(query(Family::Kdnf, 16, 3, 64)) == 16);
    CHECK_THROWS_AS(closed_form(query(Family::Kdnf, 64, 1, 0.5)), InvalidArgument);
    CHECK_THROWS_AS(closed_form(query(Family::Kdnf, 64, -1, 2)), InvalidArgument);
}

TEST_CASE("recurrence with a vanishing inner bound") {
    const InnerBound zero = [](double, double, int, double) { return 0.0; };
    const BoundQuery qk = query(Family::Kdnf, 4096, 1, 4);
    const auto v = recurrence_step(qk, zero, geometric_b_grid(1, 1000));
    CHECK(v.value == doctest::Approx(qk.constants.C * std::sqrt(4096.0 * 4)));
    CHECK(v.best_b == doctest::Approx(1.0));
}

TEST_CASE("kdnf step at the analytic optimizer") {
    const BoundQuery q2 = query(Family::Kdnf, 1024, 2, 2);
    const double C = q2.constants.C, c = q2.constants.c, n = 1024, D = 2;
    const double b = (C + 1) * (C + 1) * 4 * std::pow(n / D, 1 - 2.0 / 3);
    REQUIRE(analytic_b(q2).has_value());
    CHECK(*analytic_b(q2) == doctest::Approx(b));
    // unclamped, straight from the formulas
    const double D1 = D + C * std::sqrt(n * D / b);
    const double rhs = C * std::sqrt(n * b * D) + c * std::sqrt(2.0) * std::sqrt(n) * std::sqrt(D1);
    const double closed = c * 2 * std::pow(n, 2.0 / 3) * std::pow(D, 1.0 / 3);
    CHECK(rhs <= closed);
    const InnerBound inner = [&](double nn, double, int kk, double DD) {
        return closed_form(query(Family::Kdnf, nn, kk, DD));
    };
    CHECK(recurrence_step(q2, inner, {}).value <= closed_form(q2));
}

TEST_CASE("ed small-range passthrough") {
    const BoundQuery qd = query(Family::EdRangeDep, 100, 3, 4, 50);
    const InnerBound inner = [](double n, double r, int k, double D) { return n + r + k + D; };
    CHECK(recurrence_step(qd, inner, {}).value == 100 + 50 + 3 + 4);
}

TEST_CASE("induction grids have no violations") {
    for (Family f : {Family::Kdnf, Family::EdRangeFree, Family::EdRangeDep}) {
        const auto rep = consistency_sweep(f, induction_grid(f));
        CHECK(rep.violations == 0);
        CHECK(!rep.points.empty());
        for (const auto& p : rep.points) CHECK(p.closed >= p.recurrence);
        MESSAGE(family_name(f) << ": " << rep.points.size() << " points, " << rep.nontrivial << " below n");
    }
    CHECK(induction_grid(Family::Kdnf).n.front() == 64);
    CHECK(induction_grid(Family::Kdnf).n.back() == 16384);
}

TEST_CASE("entropy bound") {
    CHECK(entropy_bound_violations(64) == 0);
    // spot values checked here independently
    for (int n = 1; n <= 30; ++n)
        for (int k = 1; k <= n; ++k) {
            Rational s = 0;
            for (int i = 0; i <= k; ++i) s += testutil::binom(n, i);
            CHECK(s.get_d() <= std::pow(M_E * n / k, k) * (1 + 1e-12));
        }
}

TEST_CASE("monotone in n and Delta") {
    for (Family f : {Family::Symmetric, Family::Kdnf, Family::EdRangeFree, Family::EdRangeDep, Family::Surj})
        for (int k : {1, 2, 3})
            for (double r : {1.0, 16.0}) {
                double prev = 0;
                for (int e = 4; e <= 20; ++e) {
                    const double v = closed_form(query(f, std::ldexp(1.0, e), k, 4, r));
                    CHECK(v >= prev);
                    prev = v;
                }
                prev = 0;
                for (double D : {1.0, 2.0, 4.0, 16.0, 64.0}) {
                    const double v = closed_form(query(f, 1 << 20, k, D, r));
                    CHECK(v >= prev);
                    prev = v;
                }
            }
}

TEST_CASE("kdnf at k=1 tracks the OR bound") {
    for (int e = 4; e <= 24; e += 2)
        for (double D : {1.0, 4.0, 32.0}) {
            const double a = closed_form(query(Family::Kdnf, std::ldexp(1.0, e), 1, D));
            const double b = closed_form(query(Family::Symmetric, std::ldexp(1.0, e), 0, D));
            CHECK(a / b <= 100);
            CHECK(b / a <= 100);
        }
}

TEST_CASE("bounds dominate exact optima on small symmetric instances") {
    for (int n : {4, 8, 16, 32})
        for (long D : {1, 2, 4}) {
            const Rational eps = Rational(1) / Rational(pow2(D));
            for (int k : {0, 1, 2}) {
                const auto spec = k == 0 ? SymSpec::and_spec(n) : SymSpec::exact_spec(n, k);
                CHECK(closed_form(query(Family::Symmetric, n, spec.ell, double(D))) >= deg_eps(spec.values, eps));
            }
        }
}

TEST_CASE("b grid") {
    const auto g = geometric_b_grid(1, 10);
    CHECK(g.size() == 65);
    CHECK(g.front() == 1);
    CHECK(g.back() == doctest::Approx(10));
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK_THROWS_AS(geometric_b_grid(0.5, 10), InvalidArgument);
}

TEST_CASE("csv") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"a", "b,c", ""}) == "a,\"b,c\",\r\n");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(64) == "64");
    SweepReport r;
    SweepPoint p;
    p.q = query(Family::Kdnf, 64, 1, 1);
    p.closed = 5;
    p.recurrence = 4;
    r.points.push_back(p);
    CHECK(sweep_csv(r) == "family,n,r,k,Delta,bound,recurrence_value,oracle_value\r\nkdnf,64,1,1,1,5,4,\r\n");
}

}
