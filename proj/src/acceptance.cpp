#include "polyapx/acceptance.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "polyapx/bounds.hpp"
#include "polyapx/chebyshev.hpp"
#include "polyapx/composed.hpp"
#include "polyapx/extension.hpp"
#include "polyapx/json_io.hpp"
#include "polyapx/oracle.hpp"
#include "polyapx/rng.hpp"
#include "polyapx/symmetric.hpp"

namespace polyapx {

namespace {

std::atomic<int> g_precision_rejections{0};

std::string dbl(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

Rational random_rational(Rng& rng, long lo, long hi, long den) { return rat(rng.range(lo, hi), den); }

// solves A z = b over the rationals (A square, nonsingular)
std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) throw Error("singular reference system");
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            const Rational f = A[r][c] / A[c][c];
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
            b[r] -= f * b[c];
        }
    }
    for (size_t i = 0; i < n; ++i) b[i] /= A[i][i];
    return b;
}

// ---- criterion bodies; each returns pass and appends details ----

using Details = std::vector<std::string>;

bool chebyshev_suite(uint64_t, Details& det) {
    const long P = 256;
    const BigFloat tol = ldexp(BigFloat(1, P), -120);
    const BigFloat pi = BigFloat::pi(P);
    int bad_identity = 0;
    BigFloat worst(0, P);
    for (int d = 0; d <= 64; ++d)
        for (int j = 0; j < 100; ++j) {
            const BigFloat theta = pi * BigFloat(rat(j + 1, 101), P);
            const BigFloat e = abs(cheb_eval(d, cos(theta)) - cos(theta * static_cast<long>(d)));
            worst = max(worst, e);
            bad_identity += e > tol;
        }
    det.push_back("identity: 65x100 points, max |T_d(cos θ) − cos dθ| = " + worst.to_decimal(3) +
                  ", violations " + std::to_string(bad_identity));

    int bad_growth = 0;
    for (int d = 1; d <= 50; ++d)
        for (int j = 1; j <= 50; ++j) {
            const Rational delta(j, 50);
            const Rational T = cheb_eval(d, Rational(1 + delta));
            bad_growth += T < 1 + Rational(d * d) * delta;
            // 2^(d√δ − 1), compared in high precision
            const BigFloat lower = pow(BigFloat(2, P), sqrt(BigFloat(delta, P)) * static_cast<long>(d) - 1L);
            bad_growth += BigFloat(T, P) < lower;
        }
    for (int d = 1; d <= 50; ++d)
        for (int j = 1; j <= 50; ++j) {
            const Rational delta(j, 5);
            bad_growth += cheb_eval(d, Rational(1 + delta)) < 1 + Rational(d * d) * delta;
        }
    det.push_back("growth: 50x50 grid on (0,1] (both bounds) and 50x50 on (0,10] (first bound), violations " +
                  std::to_string(bad_growth));
    return bad_identity == 0 && bad_growth == 0;
}

bool oracle_suite(uint64_t seed, Details& det) {
    bool ok = true;
    const MinimaxResult or2 = minimax_lp(std::vector<Rational>{0, 1, 1}, 1);
    ok &= or2.eps_star == rat(1, 4);
    det.push_back("E(OR_2, 1) = " + to_string(or2.eps_star) + " (expected 1/4)");
    const MinimaxResult and1 = minimax_lp(std::vector<Rational>{0, 1}, 0);
    ok &= and1.eps_star == rat(1, 2);
    det.push_back("E(AND_1, 0) = " + to_string(and1.eps_star) + " (expected 1/2)");
    Rng rng(seed);
    double worst = 0;
    for (int it = 0; it < 20; ++it) {
        const int n = static_cast<int>(rng.range(1, 6));
        const int d = static_cast<int>(rng.range(0, 3));
        std::vector<Rational> f;
        std::vector<std::pair<Rational, Rational>> pts;
        for (int t = 0; t <= n; ++t) {
            f.push_back(random_rational(rng, -8, 8, 8));
            pts.emplace_back(Rational(t), f.back());
        }
        const Rational lp = minimax_lp(f, d).eps_star;
        const Rational ref = reference_minimax(pts, d);
        worst = std::max(worst, std::fabs(Rational(lp - ref).get_d()));
    }
    ok &= worst <= 1e-9;
    det.push_back("20 random spectra (n ≤ 6, d ≤ 3): max |LP − reference enumeration| = " + dbl(worst));
    return ok;
}

bool symmetric_suite(uint64_t, Details& det) {
    bool ok = true;
    det.push_back("n, construction degree, oracle deg_1/3(AND_n), ratio, certified eps");
    for (int n : {8, 16, 32, 64}) {
        const SymApprox a = and_or_for_eps(n, rat(1, 3), Which::AND);
        const int od = deg_eps(SymSpec::and_spec(n).values, rat(1, 3));
        const double ratio = od > 0 ? static_cast<double>(a.degree()) / od : 0;
        const bool row = a.certified_eps <= rat(1, 3) && a.degree() >= od && a.degree() <= 10 * od;
        ok &= row;
        det.push_back(std::to_string(n) + ", " + std::to_string(a.degree()) + ", " + std::to_string(od) + ", " +
                      dbl(ratio) + ", " + dbl(a.certified_eps.get_d()) + (row ? "" : "  <-- FAIL"));
    }
    return ok;
}

bool exact_suite(uint64_t, Details& det) {
    bool ok = true;
    const int n = 24;
    for (int k : {0, 2, 4}) {
        const SymApprox a = exact_weight_approx(n, k, k, rat(1, 8));
        bool exact = true;
        for (int t = 0; t <= n; ++t)
            if ((t <= k || t >= n - k) && !a.exact_on.count(t)) exact = false;
        ok &= exact && a.certified_eps <= rat(1, 8);
        det.push_back("k=" + std::to_string(k) + ": degree " + std::to_string(a.degree()) + ", max error " +
                      dbl(a.certified_eps.get_d()) + ", exact on weights ≤ m and ≥ n−m: " + (exact ? "yes" : "no"));
    }
    return ok;
}

bool extension_suite(uint64_t seed, Details& det) {
    Rng rng(seed + 5);
    int fails = 0;
    double worst_ratio = 0, worst_err = 0;
    for (int it = 0; it < 50; ++it) {
        std::vector<Rational> f(33, Rational(0));
        for (int t = 0; t <= 3; ++t) f[static_cast<size_t>(t)] = random_rational(rng, -8, 8, 8);
        const SymApprox phi = interpolant_approx(SymSpec::from_values({f.begin(), f.begin() + 7}));
        const ExtensionResult r = extend_approx(phi, 3, 32, rat(1, 8));
        worst_ratio = std::max(worst_ratio, r.degree_ratio);
        worst_err = std::max(worst_err, r.output.certified_eps.get_d());
        if (r.output.spec.values != f || r.output.certified_eps > phi.certified_eps + rat(1, 8) ||
            r.degree_ratio > kExtensionDegreeConstant)
            ++fails;
    }
    det.push_back("50 random f on weights ≤ 3, m=3 → n=32: max error " + dbl(worst_err) + ", max degree ratio " +
                  dbl(worst_ratio) + " (K_ext = " + dbl(kExtensionDegreeConstant) + "), failures " +
                  std::to_string(fails));
    return fails == 0;
}

bool sampling_suite(uint64_t seed, Details& det) {
    Rng rng(seed + 6);
    bool ok = true;
    const int n = 32;
    const Rational eps(1, 8);
    for (int k : {1, 2, 3}) {
        std::vector<Rational> f(n + 1, Rational(0));
        for (int t = 0; t < k; ++t) f[static_cast<size_t>(t)] = random_rational(rng, -8, 8, 8);
        f[static_cast<size_t>(k)] = rat(rng.coin() ? 1 : -1, rng.coin() ? 1 : 2);
        const SamplingResult s = sampling_approx(SymSpec::from_values(f), eps);
        bool exact = s.approx.poly.exact();
        for (int t = 0; t <= n; ++t)
            if ((t <= k || t >= n - k) && !s.approx.exact_on.count(t)) exact = false;
        const double log_bound = kSamplingNormExponent * (k + 3);
        const double log_pq = std::log2(s.pq_norm.get_d());
        const double log_pi = std::log2(s.pi_norm_bound.get_d());
        const bool row = !s.fallback && exact && s.approx.certified_eps <= eps && log_pi <= log_bound;
        ok &= row;
        det.push_back("k=" + std::to_string(k) + ": degree " + std::to_string(s.approx.degree()) + ", error " +
                      dbl(s.approx.certified_eps.get_d()) + ", exact at the ends: " + (exact ? "yes" : "no") +
                      ", log2‖p·q‖ = " + dbl(log_pq) + ", log2 Π bound = " + dbl(log_pi) + " ≤ " + dbl(log_bound));
    }
    return ok;
}

bool surjectivity_suite(uint64_t, Details& det) {
    bool ok = true;
    auto run = [&](int n, int r, const Rational& eps) {
        const BlockSymApprox a = surjectivity_approx(n, r, eps);
        const BlockSweep sw = sweep_block(a);
        const double shape = std::sqrt(static_cast<double>(n)) * std::pow(static_cast<double>(r), 0.25);
        const double ratio = a.tracked_degree / shape;
        const bool row = sw.max_err <= eps && sw.max_err <= a.certified_eps && ratio <= kSurjDegreeConstant;
        ok &= row;
        det.push_back("n=" + std::to_string(n) + " r=" + std::to_string(r) + " eps=" + to_string(eps) + ": " +
                      std::to_string(sw.count) + " weight vectors, max error " + dbl(sw.max_err.get_d()) +
                      ", certified " + dbl(a.certified_eps.get_d()) + ", degree " + std::to_string(a.tracked_degree) +
                      ", degree/(√n·r^¼) = " + dbl(ratio) + (row ? "" : "  <-- FAIL"));
    };
    for (auto [n, r] : {std::pair{8, 2}, {12, 3}, {16, 4}}) run(n, r, rat(1, 3));
    run(12, 3, rat(1, 16));
    const BlockSymApprox z = surjectivity_approx(4, 8, rat(1, 3));
    const bool zero = z.terms.empty() && z.certified_eps == 0 && z.tracked_degree == 0 && sweep_block(z).max_err == 0;
    ok &= zero;
    det.push_back(std::string("r > n (n=4, r=8): constant 0 with error 0: ") + (zero ? "yes" : "no"));
    return ok;
}

bool composition_suite(uint64_t seed, Details& det) {
    Rng rng(seed + 8);
    Rational worst = 0;
    int bound = 0;
    for (int it = 0; it < 20; ++it) {
        SelectorInstance inst;
        inst.M = 2;
        inst.X = {0, 1, 2, 3};
        inst.N = 4;
        inst.n = 2;
        inst.b = 1;
        for (int i = 0; i < inst.N; ++i) {
            std::vector<int> t;
            for (size_t j = 0; j < inst.X.size(); ++j) t.push_back(rng.coin());
            inst.f.push_back(t);
        }
        const SelectorResult s = selector_compose(inst, rat(1, 4));
        worst = std::max(worst, s.max_error);
        bound = std::max(bound, s.degree_bound);
    }
    det.push_back("20 corpora, N=4 n=2 b=1, |X|=4: max |F − F̃| = " + to_string(worst) +
                  ", largest degree bound " + std::to_string(bound));
    return worst <= rat(1, 4);
}

bool lemma_suite(uint64_t seed, Details& det) {
    Rng rng(seed + 9);
    int bad_uni = 0, bad_multi = 0, bad_extra = 0;
    for (int it = 0; it < 500; ++it) {
        const int d = static_cast<int>(rng.range(1, 12));
        std::vector<Rational> c;
        for (int i = 0; i <= d; ++i) c.push_back(rat(rng.range(-50, 50), rng.range(1, 16)));
        const RatPoly p(c);
        Rational M = 0;
        for (int i = 0; i <= d; ++i) M = std::max(M, abs(p.eval(rat(i, d))));
        bad_uni += poly_norm(p) > Rational(pow2(3L * d)) * M;
    }
    for (int it = 0; it < 100; ++it) {
        const int n = static_cast<int>(rng.range(1, 10));
        const int d = static_cast<int>(rng.range(0, n));
        std::vector<Rational> a;
        for (int i = 0; i <= d; ++i) a.push_back(rat(rng.range(-20, 20), rng.range(1, 8)));
        MultilinearPoly phi;
        phi.N = n;
        for (uint32_t S = 0; S < (1U << n); ++S)
            if (__builtin_popcount(S) <= d && a[static_cast<size_t>(__builtin_popcount(S))] != 0)
                phi.coef[S] = a[static_cast<size_t>(__builtin_popcount(S))];
        Rational M = 0;
        for (uint32_t x = 0; x < (1U << n); ++x) M = std::max(M, abs(phi.eval(x)));
        bad_multi += phi.norm() > Rational(pow2(3L * std::max(phi.degree(), 0))) * M;
    }
    for (int it = 0; it < 200; ++it) {
        const int d = static_cast<int>(rng.range(0, 4));
        const int N = static_cast<int>(rng.range(std::max(d, 1) + 1, 12));
        const int m = static_cast<int>(rng.range(std::max(d, 1), N - 1));
        MultilinearPoly phi;
        phi.N = N;
        const int terms = static_cast<int>(rng.range(1, 12));
        for (int t = 0; t < terms; ++t) {
            const int deg = static_cast<int>(rng.range(0, d));
            uint32_t S = 0;
            while (__builtin_popcount(S) < deg) S |= 1U << rng.below(static_cast<uint64_t>(N));
            phi.coef[S] += Rational(rng.range(-9, 9));
        }
        Rational M = 0;
        for (uint32_t x = 0; x < (1U << N); ++x)
            if (__builtin_popcount(x) <= m) M = std::max(M, abs(phi.eval(x)));
        for (int s = 0; s < 100; ++s) {
            const int w = static_cast<int>(rng.range(m + 1, N));
            uint32_t x = 0;
            while (__builtin_popcount(x) < w) x |= 1U << rng.below(static_cast<uint64_t>(N));
            bad_extra += abs(phi.eval(x)) > Rational(extrapolation_bound(d, m, N, w)) * M;
        }
    }
    det.push_back("‖p‖ ≤ 8^d max|p(i/d)|: 500 polynomials, violations " + std::to_string(bad_uni));
    det.push_back("symmetric multilinear ‖φ‖ ≤ 8^deg max|φ|: 100 polynomials, violations " + std::to_string(bad_multi));
    det.push_back("generalized extrapolation: 200 polynomials × 100 points, violations " + std::to_string(bad_extra));
    return bad_uni == 0 && bad_multi == 0 && bad_extra == 0;
}

bool bounds_suite(uint64_t, Details& det) {
    bool ok = true;
    for (Family f : {Family::Kdnf, Family::EdRangeFree, Family::EdRangeDep}) {
        const SweepReport r = consistency_sweep(f, induction_grid(f));
        ok &= r.violations == 0;
        det.push_back(family_name(f) + ": " + std::to_string(r.points.size()) + " grid points (" +
                      std::to_string(r.nontrivial) + " below the trivial bound n), violations " +
                      std::to_string(r.violations));
    }
    BoundQuery q{Family::Kdnf, 1024, 1, 0, 8, default_constants(Family::Kdnf)};
    const double k0 = closed_form(q);
    ok &= k0 == 0;
    det.push_back("kdnf k=0: " + dbl(k0));
    const BoundConstants ce = default_constants(Family::EdRangeFree);
    for (double D : {1.0, 8.0}) {
        BoundQuery e{Family::EdRangeFree, 16384, 1, 1, D, ce};
        const double v = closed_form(e), want = ce.C * std::sqrt(16384 * D);
        ok &= std::fabs(v - want) <= 1e-9 * want;
        det.push_back("ed k=1, n=16384, Δ=" + dbl(D) + ": " + dbl(v, 10) + " vs C√(nΔ) = " + dbl(want, 10));
    }
    const int ent = entropy_bound_violations(64);
    ok &= ent == 0;
    det.push_back("Σ_{i≤k} C(n,i) ≤ (en/k)^k for n ≤ 64: violations " + std::to_string(ent));
    return ok;
}

bool determinism_suite(uint64_t seed, Details& det) {
    auto snapshot = [seed]() {
        std::string s;
        s += sym_json(and_or_for_eps(32, rat(1, 3), Which::AND)).dump();
        s += sym_json(exact_weight_approx(24, 2, 2, rat(1, 8))).dump();
        s += block_json(surjectivity_approx(8, 2, rat(1, 3))).dump();
        s += minimax_json(minimax_lp(std::vector<Rational>{0, 1, 1}, 1)).dump();
        std::vector<Rational> f(33, Rational(0));
        f[0] = 1;
        f[1] = rat(-1, 2);
        s += sym_json(sampling_approx(SymSpec::from_values(f), rat(1, 8)).approx).dump();
        s += sym_json(small_support_approx(SymSpec::from_values(f), rat(1, 8))).dump();
        s += sweep_csv(consistency_sweep(Family::Kdnf, induction_grid(Family::Kdnf)));
        Rng rng(seed);
        s += std::to_string(rng.next());
        return s;
    };
    const std::string a = snapshot(), b = snapshot();
    const bool same = a == b;
    det.push_back(std::string("repeated construction/serialization runs byte-identical: ") + (same ? "yes" : "no") +
                  " (" + std::to_string(a.size()) + " bytes)");
    return same;
}

struct Spec {
    const char* name;
    double budget;
    std::function<bool(uint64_t, Details&)> body;
};

const std::vector<Spec>& specs() {
    static const std::vector<Spec> s = {
        {"Chebyshev identity and growth", 5, chebyshev_suite},
        {"oracle exactness", 30, oracle_suite},
        {"symmetric AND construction vs oracle", 60, symmetric_suite},
        {"EXACT construction", 10, exact_suite},
        {"extension theorem", 30, extension_suite},
        {"sampling construction", 10, sampling_suite},
        {"surjectivity", 120, surjectivity_suite},
        {"composition (toy)", 60, composition_suite},
        {"coefficient and extrapolation lemmas", 60, lemma_suite},
        {"bounds consistency", 10, bounds_suite},
        {"determinism and precision", 120, determinism_suite},
    };
    return s;
}

}  // namespace

Rational reference_minimax(const std::vector<std::pair<Rational, Rational>>& values, int d) {
    if (d < 0) throw InvalidArgument("negative degree");
    auto pts = values;
    std::sort(pts.begin(), pts.end());
    const size_t N = pts.size(), K = static_cast<size_t>(d) + 2;
    if (N < K) return 0;
    Rational best = 0;
    std::vector<size_t> idx(K);
    for (size_t i = 0; i < K; ++i) idx[i] = i;
    for (;;) {
        std::vector<std::vector<Rational>> A(K, std::vector<Rational>(K));
        std::vector<Rational> b(K);
        for (size_t i = 0; i < K; ++i) {
            Rational pw = 1;
            for (size_t j = 0; j + 1 < K; ++j, pw *= pts[idx[i]].first) A[i][j] = pw;
            A[i][K - 1] = i % 2 ? -1 : 1;
            b[i] = pts[idx[i]].second;
        }
        best = std::max(best, abs(solve(A, b)[K - 1]));
        // next K-combination of 0..N−1
        size_t i = K;
        while (i-- > 0 && idx[i] == N - K + i) {
        }
        if (i == static_cast<size_t>(-1)) break;
        ++idx[i];
        for (size_t j = i + 1; j < K; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

CriterionResult run_criterion(int id, uint64_t seed) {
    if (id < 1 || id > static_cast<int>(specs().size())) throw InvalidArgument("criterion id out of range");
    const Spec& s = specs()[static_cast<size_t>(id - 1)];
    CriterionResult r;
    r.id = id;
    r.name = s.name;
    r.budget = s.budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = s.body(seed, r.details);
    } catch (const PrecisionRejected& e) {
        ++g_precision_rejections;
        r.details.push_back(std::string("precision rejected: ") + e.what());
    } catch (const std::exception& e) {
        r.details.push_back(std::string("error: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget) {
        r.details.push_back("over the time budget of " + dbl(r.budget) + " s");
        r.pass = false;
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, uint64_t seed) {
    std::vector<CriterionResult> all;
    const int before = g_precision_rejections.load();
    for (int id = 1; id <= static_cast<int>(specs().size()); ++id) {
        CriterionResult r = run_criterion(id, seed);
        if (id == static_cast<int>(specs().size())) {
            const int rejected = g_precision_rejections.load() - before;
            r.details.push_back("precision rejections during the suite: " + std::to_string(rejected));
            r.pass = r.pass && rejected == 0;
        }
        out << "CRITERION " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ("
            << dbl(r.seconds, 3) << " s)\n";
        for (const auto& d : r.details) out << "    " << d << "\n";
        out.flush();
        all.push_back(std::move(r));
    }
    return all;
}

}  // namespace polyapx
