#include "polyapx/symmetric.hpp"

#include <algorithm>
#include <cmath>

#include "polyapx/blocks.hpp"
#include "polyapx/chebyshev.hpp"
#include "polyapx/parallel.hpp"

namespace polyapx {

SymSpec SymSpec::from_values(std::vector<Rational> values) {
    if (values.empty()) throw InvalidArgument("spectrum needs at least one value");
    for (const auto& v : values)
        if (abs(v) > 1) throw InvalidArgument("spectrum values must lie in [-1,1]");
    SymSpec s;
    s.n = static_cast<int>(values.size()) - 1;
    s.values = std::move(values);
    for (s.ell = 0;; ++s.ell) {
        bool ok = true;
        for (int t = s.ell + 1; t < s.n - s.ell; ++t)
            if (s.values[static_cast<size_t>(t)] != s.values[static_cast<size_t>(s.ell + 1)]) ok = false;
        if (ok) break;
    }
    s.supp_k = 0;
    for (int t = s.n; t >= 0; --t)
        if (s.values[static_cast<size_t>(t)] != 0) {
            s.supp_k = t;
            break;
        }
    return s;
}

SymSpec SymSpec::and_spec(int n) { return exact_spec(n, n); }

SymSpec SymSpec::or_spec(int n) {
    std::vector<Rational> v(static_cast<size_t>(n + 1), Rational(1));
    v[0] = 0;
    return from_values(std::move(v));
}

SymSpec SymSpec::exact_spec(int n, int j) {
    if (n < 0 || j < 0 || j > n) throw InvalidArgument("EXACT_{n,j} needs 0 <= j <= n");
    std::vector<Rational> v(static_cast<size_t>(n + 1), Rational(0));
    v[static_cast<size_t>(j)] = 1;
    return from_values(std::move(v));
}

SymSpec SymSpec::constant(int n, const Rational& c) {
    return from_values(std::vector<Rational>(static_cast<size_t>(n + 1), c));
}

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::AndCheb: return "and-cheb";
        case Construction::ExactWeight: return "exact-weight";
        case Construction::SymmetricCombo: return "symmetric-combo";
        case Construction::Sampling: return "sampling";
        case Construction::Extension: return "extension";
        case Construction::Interpolant: return "interpolant";
    }
    return "interpolant";
}

Construction parse_construction(const std::string& s) {
    for (auto c : {Construction::AndCheb, Construction::ExactWeight, Construction::SymmetricCombo,
                   Construction::Sampling, Construction::Extension, Construction::Interpolant})
        if (construction_name(c) == s) return c;
    throw InvalidArgument("unknown construction tag: " + s);
}

WeightSweep sweep_weights(const std::function<PolyExpr(long)>& build, const std::vector<Rational>& target, long prec) {
    const size_t m = target.size();
    WeightSweep out;
    out.errors.resize(m);
    const PolyExpr p = build(prec);
    // exact rational sweeps are limited to moderate degree; beyond that the
    // numerators explode and the doubled-precision float sweep takes over
    if (p.exact() && p.degree() <= kExactSweepMaxDegree) {
        parallel_for(m, [&](size_t t) { out.errors[t] = abs(p.eval(Rational(static_cast<long>(t))) - target[t]); });
        for (size_t t = 0; t < m; ++t)
            if (out.errors[t] == 0) out.exact_on.insert(static_cast<int>(t));
    } else {
        const PolyExpr p2 = build(2 * prec);
        std::vector<BigFloat> e1(m), e2(m);
        parallel_for(m, [&](size_t t) {
            const Rational w(static_cast<long>(t));
            e1[t] = abs(p.eval(BigFloat(w, prec)) - BigFloat(target[t], prec));
            e2[t] = abs(p2.eval(BigFloat(w, 2 * prec)) - BigFloat(target[t], 2 * prec));
        });
        const BigFloat tiny = ldexp(BigFloat(1, prec), -100);
        for (size_t t = 0; t < m; ++t) {
            // tiny errors are rounding noise around an exact zero; compare them absolutely
            const bool both_tiny = e1[t] <= tiny && e2[t] <= tiny;
            if (!both_tiny && !agrees_at_half_precision(e1[t], BigFloat(e2[t], prec)))
                throw PrecisionRejected("weight " + std::to_string(t) + ": value changes under doubled precision");
            out.errors[t] = e1[t].to_rational();
            if (e1[t] <= tiny) out.exact_on.insert(static_cast<int>(t));
        }
    }
    out.max_err = 0;
    for (size_t t = 0; t < m; ++t)
        if (out.errors[t] > out.max_err) {
            out.max_err = out.errors[t];
            out.argmax = static_cast<int>(t);
        }
    return out;
}

SymApprox certify(SymSpec spec, const std::function<PolyExpr(long)>& build, Construction c, long prec) {
    SymApprox a;
    a.poly = build(prec);
    WeightSweep sw = sweep_weights(build, spec.values, prec);
    a.spec = std::move(spec);
    a.certified_eps = sw.max_err;
    a.argmax = sw.argmax;
    a.exact_on = std::move(sw.exact_on);
    a.construction = c;
    a.precision = a.poly.exact() ? 0 : prec;
    a.builder = build;
    return a;
}

namespace {

PolyExpr cheb_ratio(int r, const Rational& scale, const Rational& at) {
    // T_r(t/scale)/T_r(at/scale)
    const Rational top = cheb_eval(r, Rational(at / scale));
    return PolyExpr::lincomb(Rational(0),
                             {{Rational(1) / top, PolyExpr::compose(PolyExpr::cheb(r), affine(1 / scale, 0))}});
}

// 1/(1 + max_{t<n}|p(t)|) as a coefficient in p's backend
Coef balance_coef(const PolyExpr& p, int n, long prec) {
    if (p.exact()) {
        Rational M = 0;
        for (int t = 0; t < n; ++t) M = std::max(M, abs(p.eval(Rational(t))));
        return Rational(1) / (1 + M);
    }
    BigFloat M(0, prec);
    for (int t = 0; t < n; ++t) M = max(M, abs(p.eval(BigFloat(t, prec))));
    return BigFloat(1 / (1 + M), prec);
}

}  // namespace

PolyExpr and_cheb_raw(int n, int d, long prec) {
    if (n < 1 || d < 0) throw InvalidArgument("and_cheb_raw needs n >= 1, d >= 0");
    if (d >= n) throw InvalidArgument("and_cheb_raw is the d < n branch");
    const int r = (d + 1) / 2;
    const int ell = d * d / (36 * n) + 1;
    if (r == 0 || n - ell <= 0) return PolyExpr::constant(Rational(1));
    std::vector<PolyExpr> fs{cheb_ratio(r, Rational(n - ell), Rational(n))};
    for (int i = n - ell + 1; i <= n - 1; ++i) fs.push_back(single_zero_factor(n, i, prec));
    PolyExpr p = fs.size() == 1 ? fs[0] : PolyExpr::product(std::move(fs));
    if (p.degree() > d) throw Error("AND construction exceeded its degree budget");
    return p;
}

SymApprox and_or_approx(int n, int d, Which which, long prec) {
    if (n < 1) throw InvalidArgument("and_or_approx needs n >= 1");
    if (d < 0) throw InvalidArgument("negative degree");
    auto and_poly = [n, d](long pr) {
        if (d >= n) return PolyExpr::mono(falling_factorial_over_factorial(n));
        PolyExpr raw = and_cheb_raw(n, d, pr);
        return PolyExpr::lincomb(Rational(0), {{balance_coef(raw, n, pr), raw}});
    };
    if (which == Which::AND) return certify(SymSpec::and_spec(n), and_poly, Construction::AndCheb, prec);
    auto or_poly = [and_poly, n](long pr) {
        return PolyExpr::lincomb(Rational(1), {{Rational(-1), PolyExpr::compose(and_poly(pr), affine(-1, n))}});
    };
    return certify(SymSpec::or_spec(n), or_poly, Construction::AndCheb, prec);
}

SymApprox and_or_for_eps(int n, const Rational& eps, Which which, long prec) {
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");
    for (int d = 0;; ++d) {
        SymApprox a = and_or_approx(n, d, which, prec);
        if (a.certified_eps <= eps || d >= n) return a;
    }
}

ExactWeightParams exact_weight_params(int n, int m, const Rational& eps) {
    const long w = kDefaultPrecision;
    BigFloat L = log2(BigFloat(Rational(2) / eps, w));
    ExactWeightParams P;
    P.ell = static_cast<int>(to_long(ceil(L + static_cast<long>(m))));
    P.r = static_cast<int>(to_long(ceil(sqrt(L * static_cast<long>(n)))));
    P.interpolant = 2 * P.ell >= n;
    return P;
}

PolyExpr exact_weight_poly(int n, int k, int m, const Rational& eps, long prec) {
    if (!(n >= m && m >= k && k >= 0)) throw InvalidArgument("exact_weight_approx needs n >= m >= k >= 0");
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    const ExactWeightParams P = exact_weight_params(n, m, eps);
    const int j = n - k;
    std::vector<PolyExpr> fs;
    if (P.interpolant) {
        for (int i = 0; i <= n; ++i)
            if (i != j) fs.push_back(PolyExpr::mono(RatPoly::linear(rat(1, j - i), rat(-i, j - i))));
        if (fs.empty()) return PolyExpr::constant(Rational(1));
        return PolyExpr::product(std::move(fs));
    }
    const int ell = P.ell;
    fs.push_back(cheb_ratio(P.r, Rational(n - ell), Rational(j)));
    for (int i = 0; i <= ell; ++i) fs.push_back(single_zero_factor(j, i, prec));
    for (int i = n - ell; i <= j - 1; ++i) fs.push_back(single_zero_factor(j, i, prec));
    for (int i = j + 1; i <= n; ++i)
        fs.push_back(PolyExpr::lincomb(Rational(1),
                                       {{Rational(-1), PolyExpr::power(single_zero_factor(i, j, prec), 2)}}));
    return PolyExpr::product(std::move(fs));
}

SymApprox exact_weight_approx(int n, int k, int m, const Rational& eps, long prec) {
    exact_weight_poly(n, k, m, eps, 64);  // validate before the sweep
    return certify(
        SymSpec::exact_spec(n, n - k), [n, k, m, eps](long pr) { return exact_weight_poly(n, k, m, eps, pr); },
        Construction::ExactWeight, prec);
}

RatPoly spectrum_interpolant(const SymSpec& spec) {
    std::vector<Rational> nodes;
    for (int t = 0; t <= spec.n; ++t) nodes.push_back(Rational(t));
    return lagrange_interpolate(nodes, spec.values);
}

SymApprox interpolant_approx(const SymSpec& spec) {
    PolyExpr p = PolyExpr::mono(spectrum_interpolant(spec));
    return certify(spec, [p](long) { return p; }, Construction::Interpolant);
}

SymApprox symmetric_approx(const SymSpec& spec, const Rational& eps, long prec) {
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    const int n = spec.n, ell = spec.ell;
    if (2 * ell >= n) return interpolant_approx(spec);
    const auto& f = spec.values;
    const Rational lambda = ell + 1 < n - ell ? f[static_cast<size_t>(ell + 1)] : f[0];
    Rational Lambda = 0;
    for (int i = 0; i <= ell; ++i)
        Lambda += abs(f[static_cast<size_t>(i)] - lambda) + abs(f[static_cast<size_t>(n - i)] - lambda);
    if (Lambda == 0)
        return certify(spec, [lambda](long) { return PolyExpr::constant(lambda); }, Construction::SymmetricCombo);
    const Rational each = std::min(Rational(eps / Lambda), rat(1, 3));
    auto build = [f, n, ell, lambda, each](long pr) {
        std::vector<std::pair<Coef, PolyExpr>> terms;
        for (int i = 0; i <= ell; ++i) {
            const Rational lo = f[static_cast<size_t>(i)] - lambda;      // EXACT_{n,i}
            const Rational hi = f[static_cast<size_t>(n - i)] - lambda;  // EXACT_{n,n−i}
            if (lo == 0 && hi == 0) continue;
            PolyExpr e = exact_weight_poly(n, i, ell, each, pr);
            if (lo != 0) terms.push_back({lo, PolyExpr::compose(e, affine(-1, n))});
            if (hi != 0) terms.push_back({hi, e});
        }
        return PolyExpr::lincomb(lambda, std::move(terms));
    };
    return certify(spec, build, Construction::SymmetricCombo, prec);
}

const double kSamplingNormExponent = 72.0;

SamplingResult sampling_approx(const SymSpec& spec, const Rational& eps) {
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    const int n = spec.n, k = spec.supp_k;
    SamplingResult out;
    if (k == 0 || 4 * k >= n) {
        out.fallback = true;
        out.approx = interpolant_approx(spec);
        out.approx.construction = Construction::Sampling;
        Rational l1 = 0;
        for (int w = 0; w <= n; ++w) l1 += Rational(binomial(n, w)) * abs(spec.values[static_cast<size_t>(w)]);
        out.pi_norm_bound = l1;
        return out;
    }
    const int L = n / (2 * k);
    for (int i = 0; i <= n; ++i) out.nodes.push_back(1 - pow(Rational(1) - rat(i, n), L));
    const auto& t = out.nodes;
    {
        BigFloat lnv = log(BigFloat(Rational(1) / eps, kDefaultPrecision));
        out.inner_d = 5 * static_cast<int>(to_long(ceil(lnv + 8L * k)));
    }
    const RatPoly om = RatPoly::linear(Rational(-1), Rational(1));
    RatPoly p = pow(om, out.inner_d);
    for (int i = n - k; i <= n; ++i) p = p * RatPoly::linear(Rational(1), -t[static_cast<size_t>(i)]);
    RatPoly q;
    for (int i = 0; i <= k; ++i) {
        const Rational fi = spec.values[static_cast<size_t>(i)];
        if (fi == 0) continue;
        RatPoly basis = RatPoly::constant(fi / p.eval(t[static_cast<size_t>(i)]));
        for (int j = 0; j <= 2 * k; ++j) {
            if (j == i) continue;
            const Rational den = t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)];
            basis = basis * RatPoly::linear(1 / den, -t[static_cast<size_t>(j)] / den);
        }
        q = q + basis;
    }
    out.pq = p * q;
    out.pq_degree = out.pq.degree();
    out.pq_norm = poly_norm(out.pq);
    out.pi_norm_bound = Rational(pow2(std::max(out.pq_degree, 0))) * out.pq_norm;
    const RatPoly tau = RatPoly::constant(Rational(1)) - pow(RatPoly::linear(Rational(-1, n), Rational(1)), L);
    PolyExpr f = PolyExpr::compose(PolyExpr::mono(out.pq), PolyExpr::mono(tau));
    out.approx = certify(spec, [f](long) { return f; }, Construction::Sampling);
    return out;
}

const double kDisjunctionDecayConstant = 0.05;
const double kPaturiConstant = 2.5;

int LinearFormApprox::count(const std::vector<int>& x) const {
    const auto& P = conjunction ? B : A;
    const auto& Q = conjunction ? A : B;
    int c = 0;
    for (int i : P) c += x[static_cast<size_t>(i - 1)];
    for (int i : Q) c += 1 - x[static_cast<size_t>(i - 1)];
    return c;
}

int LinearFormApprox::target(const std::vector<int>& x) const {
    bool any = false, all = true;
    for (int i : A) {
        any |= x[static_cast<size_t>(i - 1)] == 1;
        all &= x[static_cast<size_t>(i - 1)] == 1;
    }
    for (int i : B) {
        any |= x[static_cast<size_t>(i - 1)] == 0;
        all &= x[static_cast<size_t>(i - 1)] == 0;
    }
    return conjunction ? (all ? 1 : 0) : (any ? 1 : 0);
}

namespace {

void check_sets(int N, int n, const std::vector<int>& A, const std::vector<int>& B) {
    if (N < 0 || n < 0) throw InvalidArgument("N and n must be nonnegative");
    for (const auto* S : {&A, &B}) {
        std::set<int> seen;
        for (int i : *S) {
            if (i < 1 || i > N) throw InvalidArgument("variable index out of range");
            if (!seen.insert(i).second) throw InvalidArgument("repeated variable index");
        }
    }
}

}  // namespace

LinearFormApprox restricted_disjunction_approx(int N, int n, const std::vector<int>& A, const std::vector<int>& B,
                                               int d, long prec) {
    check_sets(N, n, A, B);
    if (d < 0) throw InvalidArgument("negative degree");
    LinearFormApprox out;
    out.N = N;
    out.n = n;
    out.A = A;
    out.B = B;
    const int a = std::min<int>(static_cast<int>(A.size()), n);
    out.count_max = a + static_cast<int>(B.size());
    bool overlap = false;
    for (int i : A)
        if (std::find(B.begin(), B.end(), i) != B.end()) overlap = true;
    if (overlap || static_cast<int>(B.size()) > n) {
        out.poly = PolyExpr::constant(Rational(1));  // f ≡ 1 on the domain
        out.certified_eps = 0;
        return out;
    }
    if (out.count_max == 0) {
        out.poly = PolyExpr::constant(Rational(0));
        out.certified_eps = 0;
        return out;
    }
    SymApprox s = and_or_approx(out.count_max, d, Which::OR, prec);
    out.poly = s.poly;
    out.certified_eps = s.certified_eps;
    return out;
}

LinearFormApprox restricted_conjunction_approx(int N, int n, const std::vector<int>& A, const std::vector<int>& B,
                                               int d, long prec) {
    LinearFormApprox dis = restricted_disjunction_approx(N, n, B, A, d, prec);
    LinearFormApprox out = dis;
    out.A = A;
    out.B = B;
    out.conjunction = true;
    out.poly = PolyExpr::lincomb(Rational(1), {{Rational(-1), dis.poly}});
    return out;
}

}  // namespace polyapx
