#include "polyapx/extension.hpp"

#include <algorithm>
#include <cmath>

#include "polyapx/chebyshev.hpp"

namespace polyapx {

const double kExtensionDegreeConstant = 4000.0;

namespace {

long ceil_log2_inv(const Rational& delta) { return std::max(1L, ceil_log2(Rational(1) / delta)); }

int ceil_sqrt_int(int n) {
    int s = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while (s * s < n) ++s;
    while (s > 0 && (s - 1) * (s - 1) >= n) --s;
    return s;
}

// F_n: f on weights 0..m, zero above
SymSpec extended_spec(const SymSpec& in, int m, int n) {
    std::vector<Rational> v(static_cast<size_t>(n + 1), Rational(0));
    for (int t = 0; t <= m && t <= in.n; ++t) v[static_cast<size_t>(t)] = in.values[static_cast<size_t>(t)];
    return SymSpec::from_values(std::move(v));
}

double ratio(int deg_out, int deg_in, const Rational& delta, int m, int n) {
    const double l = std::log2(1 / delta.get_d());
    return deg_out / (deg_in + l) * std::sqrt((m + 1.0) / n);
}

}  // namespace

ExtensionResult extend_approx(const SymApprox& phi, int m, int n, const Rational& delta) {
    if (m < 0 || n < m) throw InvalidArgument("extend_approx needs n >= m >= 0");
    if (delta <= 0 || delta >= rat(1, 2)) throw InvalidArgument("delta must lie in (0,1/2)");
    if (phi.spec.n != 2 * m) throw InvalidArgument("input approximant must be certified on weights 0..2m");
    for (int t = m + 1; t <= 2 * m; ++t)
        if (phi.spec.values[static_cast<size_t>(t)] != 0)
            throw HypothesisViolated("target is nonzero at weight " + std::to_string(t) + " in (m, 2m]");
    ExtensionResult out;
    out.input = phi;
    out.m = m;
    out.n = n;
    out.delta = delta;
    if (n <= 2 * m) {
        out.passthrough = true;
        out.output = phi;
        out.degree_ratio = ratio(phi.degree(), phi.degree(), delta, m, std::max(n, 1));
        return out;
    }
    const SymSpec target = extended_spec(phi.spec, m, n);
    if (m == 0) {
        // f(0)·T(t)/T(0), T = T_s(1 + (1−t)/n)^e
        const int s = ceil_sqrt_int(n);
        const long e = ceil_log2_inv(delta);
        const Rational b = 1 + rat(1, n);
        const Rational scale = phi.spec.values[0] / pow(cheb_eval(s, b), e);
        PolyExpr T = PolyExpr::power(PolyExpr::compose(PolyExpr::cheb(s), affine(Rational(-1, n), b)), static_cast<int>(e));
        PolyExpr p = scale == 0 ? PolyExpr::constant(Rational(0)) : PolyExpr::lincomb(Rational(0), {{scale, T}});
        out.output = certify(target, [p](long) { return p; }, Construction::Extension);
        out.d = 0;
        out.degree_ratio = ratio(out.output.degree(), phi.degree(), delta, m, n);
        return out;
    }
    const int deg_phi = phi.degree();
    if (deg_phi > 2 * m) throw HypothesisViolated("input degree exceeds 2m");
    out.d = std::max(deg_phi, 1);
    {
        const long w = kDefaultPrecision;
        BigFloat c = ceil(pow(4 * exp(BigFloat(1, w)), static_cast<long>(out.d + 1)));
        out.alpha = delta / c.to_rational();
    }
    IntervalIndicator ind = interval_indicator(rat(n, m), out.d, out.alpha);
    out.indicator = ind.params;
    PolyExpr scaled = PolyExpr::compose(ind.poly, affine(rat(1, m), 0));
    SymApprox in = phi;
    auto build = [in, scaled](long pr) { return PolyExpr::product({in.rebuild(pr), scaled}); };
    out.output = certify(target, build, Construction::Extension, std::max(phi.precision, kDefaultPrecision));
    out.degree_ratio = ratio(out.output.degree(), deg_phi, delta, m, n);
    return out;
}

SymApprox small_support_core(const SymSpec& spec, const Rational& eps) {
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    const int n = spec.n, k = spec.supp_k;
    const int m = static_cast<int>(k + ceil_log2_inv(eps));
    if (2 * m >= n) return interpolant_approx(spec);
    std::vector<Rational> v(spec.values.begin(), spec.values.begin() + 2 * m + 1);
    SymApprox phi = interpolant_approx(SymSpec::from_values(std::move(v)));
    return extend_approx(phi, m, n, eps).output;
}

SymApprox small_support_approx(const SymSpec& spec, const Rational& eps) {
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    const int n = spec.n, ell = spec.ell;
    if (2 * ell >= n) return interpolant_approx(spec);
    const auto& f = spec.values;
    const Rational lambda = ell + 1 < n - ell ? f[static_cast<size_t>(ell + 1)] : f[0];
    std::vector<Rational> lo(static_cast<size_t>(n + 1), Rational(0)), hi = lo;
    for (int i = 0; i <= ell; ++i) {
        lo[static_cast<size_t>(i)] = (f[static_cast<size_t>(i)] - lambda) / 2;
        hi[static_cast<size_t>(i)] = (f[static_cast<size_t>(n - i)] - lambda) / 2;
    }
    const SymSpec slo = SymSpec::from_values(std::move(lo)), shi = SymSpec::from_values(std::move(hi));
    if (slo.supp_k == 0 && slo.values[0] == 0 && shi.supp_k == 0 && shi.values[0] == 0)
        return certify(spec, [lambda](long) { return PolyExpr::constant(lambda); }, Construction::Extension);
    const Rational each = eps / 4;
    const SymApprox a = small_support_core(slo, each), b = small_support_core(shi, each);
    auto build = [a, b, lambda, n](long pr) {
        return PolyExpr::lincomb(lambda, {{Rational(2), a.rebuild(pr)},
                                          {Rational(2), PolyExpr::compose(b.rebuild(pr), affine(-1, n))}});
    };
    return certify(spec, build, Construction::Extension);
}

Integer extrapolation_bound(int d, int m, int N, int weight) {
    if (!(N > m && m >= d && d >= 0)) throw InvalidArgument("extrapolation_bound needs N > m >= d >= 0");
    if (weight < 0 || weight > N) throw InvalidArgument("weight must lie in [0, N]");
    if (d == 0) return 1;
    const int block = m / d;
    const long c = (weight + block - 1) / block;
    return Integer(pow2(d)) * binomial(c, d);
}

}  // namespace polyapx
