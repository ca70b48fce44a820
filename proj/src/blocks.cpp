#include "polyapx/blocks.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "polyapx/chebyshev.hpp"

namespace polyapx {

namespace {

// smallest s ≥ 0 with s²·den ≥ num·... i.e. ⌈√q⌉ for rational q ≥ 0
long ceil_sqrt(const Rational& q) {
    Integer c = ceil(q);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
    long s = r.get_si();
    while (Rational(s) * s < q) ++s;
    while (s > 0 && Rational(s - 1) * (s - 1) >= q) --s;
    return s;
}

long floor_sqrt(const Rational& q) {
    Integer f = floor(q);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    return r.get_si();
}

}  // namespace

PolyExpr dyadic_decay_poly(int n, int d) {
    if (n < 1 || d < 1) throw InvalidArgument("dyadic_decay_poly needs n, d >= 1");
    const long top = ceil_log2(Rational(n));
    std::vector<PolyExpr> fs;
    Rational at0 = 1;
    for (long i = 0; i <= top; ++i) {
        const Rational two_i(pow2(i));
        const int s = static_cast<int>(ceil_sqrt(Rational(n) / two_i));
        const Rational b = 1 + two_i / n;
        fs.push_back(PolyExpr::compose(PolyExpr::cheb(s), affine(Rational(-1, n), b)));
        at0 *= cheb_eval(s, b);
    }
    PolyExpr t = PolyExpr::power(PolyExpr::product(std::move(fs)), d);
    return PolyExpr::lincomb(Rational(0), {{Rational(1) / pow(at0, d), t}});
}

ReciprocalApprox reciprocal_approx(int d, const Rational& n) {
    if (d < 0) throw InvalidArgument("negative degree");
    if (n <= 1) throw InvalidArgument("reciprocal_approx needs n > 1");
    const Rational h = Rational(2) / (n - 1);
    const Rational top = cheb_eval(d + 1, Rational((n + 1) / (n - 1)));
    RatPoly q = compose(cheb_coeffs(d + 1), RatPoly::linear(-h, 1 + h));
    RatPoly one_minus = RatPoly::constant(Rational(1)) - (Rational(1) / top) * q;
    if (!one_minus.zero() && one_minus[0] != 0) throw Error("reciprocal residual has a nonzero constant");
    std::vector<Rational> c;
    for (int i = 1; i <= one_minus.degree(); ++i) c.push_back(one_minus[static_cast<size_t>(i)]);
    return {RatPoly(std::move(c)), Rational(1) / top};
}

int reciprocal_corollary_degree(const Rational& n) { return static_cast<int>(floor_sqrt(2 * (n - 1))); }

RatPoly reciprocal_corollary(const Rational& n) {
    auto r = reciprocal_approx(reciprocal_corollary_degree(n), n);
    return (Rational(1) / (1 + r.eps)) * r.poly;
}

RatPoly reciprocal_power_in_u(int d, int D) {
    if (d < 1 || D < 0) throw InvalidArgument("reciprocal_power_approx needs d >= 1, D >= 0");
    std::vector<Rational> c;
    for (int i = 0; i <= D; ++i) c.push_back(Rational(binomial(i + d - 1, i)));
    return RatPoly(std::move(c));
}

RatPoly reciprocal_power_approx(int d, int D) {
    return compose(reciprocal_power_in_u(d, D), RatPoly::linear(Rational(-1), Rational(1)));
}

namespace {

BigFloat kl(const BigFloat& a, const BigFloat& b) {
    return a * log(a / b) + (1 - a) * log((1 - a) / (1 - b));
}

}  // namespace

int amplifier_threshold(int d) {
    const long w = kDefaultPrecision;
    BigFloat th = BigFloat::from_double(2.5, w) * exp(BigFloat(-7, w));
    return static_cast<int>(to_long(ceil(th * static_cast<long>(d))));
}

PolyExpr amplifier_poly(int d) {
    if (d < 1) throw InvalidArgument("amplifier needs d >= 1");
    return PolyExpr::binom_tail(d, amplifier_threshold(d));
}

BigFloat amplifier_eps(int d, long prec) {
    const long w = prec + 32;
    BigFloat e7 = exp(BigFloat(-7, w));
    BigFloat th = BigFloat::from_double(2.5, w) * e7;
    BigFloat kappa = min(kl(th, 2 * e7), kl(th, 3 * e7));
    return BigFloat(exp(-(kappa * static_cast<long>(d))), prec);
}

BigFloat binomial_lower_tail(int d, int k, const BigFloat& y) {
    const long p = y.prec();
    if (k <= 0) return BigFloat(0, p);
    if (k > d) return BigFloat(1, p);
    const long w = p + 32 + static_cast<long>(std::ceil(std::log2(d + 2.0)));
    BigFloat yw(y, w), om = 1 - BigFloat(y, w);
    if (om.is_zero()) return BigFloat(0, p);
    BigFloat term = pow(om, d), sum = term;
    const BigFloat ratio = yw / om;
    for (int i = 0; i + 1 < k; ++i) {
        term *= static_cast<long>(d - i);
        term /= static_cast<long>(i + 1);
        term *= ratio;
        sum += term;
    }
    return BigFloat(sum, p);
}

// Q = 477/100 ≥ cosh(2) + 1 ≥ T_s(1 + 2/s²) + 1
Rational indicator_amp_scale() { return rat(477, 100); }
Rational indicator_amp_good() { return Rational(3) / indicator_amp_scale(); }
Rational indicator_amp_bad() { return Rational(2) / indicator_amp_scale(); }
Rational indicator_amp_theta() { return (indicator_amp_good() + indicator_amp_bad()) / 2; }

const double kIndicatorDegreeConstant = 800.0;

namespace {

struct AmpChoice {
    int d, k;
};

bool amp_ok(int d, const BigFloat& target, long prec) {
    const int k = static_cast<int>(ceil(indicator_amp_theta() * d).get_si());
    BigFloat hi = PolyExpr::binom_tail(d, k).eval(BigFloat(indicator_amp_bad(), prec));
    if (hi > target) return false;
    BigFloat lo = binomial_lower_tail(d, k, BigFloat(indicator_amp_good(), prec));
    return lo <= target;
}

// smallest amplifier degree whose tails at the good/bad levels are ≤ eps3,
// memoized on eps3 since the extension sweeps reuse the same targets
AmpChoice choose_amplifier(const Rational& eps3) {
    static std::mutex mu;
    static std::map<Rational, AmpChoice> memo;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = memo.find(eps3);
        if (it != memo.end()) return it->second;
    }
    const long prec = kDefaultPrecision;
    const BigFloat target(eps3, prec);
    int hi = 1;
    while (!amp_ok(hi, target, prec)) {
        if (hi > (1 << 24)) throw Error("amplifier degree search diverged");
        hi *= 2;
    }
    int lo = hi / 2;  // lo fails (or is 0)
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (amp_ok(mid, target, prec)) hi = mid;
        else lo = mid;
    }
    // both tails must also hold at doubled precision
    if (!amp_ok(hi, BigFloat(eps3, 2 * prec), 2 * prec)) throw PrecisionRejected("amplifier tail check unstable");
    AmpChoice c{hi, static_cast<int>(ceil(indicator_amp_theta() * hi).get_si())};
    std::lock_guard<std::mutex> g(mu);
    memo.emplace(eps3, c);
    return c;
}

Rational series_error(int d, int D) {
    if (d == 0) return 0;
    return pow(rat(5, 6), D + 1) * Rational(binomial(D + d, d)) * d;
}

}  // namespace

IntervalIndicator interval_indicator(const Rational& n, int d, const Rational& eps) {
    if (n < 1) throw InvalidArgument("interval_indicator needs n >= 1");
    if (d < 0) throw InvalidArgument("interval_indicator needs d >= 0");
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("interval_indicator needs eps in (0,1/2)");
    IntervalIndicator out;
    out.n = n;
    out.d = d;
    out.eps = eps;
    if (n < 2) {
        out.poly = PolyExpr::constant(Rational(1));
        out.certified = {Rational(0), Rational(1), Rational(0)};
        return out;
    }
    IndicatorParams& P = out.params;
    // smallest D > 5d for which the [0,1] error chain closes
    int D = 5 * d + 1;
    for (;; ++D) {
        Rational e3 = eps / Rational(pow2(D + d));
        Rational e2 = series_error(d, D);
        if ((1 + e3) * (1 + e2) - 1 <= eps) break;
        if (D > 100000) throw Error("truncation order search diverged");
    }
    P.D = D;
    P.eps3 = eps / Rational(pow2(D + d));
    P.series_err = series_error(d, D);

    // p1: reciprocal on [1, n+1], shifted to t ↦ t + 1
    const RatPoly p1 = compose(reciprocal_corollary(n + 1), RatPoly::linear(Rational(1), Rational(1)));
    P.deg_p1 = p1.degree();

    // p3: amplifier of the normalized Chebyshev bump
    P.s = static_cast<int>(ceil_sqrt(n));
    const Rational s2 = Rational(P.s) * P.s;
    const Rational Q = indicator_amp_scale();
    PolyExpr bump = PolyExpr::compose(PolyExpr::cheb(P.s), affine(Rational(-1) / s2, 1 + Rational(2) / s2));
    PolyExpr qstar = PolyExpr::lincomb(Rational(1) / Q, {{Rational(1) / Q, bump}});
    AmpChoice amp = choose_amplifier(P.eps3);
    P.amp_d = amp.d;
    P.amp_k = amp.k;
    PolyExpr p3 = PolyExpr::compose(PolyExpr::binom_tail(amp.d, amp.k), qstar);

    std::vector<PolyExpr> fs;
    if (d > 0) {
        PolyExpr e1 = PolyExpr::mono(p1);
        fs.push_back(PolyExpr::power(e1, d));
        RatPoly u = RatPoly::constant(Rational(1)) - p1;
        fs.push_back(PolyExpr::compose(PolyExpr::mono(reciprocal_power_in_u(d, D)), PolyExpr::mono(u)));
    }
    fs.push_back(p3);
    out.poly = fs.size() == 1 ? fs[0] : PolyExpr::product(std::move(fs));
    out.certified.err_on_01 = (1 + P.eps3) * (1 + P.series_err) - 1;
    out.certified.bound_on_12 = 1 + P.series_err;
    out.certified.decay_const = Rational(binomial(D + d, d)) * P.eps3;
    return out;
}

int single_zero_degree(int n, int m) {
    if (m < 0 || m >= n) throw InvalidArgument("single_zero_factor needs 0 <= m < n");
    const long w = kDefaultPrecision;
    BigFloat v = BigFloat::pi(w) / 4 * sqrt(BigFloat(rat(n, n - m), w));
    return static_cast<int>(to_long(ceil(v)));
}

PolyExpr single_zero_factor(int n, int m, long prec) {
    const int d = single_zero_degree(n, m);
    const long w = prec + 32;
    BigFloat c = (1 - cos(BigFloat::pi(w) / (2L * d))) / static_cast<long>(n - m);
    // L(u) = 1 − c·u with u = n − t exact, so L(n) = 1 exactly
    FloatPoly L = FloatPoly::linear(BigFloat(-c, prec), BigFloat(1, prec));
    PolyExpr lin = PolyExpr::compose(PolyExpr::mono(L), affine(Rational(-1), Rational(n)));
    return PolyExpr::compose(PolyExpr::cheb(d), lin);
}

}  // namespace polyapx
