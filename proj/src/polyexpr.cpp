#include "polyapx/polyexpr.hpp"

#include <cmath>

#include "polyapx/chebyshev.hpp"

namespace polyapx {

struct PolyExpr::Node {
    Kind kind = Kind::Mono;
    RatPoly rp;
    FloatPoly fp;
    int d = 0;
    int k = 0;
    std::vector<PolyExpr> kids;
    std::vector<Coef> coefs;
    int deg = -1;
    bool exact = true;
    long prec = 0;
    // per-coefficient log2|a_i| for Mono leaves, used to size guard bits
    std::vector<double> lg;
};

namespace {

using Node = PolyExpr::Node;

double log2_abs(const Rational& q) {
    if (q == 0) return -1e300;
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(en - ed);
}

double log2_abs(const BigFloat& x) {
    if (x.is_zero()) return -1e300;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// bits lost to cancellation when summing a_i t^i, relative to an O(1) result
long guard_bits(const std::vector<double>& lg, const BigFloat& t) {
    double lt = std::max(0.0, log2_abs(t));
    double m = 0;
    for (size_t i = 0; i < lg.size(); ++i) m = std::max(m, lg[i] + lt * static_cast<double>(i));
    return 32 + static_cast<long>(std::ceil(m + std::log2(static_cast<double>(lg.size()) + 1)));
}

std::shared_ptr<Node> make(PolyExpr::Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

bool coef_exact(const Coef& c) { return std::holds_alternative<Rational>(c); }

bool coef_zero(const Coef& c) {
    return std::visit([](const auto& v) { return is_zero(v); }, c);
}

long coef_prec(const Coef& c) {
    return coef_exact(c) ? 0 : std::get<BigFloat>(c).prec();
}

Rational binom_tail_exact(int d, int k, const Rational& y) {
    Rational s = 0;
    for (int i = std::max(k, 0); i <= d; ++i)
        s += Rational(binomial(d, i)) * pow(y, i) * pow(Rational(1 - y), d - i);
    return s;
}

BigFloat binom_tail_float(int d, int k, const BigFloat& y) {
    const long p = y.prec();
    if (k <= 0) return BigFloat(1, p);
    if (k > d) return BigFloat(0, p);
    if (y.is_zero()) return BigFloat(0, p);
    if (cmp(y, 1) == 0) return BigFloat(1, p);
    if (y > 0 && y < 1) {
        // terms positive; ratio recurrence with a rigorous early stop past the mode
        const long w = p + 32 + static_cast<long>(std::ceil(std::log2(static_cast<double>(d) + 2)));
        BigFloat yw(y, w);
        BigFloat om = 1 - yw;
        BigFloat ratio = yw / om;
        BigFloat term = BigFloat(Rational(binomial(d, k)), w) * pow(yw, k) * pow(om, d - k);
        BigFloat sum = term;
        const double mode = (d + 1) * y.to_double();
        for (int i = k; i < d; ++i) {
            term *= static_cast<long>(d - i);
            term /= static_cast<long>(i + 1);
            term *= ratio;
            sum += term;
            if (i + 1 > mode && !term.is_zero()) {
                BigFloat rho = ratio * static_cast<long>(d - i - 1) / static_cast<long>(i + 2);
                if (rho < 1) {
                    BigFloat tail = term * rho / (1 - rho);
                    if (tail <= ldexp(sum, -(w + 8))) break;
                }
            }
        }
        return BigFloat(sum, p);
    }
    // outside [0,1] the terms alternate in sign; pay for the cancellation
    double spread = std::log2(std::fabs(y.to_double()) + std::fabs(1 - y.to_double()));
    const long w = p + 64 + static_cast<long>(std::ceil(d * std::max(spread, 0.0)));
    BigFloat yw(y, w), om = 1 - BigFloat(y, w);
    BigFloat sum(0, w);
    for (int i = k; i <= d; ++i) sum += BigFloat(Rational(binomial(d, i)), w) * pow(yw, i) * pow(om, d - i);
    return BigFloat(sum, p);
}

RatPoly binom_tail_poly(int d, int k) {
    RatPoly s;
    const RatPoly t = RatPoly::linear(Rational(1), Rational(0));
    const RatPoly om = RatPoly::linear(Rational(-1), Rational(1));
    for (int i = std::max(k, 0); i <= d; ++i)
        s = s + Rational(binomial(d, i)) * (pow(t, i) * pow(om, d - i));
    return s;
}

}  // namespace

PolyExpr::PolyExpr() : n_(make(Kind::Mono)) {}

PolyExpr PolyExpr::constant(const Rational& c) { return mono(RatPoly::constant(c)); }

PolyExpr PolyExpr::constant(const BigFloat& c) { return mono(FloatPoly::constant(c)); }

PolyExpr PolyExpr::identity() { return mono(RatPoly::linear(Rational(1), Rational(0))); }

PolyExpr PolyExpr::mono(RatPoly p) {
    auto n = make(Kind::Mono);
    n->deg = p.degree();
    for (const auto& a : p.coeffs()) n->lg.push_back(log2_abs(a));
    n->rp = std::move(p);
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::mono(FloatPoly p) {
    auto n = make(Kind::MonoF);
    n->deg = p.degree();
    n->exact = false;
    for (const auto& a : p.coeffs()) {
        if (n->prec != 0 && a.prec() != n->prec) throw BackendMismatch("mixed coefficient precisions");
        n->prec = a.prec();
        n->lg.push_back(log2_abs(a));
    }
    n->fp = std::move(p);
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::cheb(int d) {
    if (d < 0) throw InvalidArgument("negative Chebyshev degree");
    auto n = make(Kind::Cheb);
    n->d = d;
    n->deg = d;
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::binom_tail(int d, int k) {
    if (d < 0) throw InvalidArgument("negative binomial-tail degree");
    auto n = make(Kind::BinomTail);
    n->d = d;
    n->k = k;
    n->deg = k > d ? -1 : (k <= 0 ? 0 : d);
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::compose(const PolyExpr& outer, const PolyExpr& inner) {
    auto n = make(Kind::Compose);
    int od = outer.degree(), id = std::max(inner.degree(), 0);
    n->deg = od <= 0 ? od : od * id;
    n->exact = outer.exact() && inner.exact();
    n->prec = std::max(outer.precision(), inner.precision());
    n->kids = {outer, inner};
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::product(std::vector<PolyExpr> factors) {
    auto n = make(Kind::Product);
    n->deg = 0;
    for (const auto& f : factors) {
        if (f.degree() < 0) n->deg = -1;
        else if (n->deg >= 0) n->deg += f.degree();
        n->exact = n->exact && f.exact();
        n->prec = std::max(n->prec, f.precision());
    }
    n->kids = std::move(factors);
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::power(const PolyExpr& base, int e) {
    if (e < 0) throw InvalidArgument("negative power");
    auto n = make(Kind::Power);
    n->k = e;
    n->deg = e == 0 ? 0 : (base.degree() < 0 ? -1 : base.degree() * e);
    n->exact = base.exact();
    n->prec = base.precision();
    n->kids = {base};
    return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::lincomb(const Coef& c0, std::vector<std::pair<Coef, PolyExpr>> terms) {
    auto n = make(Kind::LinComb);
    n->coefs.push_back(c0);
    n->deg = coef_zero(c0) ? -1 : 0;
    n->exact = coef_exact(c0);
    n->prec = coef_prec(c0);
    for (auto& [c, f] : terms) {
        if (!coef_zero(c)) n->deg = std::max(n->deg, f.degree());
        n->exact = n->exact && coef_exact(c) && f.exact();
        n->prec = std::max({n->prec, coef_prec(c), f.precision()});
        n->coefs.push_back(c);
        n->kids.push_back(f);
    }
    return PolyExpr(std::move(n));
}

PolyExpr::Kind PolyExpr::kind() const { return n_->kind; }
int PolyExpr::degree() const { return n_->deg; }
bool PolyExpr::exact() const { return n_->exact; }
long PolyExpr::precision() const { return n_->prec; }
const RatPoly& PolyExpr::rat_poly() const { return n_->rp; }
const FloatPoly& PolyExpr::float_poly() const { return n_->fp; }
int PolyExpr::param_d() const { return n_->d; }
int PolyExpr::param_k() const { return n_->k; }
const std::vector<PolyExpr>& PolyExpr::children() const { return n_->kids; }
const std::vector<Coef>& PolyExpr::coefs() const { return n_->coefs; }

BigFloat PolyExpr::eval(const BigFloat& t) const {
    const Node& n = *n_;
    const long p = t.prec();
    switch (n.kind) {
        case Kind::Mono: {
            if (n.rp.zero()) return BigFloat(0, p);
            if (t.is_integer() && n.deg <= 64) return BigFloat(n.rp.eval(t.to_rational()), p);
            const long w = p + guard_bits(n.lg, t);
            BigFloat tw(t, w);
            BigFloat acc(n.rp.leading(), w);
            for (int i = n.deg - 1; i >= 0; --i) {
                acc *= tw;
                acc += BigFloat(n.rp[static_cast<size_t>(i)], w);
            }
            return BigFloat(acc, p);
        }
        case Kind::MonoF: {
            if (n.fp.zero()) return BigFloat(0, p);
            // stored coefficients widen exactly; narrowing would silently lose digits
            if (p < n.prec) throw BackendMismatch("argument precision below float leaf precision");
            const long w = p + guard_bits(n.lg, t);
            BigFloat tw(t, w);
            BigFloat acc(n.fp.leading(), w);
            for (int i = n.deg - 1; i >= 0; --i) {
                acc *= tw;
                acc += n.fp[static_cast<size_t>(i)];
            }
            return BigFloat(acc, p);
        }
        case Kind::Cheb: {
            long g = 16 + 2 * static_cast<long>(std::ceil(std::log2(n.d + 2.0)));
            return BigFloat(cheb_eval(n.d, BigFloat(t, p + g)), p);
        }
        case Kind::BinomTail:
            return binom_tail_float(n.d, n.k, t);
        case Kind::Compose:
            return n.kids[0].eval(n.kids[1].eval(t));
        case Kind::Product: {
            BigFloat acc(1, p);
            for (const auto& f : n.kids) {
                acc *= f.eval(t);
                if (acc.is_zero()) break;
            }
            return acc;
        }
        case Kind::Power:
            return pow(n.kids[0].eval(t), n.k);
        case Kind::LinComb: {
            BigFloat acc = coef_float(n.coefs[0], p);
            for (size_t i = 0; i < n.kids.size(); ++i) {
                if (coef_zero(n.coefs[i + 1])) continue;
                acc += coef_float(n.coefs[i + 1], p) * n.kids[i].eval(t);
            }
            return BigFloat(acc, p);
        }
    }
    return BigFloat(0, p);
}

Rational PolyExpr::eval(const Rational& t) const {
    if (!exact()) throw BackendMismatch("float-backed expression evaluated at an exact argument");
    const Node& n = *n_;
    switch (n.kind) {
        case Kind::Mono:
            return n.rp.eval(t);
        case Kind::Cheb:
            return cheb_eval(n.d, t);
        case Kind::BinomTail:
            return binom_tail_exact(n.d, n.k, t);
        case Kind::Compose:
            return n.kids[0].eval(n.kids[1].eval(t));
        case Kind::Product: {
            Rational acc = 1;
            for (const auto& f : n.kids) {
                acc *= f.eval(t);
                if (acc == 0) break;
            }
            return acc;
        }
        case Kind::Power:
            return pow(n.kids[0].eval(t), n.k);
        case Kind::LinComb: {
            Rational acc = std::get<Rational>(n.coefs[0]);
            for (size_t i = 0; i < n.kids.size(); ++i)
                acc += std::get<Rational>(n.coefs[i + 1]) * n.kids[i].eval(t);
            return acc;
        }
        case Kind::MonoF:
            break;
    }
    throw BackendMismatch("float leaf in exact evaluation");
}

RatPoly PolyExpr::expand_exact() const {
    if (!exact()) throw BackendMismatch("cannot expand a float-backed expression exactly");
    const Node& n = *n_;
    switch (n.kind) {
        case Kind::Mono:
            return n.rp;
        case Kind::Cheb:
            return cheb_coeffs(n.d);
        case Kind::BinomTail:
            return binom_tail_poly(n.d, n.k);
        case Kind::Compose:
            return polyapx::compose(n.kids[0].expand_exact(), n.kids[1].expand_exact());
        case Kind::Product: {
            RatPoly acc = RatPoly::constant(Rational(1));
            for (const auto& f : n.kids) acc = acc * f.expand_exact();
            return acc;
        }
        case Kind::Power:
            return pow(n.kids[0].expand_exact(), n.k);
        case Kind::LinComb: {
            RatPoly acc = RatPoly::constant(std::get<Rational>(n.coefs[0]));
            for (size_t i = 0; i < n.kids.size(); ++i)
                acc = acc + std::get<Rational>(n.coefs[i + 1]) * n.kids[i].expand_exact();
            return acc;
        }
        case Kind::MonoF:
            break;
    }
    throw BackendMismatch("float leaf in exact expansion");
}

FloatPoly PolyExpr::expand_float(long prec) const {
    const Node& n = *n_;
    switch (n.kind) {
        case Kind::Mono:
            return to_float(n.rp, prec);
        case Kind::MonoF: {
            std::vector<BigFloat> c;
            for (const auto& a : n.fp.coeffs()) c.emplace_back(a, prec);
            return FloatPoly(std::move(c));
        }
        case Kind::Cheb:
            return to_float(cheb_coeffs(n.d), prec);
        case Kind::BinomTail:
            return to_float(binom_tail_poly(n.d, n.k), prec);
        case Kind::Compose:
            return polyapx::compose(n.kids[0].expand_float(prec), n.kids[1].expand_float(prec));
        case Kind::Product: {
            FloatPoly acc = FloatPoly::constant(BigFloat(1, prec));
            for (const auto& f : n.kids) acc = acc * f.expand_float(prec);
            return acc;
        }
        case Kind::Power:
            return pow(n.kids[0].expand_float(prec), n.k);
        case Kind::LinComb: {
            FloatPoly acc = FloatPoly::constant(coef_float(n.coefs[0], prec));
            for (size_t i = 0; i < n.kids.size(); ++i)
                acc = acc + coef_float(n.coefs[i + 1], prec) * n.kids[i].expand_float(prec);
            return acc;
        }
    }
    return {};
}

PolyExpr affine(const Rational& a, const Rational& b) { return PolyExpr::mono(RatPoly::linear(a, b)); }

Coef coef_abs(const Coef& c) {
    return std::visit([](const auto& v) -> Coef { return abs(v); }, c);
}

BigFloat coef_float(const Coef& c, long prec) {
    if (coef_exact(c)) return BigFloat(std::get<Rational>(c), prec);
    const BigFloat& x = std::get<BigFloat>(c);
    if (x.prec() != prec) throw BackendMismatch("float coefficient precision differs from argument precision");
    return x;
}

}  // namespace polyapx
