#include "polyapx/bigfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "polyapx/errors.hpp"

namespace polyapx {

namespace {

mpfr_prec_t check_prec(long prec) {
    if (prec < MPFR_PREC_MIN || prec > (1L << 24)) throw InvalidArgument("bad precision");
    return static_cast<mpfr_prec_t>(prec);
}

long wider(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

BigFloat::BigFloat() {
    mpfr_init2(v_, kDefaultPrecision);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& x, long prec) {
    mpfr_init2(v_, check_prec(prec));
    mpfr_set(v_, x.v_, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_double(double v, long prec) {
    BigFloat r(0, prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::parse(const std::string& s, long prec) {
    BigFloat r(0, prec);
    if (mpfr_set_str(r.v_, s.c_str(), 0, MPFR_RNDN) != 0)
        throw InvalidArgument("bad float literal: " + s);
    return r;
}

BigFloat BigFloat::pi(long prec) {
    BigFloat r(0, prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

Rational BigFloat::to_rational() const {
    if (!is_finite()) throw InvalidArgument("non-finite value has no rational form");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string BigFloat::to_hex() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string BigFloat::to_decimal(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

long BigFloat::exponent() const {
    if (is_zero()) return std::numeric_limits<long>::min() / 4;
    return static_cast<long>(mpfr_get_exp(v_));
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { return *this = *this + o; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { return *this = *this - o; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { return *this = *this * o; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { return *this = *this / o; }

BigFloat& BigFloat::operator*=(long v) {
    mpfr_mul_si(v_, v_, v, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(long v) {
    mpfr_div_si(v_, v_, v, MPFR_RNDN);
    return *this;
}

BigFloat operator-(const BigFloat& a) {
    BigFloat r(0, a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator+(const BigFloat& a, long b) {
    BigFloat r(0, a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, long b) {
    BigFloat r(0, a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigFloat operator-(long a, const BigFloat& b) {
    BigFloat r(0, b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, long b) {
    BigFloat r(0, a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, long b) {
    BigFloat r(0, a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigFloat operator/(long a, const BigFloat& b) {
    BigFloat r(0, b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

#define POLYAPX_UNARY(name, fn)                 \
    BigFloat name(const BigFloat& x) {          \
        BigFloat r(0, x.prec());                \
        fn(r.raw(), x.raw(), MPFR_RNDN);        \
        return r;                               \
    }

POLYAPX_UNARY(abs, mpfr_abs)
POLYAPX_UNARY(sqrt, mpfr_sqrt)
POLYAPX_UNARY(cos, mpfr_cos)
POLYAPX_UNARY(acos, mpfr_acos)
POLYAPX_UNARY(cosh, mpfr_cosh)
POLYAPX_UNARY(acosh, mpfr_acosh)
POLYAPX_UNARY(exp, mpfr_exp)
POLYAPX_UNARY(log, mpfr_log)
POLYAPX_UNARY(log2, mpfr_log2)
#undef POLYAPX_UNARY

BigFloat pow(const BigFloat& x, long e) {
    BigFloat r(0, x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r(0, wider(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
    BigFloat r(0, x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigFloat floor(const BigFloat& x) {
    BigFloat r(0, x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

BigFloat ceil(const BigFloat& x) {
    BigFloat r(0, x.prec());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

long to_long(const BigFloat& x) {
    if (!x.is_integer() || !mpfr_fits_slong_p(x.raw(), MPFR_RNDN))
        throw InvalidArgument("value is not a representable integer");
    return mpfr_get_si(x.raw(), MPFR_RNDN);
}

bool agrees_at_half_precision(const BigFloat& a, const BigFloat& b) {
    long p = std::min(a.prec(), b.prec());
    if (!a.is_finite() || !b.is_finite()) return false;
    long w = 2 * p + 64;
    BigFloat diff = abs(BigFloat(a, w) - BigFloat(b, w));
    BigFloat scale = max(max(abs(BigFloat(a, w)), abs(BigFloat(b, w))), ldexp(BigFloat(1, w), -(p / 2)));
    return diff <= ldexp(scale, -(p / 2));
}

}  // namespace polyapx
