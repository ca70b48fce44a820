#pragma once

#include <mpfr.h>

#include <string>

#include "polyapx/rational.hpp"

namespace polyapx {

constexpr long kDefaultPrecision = 256;

// Owning MPFR value with its own precision. Binary operations round to the
// larger of the two operand precisions, to nearest.
class BigFloat {
public:
    BigFloat();
    BigFloat(long v, long prec);
    BigFloat(const Rational& q, long prec);
    BigFloat(const BigFloat& x, long prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_double(double v, long prec);
    // accepts hex-float ("0x1.8p+1"), decimal, "inf", "nan"
    static BigFloat parse(const std::string& s, long prec);
    static BigFloat pi(long prec);

    long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    double to_double() const;
    Rational to_rational() const;  // exact
    std::string to_hex() const;    // lossless
    std::string to_decimal(int digits = 20) const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    long exponent() const;  // x = m·2^e with m in [1/2,1); 0 maps to a very negative value

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    BigFloat& operator*=(long v);
    BigFloat& operator/=(long v);

    friend BigFloat operator-(const BigFloat& a);
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator+(const BigFloat& a, long b);
    friend BigFloat operator-(const BigFloat& a, long b);
    friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
    friend BigFloat operator-(long a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, long b);
    friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
    friend BigFloat operator/(const BigFloat& a, long b);
    friend BigFloat operator/(long a, const BigFloat& b);

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend int cmp(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, long b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, long b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, long b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, long b) { return cmp(a, b) >= 0; }

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat acos(const BigFloat& x);
BigFloat cosh(const BigFloat& x);
BigFloat acosh(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log2(const BigFloat& x);
BigFloat pow(const BigFloat& x, long e);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat floor(const BigFloat& x);
BigFloat ceil(const BigFloat& x);
const BigFloat& max(const BigFloat& a, const BigFloat& b);
const BigFloat& min(const BigFloat& a, const BigFloat& b);
long to_long(const BigFloat& x);  // x must be an integer in range

// |a−b| ≤ 2^(−P/2)·max(|a|, |b|, 2^(−P/2)) with P = min precision of the pair
bool agrees_at_half_precision(const BigFloat& a, const BigFloat& b);

}  // namespace polyapx
