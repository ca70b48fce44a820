#include "polyapx/rational.hpp"

#include "polyapx/errors.hpp"

namespace polyapx {

Rational rat(long num, long den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty rational");
    auto dot = s.find('.');
    auto slash = s.find('/');
    try {
        if (dot != std::string::npos && slash == std::string::npos) {
            // decimal literal, exact
            std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
            bool neg = !whole.empty() && whole[0] == '-';
            if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
            if (whole.empty()) whole = "0";
            for (char c : whole + frac)
                if (c < '0' || c > '9') throw InvalidArgument("bad decimal: " + s);
            Integer num(whole + frac, 10);
            Integer den = 1;
            for (size_t i = 0; i < frac.size(); ++i) den *= 10;
            Rational q = rat(num, den);
            return neg ? Rational(-q) : q;
        }
        Rational q(s, 10);
        if (q.get_den() == 0) throw InvalidArgument("zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("bad rational: " + s);
    }
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0) throw InvalidArgument("0 to a negative power");
        return pow(Rational(1 / q), -e);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);  // already coprime
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

int sign(const Rational& q) { return sgn(q); }

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer pow2(long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r;
}

long ceil_log2(const Rational& q) {
    if (q <= 0) throw InvalidArgument("ceil_log2 of nonpositive value");
    // smallest e with 2^e >= q
    long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 2;
    auto pw = [](long k) {
        return k >= 0 ? Rational(pow2(k)) : Rational(Integer(1), pow2(-k));
    };
    while (pw(e) < q) ++e;
    while (pw(e - 1) >= q) --e;
    return e;
}

}  // namespace polyapx
