#pragma once

#include <doctest.h>

#include <vector>

#include "polyapx/rational.hpp"
#include "polyapx/rng.hpp"

namespace testutil {

using polyapx::Rational;

inline Rational q(long a, long b = 1) { return polyapx::rat(a, b); }

// naive Σ c_i t^i, independent of the library's Horner loop
inline Rational eval_naive(const std::vector<Rational>& c, const Rational& t) {
    Rational s = 0, pw = 1;
    for (const auto& a : c) {
        s += a * pw;
        pw *= t;
    }
    return s;
}

inline Rational binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (long i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
    return r;
}

// solve A x = b exactly by Gauss–Jordan; A square and nonsingular
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (A[p][c] == 0) ++p;
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            const Rational f = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (size_t i = 0; i < n; ++i) b[i] /= A[i][i];
    return b;
}

inline std::vector<Rational> random_coeffs(polyapx::Rng& rng, int d, long span = 20) {
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(Rational(rng.range(-span, span), rng.range(1, 9)));
    c.back() = c.back() == 0 ? Rational(1) : c.back();
    for (auto& x : c) x.canonicalize();
    return c;
}

}  // namespace testutil
