#include <algorithm>

#include "polyapx/oracle.hpp"

namespace polyapx {

int MultilinearPoly::degree() const {
    int d = -1;
    for (const auto& [S, c] : coef)
        if (c != 0) d = std::max(d, __builtin_popcount(S));
    return d;
}

Rational MultilinearPoly::norm() const {
    Rational s = 0;
    for (const auto& [S, c] : coef) s += abs(c);
    return s;
}

Rational MultilinearPoly::eval(uint32_t x) const {
    Rational s = 0;
    for (const auto& [S, c] : coef)
        if ((S & ~x) == 0) s += c;
    return s;
}

Rational MultilinearPoly::eval(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (const auto& [S, c] : coef) {
        Rational m = c;
        for (int i = 0; i < N && m != 0; ++i)
            if ((S >> i) & 1U) m *= x[static_cast<size_t>(i)];
        s += m;
    }
    return s;
}

MultilinearPoly multilinear_interpolant(int N, int n, const BoolFn& f) {
    if (N < 0 || N > 20) throw InvalidArgument("multilinear_interpolant needs N <= 20");
    if (n < 0) throw InvalidArgument("negative weight bound");
    n = std::min(n, N);
    const uint32_t size = 1U << N;
    std::vector<uint32_t> order;
    for (uint32_t a = 0; a < size; ++a)
        if (__builtin_popcount(a) <= n) order.push_back(a);
    std::stable_sort(order.begin(), order.end(),
                     [](uint32_t a, uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    // p_k = p_{k−1} + Σ_{|a|=k} (f(a) − p_{k−1}(a)) ∏_{i∈a} x_i
    std::vector<Rational> c(size, Rational(0));
    for (uint32_t a : order) {
        Rational below = 0;
        for (uint32_t S = (a - 1) & a;; S = (S - 1) & a) {
            if (S != a) below += c[S];
            if (S == 0) break;
        }
        c[a] = f(a) - below;
    }
    MultilinearPoly p;
    p.N = N;
    for (uint32_t a : order)
        if (c[a] != 0) p.coef[a] = c[a];
    return p;
}

int BlockPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : coef) {
        int s = 0;
        for (int x : e) s += x;
        if (c != 0) d = std::max(d, s);
    }
    return d;
}

Rational BlockPoly::eval(const std::vector<Rational>& w) const {
    Rational s = 0;
    for (const auto& [e, c] : coef) {
        Rational m = c;
        for (size_t b = 0; b < e.size(); ++b) m *= pow(w[b], e[b]);
        s += m;
    }
    return s;
}

// Averaging a monomial with s_b variables in block b over all inputs of block
// weights t_b gives ∏_b C(t_b, s_b)/C(n_b, s_b).
BlockPoly symmetrize(const MultilinearPoly& phi, const std::vector<int>& block_sizes) {
    int total = 0;
    for (int s : block_sizes) {
        if (s < 0) throw InvalidArgument("negative block size");
        total += s;
    }
    if (total != phi.N) throw InvalidArgument("blocks must partition the variables");
    const size_t k = block_sizes.size();
    std::map<std::vector<int>, Rational> by_counts;
    for (const auto& [S, c] : phi.coef) {
        std::vector<int> cnt(k, 0);
        int start = 0;
        for (size_t b = 0; b < k; ++b) {
            for (int i = start; i < start + block_sizes[b]; ++i)
                if ((S >> i) & 1U) ++cnt[b];
            start += block_sizes[b];
        }
        by_counts[cnt] += c;
    }
    BlockPoly out;
    out.block_sizes = block_sizes;
    for (const auto& [cnt, c] : by_counts) {
        if (c == 0) continue;
        std::map<std::vector<int>, Rational> acc{{std::vector<int>(k, 0), c}};
        for (size_t b = 0; b < k; ++b) {
            const RatPoly u = (Rational(1) / Rational(binomial(block_sizes[b], cnt[b]))) * binomial_poly(cnt[b]);
            std::map<std::vector<int>, Rational> next;
            for (const auto& [e, v] : acc)
                for (int j = 0; j <= u.degree(); ++j) {
                    if (u[static_cast<size_t>(j)] == 0) continue;
                    auto e2 = e;
                    e2[b] = j;
                    next[e2] += v * u[static_cast<size_t>(j)];
                }
            acc = std::move(next);
        }
        for (const auto& [e, v] : acc) out.coef[e] += v;
    }
    for (auto it = out.coef.begin(); it != out.coef.end();) it = it->second == 0 ? out.coef.erase(it) : std::next(it);
    return out;
}

RatPoly symmetrize_univariate(const MultilinearPoly& phi) {
    BlockPoly b = symmetrize(phi, {phi.N});
    std::vector<Rational> c(static_cast<size_t>(std::max(b.degree() + 1, 0)), Rational(0));
    for (const auto& [e, v] : b.coef) c[static_cast<size_t>(e[0])] = v;
    return RatPoly(std::move(c));
}

}  // namespace polyapx
