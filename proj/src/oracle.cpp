#include "polyapx/oracle.hpp"

#include <algorithm>
#include <set>

namespace polyapx {

namespace {

// Dense-tableau simplex for max c·z, A z = b, z ≥ 0 with b ≥ 0. Artificial
// columns stay in the tableau so B^{-1} (and the duals) can be read off.
class Simplex {
public:
    Simplex(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b)
        : m_(A.size()), n_(A.empty() ? 0 : A[0].size()), T_(m_, std::vector<Rational>(n_ + m_ + 1)), basis_(m_) {
        for (size_t i = 0; i < m_; ++i) {
            for (size_t j = 0; j < n_; ++j) T_[i][j] = A[i][j];
            T_[i][n_ + i] = 1;
            T_[i][n_ + m_] = b[i];
            basis_[i] = n_ + i;
        }
    }

    // returns the optimal value of max c·z and fills duals y = c_B B^{-1}
    Rational solve(const std::vector<Rational>& c, std::vector<Rational>& y) {
        std::vector<Rational> c1(n_ + m_, Rational(0));
        for (size_t i = 0; i < m_; ++i) c1[n_ + i] = -1;
        run(c1, n_ + m_);
        if (value(c1) != 0) throw Error("LP infeasible");
        // drive zero-level artificials out of the basis where possible
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (size_t j = 0; j < n_; ++j)
                if (T_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
        }
        std::vector<Rational> c2(n_ + m_, Rational(0));
        for (size_t j = 0; j < n_; ++j) c2[j] = c[j];
        run(c2, n_);
        y.assign(m_, Rational(0));
        for (size_t r = 0; r < m_; ++r)
            for (size_t k = 0; k < m_; ++k) y[r] += c2[basis_[k]] * T_[k][n_ + r];
        return value(c2);
    }

private:
    Rational value(const std::vector<Rational>& c) const {
        Rational v = 0;
        for (size_t k = 0; k < m_; ++k) v += c[basis_[k]] * T_[k][n_ + m_];
        return v;
    }

    // Bland: lowest-index improving column, ratio ties to the lowest basic index
    void run(const std::vector<Rational>& c, size_t allowed) {
        for (;;) {
            size_t enter = allowed;
            for (size_t j = 0; j < allowed && enter == allowed; ++j) {
                Rational rc = c[j];
                for (size_t k = 0; k < m_; ++k)
                    if (T_[k][j] != 0) rc -= c[basis_[k]] * T_[k][j];
                if (rc > 0) enter = j;
            }
            if (enter == allowed) return;
            size_t leave = m_;
            Rational best;
            for (size_t i = 0; i < m_; ++i) {
                if (T_[i][enter] <= 0) continue;
                Rational r = T_[i][n_ + m_] / T_[i][enter];
                if (leave == m_ || r < best || (r == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = r;
                }
            }
            if (leave == m_) throw Error("LP unbounded");
            pivot(leave, enter);
        }
    }

    void pivot(size_t r, size_t c) {
        const Rational p = T_[r][c];
        for (auto& v : T_[r]) v /= p;
        for (size_t i = 0; i < m_; ++i) {
            if (i == r || T_[i][c] == 0) continue;
            const Rational f = T_[i][c];
            for (size_t j = 0; j < T_[i].size(); ++j)
                if (T_[r][j] != 0) T_[i][j] -= f * T_[r][j];
        }
        basis_[r] = c;
    }

    size_t m_, n_;
    std::vector<std::vector<Rational>> T_;
    std::vector<size_t> basis_;
};

void fill_active(MinimaxResult& out, const std::vector<std::pair<Rational, Rational>>& values) {
    out.eps_star = 0;
    std::vector<Rational> err;
    for (const auto& [x, f] : values) err.push_back(out.coeffs.eval(x) - f);
    for (const auto& e : err) out.eps_star = std::max(out.eps_star, abs(e));
    std::vector<size_t> order(values.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a].first < values[b].first; });
    for (size_t i : order)
        if (abs(err[i]) == out.eps_star) {
            out.active_points.push_back(static_cast<int>(i));
            out.active_signs.push_back(sign(err[i]));
        }
}

}  // namespace

int MinimaxResult::alternation() const {
    if (active_signs.empty()) return 0;
    int run = 1, last = active_signs[0];
    for (size_t i = 1; i < active_signs.size(); ++i)
        if (active_signs[i] != last && active_signs[i] != 0) {
            ++run;
            last = active_signs[i];
        }
    return run;
}

BasisMinimax minimax_lp_basis(const std::vector<std::vector<Rational>>& basis_values, const std::vector<Rational>& targets) {
    const size_t N = targets.size();
    if (N == 0 || basis_values.size() != N) throw InvalidArgument("minimax_lp_basis needs one basis row per target");
    const size_t K = basis_values[0].size();
    for (const auto& row : basis_values)
        if (row.size() != K) throw InvalidArgument("ragged basis matrix");
    // dual: max Σ f_i(u_i − v_i) s.t. Σ(u_i + v_i) = 1, Bᵀ(u − v) = 0, u, v ≥ 0;
    // its multipliers are (eps, coefficients)
    std::vector<std::vector<Rational>> A(K + 1, std::vector<Rational>(2 * N));
    std::vector<Rational> c(2 * N), b(K + 1, Rational(0));
    b[0] = 1;
    for (size_t i = 0; i < N; ++i) {
        A[0][i] = A[0][N + i] = 1;
        for (size_t j = 0; j < K; ++j) {
            A[j + 1][i] = basis_values[i][j];
            A[j + 1][N + i] = -basis_values[i][j];
        }
        c[i] = targets[i];
        c[N + i] = -targets[i];
    }
    Simplex lp(A, b);
    std::vector<Rational> y;
    BasisMinimax out;
    out.eps_star = lp.solve(c, y);
    out.coeffs.assign(y.begin() + 1, y.end());
    Rational worst = 0;
    for (size_t i = 0; i < N; ++i) {
        Rational v = 0;
        for (size_t j = 0; j < K; ++j) v += out.coeffs[j] * basis_values[i][j];
        worst = std::max(worst, Rational(abs(v - targets[i])));
    }
    if (worst != out.eps_star) throw Error("minimax LP: primal and dual values disagree");
    return out;
}

MinimaxResult minimax_lp(const std::vector<std::pair<Rational, Rational>>& values, int d) {
    if (d < 0) throw InvalidArgument("negative degree");
    if (values.empty()) throw InvalidArgument("empty point set");
    {
        std::set<Rational> seen;
        for (const auto& v : values)
            if (!seen.insert(v.first).second) throw RepeatedNode("repeated node in minimax_lp");
    }
    MinimaxResult out;
    out.d = d;
    const size_t N = values.size();
    if (static_cast<size_t>(d) + 1 >= N) {
        std::vector<Rational> xs, fs;
        for (const auto& [x, f] : values) {
            xs.push_back(x);
            fs.push_back(f);
        }
        out.coeffs = lagrange_interpolate(xs, fs);
        fill_active(out, values);
        return out;
    }
    // solve in x = (2t − a − b)/(b − a) ∈ [−1,1] to keep the tableau small
    Rational lo = values[0].first, hi = values[0].first;
    for (const auto& v : values) {
        lo = std::min(lo, v.first);
        hi = std::max(hi, v.first);
    }
    const Rational sa = 2 / (hi - lo), sb = -(hi + lo) / (hi - lo);
    std::vector<std::vector<Rational>> B(N);
    std::vector<Rational> f(N);
    for (size_t i = 0; i < N; ++i) {
        const Rational x = sa * values[i].first + sb;
        Rational pw = 1;
        for (int j = 0; j <= d; ++j, pw *= x) B[i].push_back(pw);
        f[i] = values[i].second;
    }
    const BasisMinimax g = minimax_lp_basis(B, f);
    const Rational opt = g.eps_star;
    out.coeffs = compose(RatPoly(g.coeffs), RatPoly::linear(sa, sb));
    fill_active(out, values);
    if (out.eps_star != opt) throw Error("minimax LP: primal and dual values disagree");
    return out;
}

MinimaxResult minimax_lp(const std::vector<Rational>& spectrum, int d) {
    std::vector<std::pair<Rational, Rational>> v;
    for (size_t t = 0; t < spectrum.size(); ++t) v.emplace_back(Rational(static_cast<long>(t)), spectrum[t]);
    return minimax_lp(v, d);
}

int deg_eps(const std::vector<Rational>& spectrum, const Rational& eps) {
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");
    int lo = -1, hi = static_cast<int>(spectrum.size()) - 1;  // E(hi) = 0
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (minimax_lp(spectrum, mid).eps_star <= eps) hi = mid;
        else lo = mid;
    }
    return hi;
}

int InclExcl::eval(size_t point) const {
    int s = 0;
    for (const auto& [sg, S] : terms) {
        int any = 0;
        for (size_t i = 0; i < fs.size(); ++i)
            if ((S >> i) & 1U) any |= fs[i][point];
        s += sg * any;
    }
    return s;
}

InclExcl incl_excl_expand(const std::vector<std::vector<int>>& truth_tables) {
    if (truth_tables.empty() || truth_tables.size() > 16) throw InvalidArgument("need 1..16 functions");
    for (const auto& t : truth_tables)
        if (t.size() != truth_tables[0].size()) throw InvalidArgument("truth tables need a common domain");
    InclExcl out;
    out.fs = truth_tables;
    const uint32_t full = (1U << truth_tables.size()) - 1;
    for (uint32_t S = 1; S <= full; ++S) out.terms.emplace_back(__builtin_popcount(S) % 2 ? 1 : -1, S);
    return out;
}

}  // namespace polyapx
