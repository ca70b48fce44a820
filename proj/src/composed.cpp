#include "polyapx/composed.hpp"

#include <algorithm>
#include <cmath>

#include "polyapx/blocks.hpp"
#include "polyapx/chebyshev.hpp"
#include "polyapx/parallel.hpp"
#include "polyapx/symmetric.hpp"

namespace polyapx {

namespace {

// forward differences Δ^ℓ g(0), ℓ = 0..top
std::vector<Rational> forward_differences(std::vector<Rational> g, int top) {
    std::vector<Rational> out;
    for (int l = 0; l <= top && !g.empty(); ++l) {
        out.push_back(g[0]);
        for (size_t i = 0; i + 1 < g.size(); ++i) g[i] = g[i + 1] - g[i];
        g.pop_back();
    }
    while (static_cast<int>(out.size()) <= top) out.push_back(Rational(0));
    return out;
}

}  // namespace

// p at 0..top, exact or rationalized after agreeing with the 2P rebuild
std::vector<Rational> count_values(const PolyExpr& p, const PolyExpr& p2, int top) {
    std::vector<Rational> out(static_cast<size_t>(top + 1));
    const long P = kDefaultPrecision;
    for (int t = 0; t <= top; ++t) {
        if (p.exact()) {
            out[static_cast<size_t>(t)] = p.eval(Rational(t));
            continue;
        }
        const BigFloat a = p.eval(BigFloat(t, P)), b = p2.eval(BigFloat(t, 2 * P));
        const BigFloat tiny = ldexp(BigFloat(1, P), -100);
        if (!(abs(a) <= tiny && abs(b) <= tiny) && !agrees_at_half_precision(a, BigFloat(b, P)))
            throw PrecisionRejected("value at " + std::to_string(t) + " changes under doubled precision");
        out[static_cast<size_t>(t)] = a.to_rational();
    }
    return out;
}

// ---------------- surjectivity ----------------

const double kSurjDegreeConstant = 4.0;

double surj_degree_shape(int n, int r, const Rational& eps) {
    const double L = std::max(1.0, std::log2(1 / eps.get_d()));
    return std::sqrt(static_cast<double>(n)) * std::pow(r * L, 0.25) + std::sqrt(n * L);
}

int BlockSymApprox::target(const std::vector<int>& w) {
    for (int x : w)
        if (x == 0) return 0;
    return 1;
}

Rational BlockSymApprox::outer_eval(const std::vector<int>& w) const {
    int c = 0;
    for (int x : w) c += x > 0;
    return outer_values.empty() ? Rational(0) : outer_values[static_cast<size_t>(c)];
}

Rational BlockSymApprox::expansion_at(int k) const {
    Rational s = 0;
    for (const auto& t : terms)
        if (t.ell <= k) s += t.mu * Rational(binomial(k, t.ell));
    return s;
}

Rational BlockSymApprox::eval(const std::vector<int>& w) const {
    Rational s = 0;
    for (const auto& t : terms) {
        if (t.ell == 0) {
            s += t.mu * t.q_values[0];
            continue;
        }
        Rational inner = 0;
        for (uint32_t S = 0; S < (1U << r); ++S) {
            if (__builtin_popcount(S) != t.ell) continue;
            int cnt = 0;
            for (int j = 0; j < r; ++j)
                if ((S >> j) & 1U) cnt += w[static_cast<size_t>(j)];
            inner += t.q_values[static_cast<size_t>(std::min(cnt, n))];
        }
        s += t.mu * inner;
    }
    return s;
}

std::vector<std::vector<int>> weight_vectors(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<size_t>(r), 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == r) {
            out.push_back(w);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            w[static_cast<size_t>(j)] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

BlockSweep sweep_block(const BlockSymApprox& a) {
    const auto ws = weight_vectors(a.n, a.r);
    std::vector<Rational> err(ws.size());
    parallel_for(ws.size(), [&](size_t i) { err[i] = abs(Rational(a.eval(ws[i]) - BlockSymApprox::target(ws[i]))); });
    BlockSweep out;
    out.count = ws.size();
    out.max_err = 0;
    for (size_t i = 0; i < ws.size(); ++i)
        if (i == 0 || err[i] > out.max_err) {
            out.max_err = err[i];
            out.argmax = ws[i];
        }
    return out;
}

BlockSymApprox surjectivity_approx(int n, int r, const Rational& eps) {
    if (n < 1 || r < 1) throw InvalidArgument("surjectivity needs n, r >= 1");
    if (eps <= 0 || eps >= rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2)");
    BlockSymApprox out;
    out.n = n;
    out.r = r;
    if (r > n) {  // no weight-≤n matrix covers every column
        out.outer = PolyExpr::constant(Rational(0));
        out.certified_eps = 0;
        return out;
    }
    out.general = eps < rat(1, 3);
    if (!out.general) {
        // T_m((1 + c)/r)/T_m(1 + 1/r), m = ⌈√(3r)⌉
        int m = static_cast<int>(std::sqrt(3.0 * r));
        while (m * m < 3 * r) ++m;
        const Rational top = cheb_eval(m, Rational(Rational(1) + Rational(1, r)));
        out.outer = PolyExpr::lincomb(Rational(0), {{Rational(1) / top, PolyExpr::compose(PolyExpr::cheb(m), affine(Rational(1, r), Rational(1, r)))}});
        out.outer_values = count_values(out.outer, out.outer, r);
    } else {
        // AND_r approximant with |p| ≤ ε/2 below r, p(r) = 1
        for (int d = 0;; ++d) {
            PolyExpr p, p2;
            if (d >= r) {
                p = p2 = PolyExpr::mono(falling_factorial_over_factorial(r));
            } else {
                p = and_cheb_raw(r, d, kDefaultPrecision);
                p2 = and_cheb_raw(r, d, 2 * kDefaultPrecision);
            }
            auto vals = count_values(p, p2, r);
            Rational worst = 0;
            for (int c = 0; c < r; ++c) worst = std::max(worst, abs(vals[static_cast<size_t>(c)]));
            if (worst <= eps / 2) {
                out.outer = p;
                out.outer_values = std::move(vals);
                break;
            }
        }
    }
    out.outer_degree = out.outer.degree();
    out.outer_err = 0;
    for (int c = 0; c <= r; ++c)
        out.outer_err = std::max(out.outer_err, abs(Rational(out.outer_values[static_cast<size_t>(c)] - (c == r ? 1 : 0))));

    // g(k) = outer(r − k) at k empty columns; μ_ℓ = Δ^ℓ g(0)
    std::vector<Rational> g;
    for (int k = 0; k <= r; ++k) g.push_back(out.outer_values[static_cast<size_t>(r - k)]);
    const std::vector<Rational> mu = forward_differences(g, r);

    const Rational budget = eps - out.outer_err;
    if (budget <= 0) throw Error("outer stage used the whole error budget");
    int nonzero = 0;
    for (int l = 1; l <= r; ++l) nonzero += mu[static_cast<size_t>(l)] != 0;

    out.conj_err = 0;
    for (int l = 0; l <= r; ++l) {
        const Rational m = mu[static_cast<size_t>(l)];
        if (m == 0) continue;
        BlockTerm t;
        t.ell = l;
        t.mu = m;
        if (l == 0) {
            t.q = PolyExpr::constant(Rational(1));
            t.q_values.assign(static_cast<size_t>(n + 1), Rational(1));
            t.q_err = 0;
            out.terms.push_back(std::move(t));
            continue;
        }
        const Rational weight = abs(m) * Rational(binomial(r, l));
        const Rational target = budget / (weight * nonzero);
        // variables of columns 1..ℓ, row-major index (i − 1)·r + j
        std::vector<int> B;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= l; ++j) B.push_back((i - 1) * r + j);
        std::sort(B.begin(), B.end());
        auto conj_at = [&](int d) { return restricted_conjunction_approx(n * r, n, {}, B, d); };
        int lo = -1, hi = n;  // d = n is exact
        while (hi - lo > 1) {
            const int mid = lo + (hi - lo) / 2;
            if (conj_at(mid).certified_eps <= target) hi = mid;
            else lo = mid;
        }
        LinearFormApprox c1 = conj_at(hi);
        LinearFormApprox c2 = restricted_conjunction_approx(n * r, n, {}, B, hi, 2 * kDefaultPrecision);
        t.q = c1.poly;
        t.q_values = count_values(c1.poly, c2.poly, n);
        t.q_err = 0;
        for (int w = 0; w <= n; ++w)
            t.q_err = std::max(t.q_err, abs(Rational(t.q_values[static_cast<size_t>(w)] - (w == 0 ? 1 : 0))));
        t.degree = t.q.degree();
        out.conj_err += weight * t.q_err;
        out.tracked_degree = std::max(out.tracked_degree, t.degree);
        out.terms.push_back(std::move(t));
    }
    out.certified_eps = out.outer_err + out.conj_err;
    return out;
}

// ---------------- selector composition ----------------

const double kSelectorConstant = 1.5;

namespace {

uint32_t or_mask_value(const SelectorInstance& inst, uint32_t S, size_t j) {
    for (int i = 0; i < inst.N; ++i)
        if (((S >> i) & 1U) && inst.f[static_cast<size_t>(i)][j]) return 1;
    return 0;
}

struct Inner {
    std::vector<Rational> values;  // on X
    int degree = 0;
    Rational err;
};

std::vector<uint32_t> monomials_upto(int M, int D) {
    std::vector<uint32_t> out;
    for (uint32_t a = 0; a < (1U << M); ++a)
        if (__builtin_popcount(a) <= D) out.push_back(a);
    return out;
}

Inner inner_approx(const SelectorInstance& inst, uint32_t S, const Rational& target) {
    Inner in;
    std::vector<Rational> fS;
    for (size_t j = 0; j < inst.X.size(); ++j) fS.push_back(Rational(or_mask_value(inst, S, j)));
    if (inst.inner == InnerPolicy::ExactInterpolant) {
        std::map<uint32_t, Rational> onX;
        for (size_t j = 0; j < inst.X.size(); ++j) onX[inst.X[j]] = fS[j];
        MultilinearPoly p = multilinear_interpolant(inst.M, inst.M, [&](uint32_t x) {
            auto it = onX.find(x);
            return it == onX.end() ? Rational(0) : it->second;
        });
        in.values = fS;
        in.degree = std::max(p.degree(), 0);
        in.err = 0;
        return in;
    }
    for (int D = 0; D <= inst.M; ++D) {
        const auto mons = monomials_upto(inst.M, D);
        std::vector<std::vector<Rational>> rows;
        for (uint32_t x : inst.X) {
            std::vector<Rational> row;
            for (uint32_t a : mons) row.push_back(Rational((a & ~x) == 0 ? 1 : 0));
            rows.push_back(std::move(row));
        }
        BasisMinimax mm = minimax_lp_basis(rows, fS);
        if (mm.eps_star <= target || D == inst.M) {
            in.degree = D;
            in.err = mm.eps_star;
            for (const auto& row : rows) {
                Rational v = 0;
                for (size_t k = 0; k < row.size(); ++k) v += row[k] * mm.coeffs[k];
                in.values.push_back(v);
            }
            return in;
        }
    }
    return in;
}

// ordered ℓ-tuples of pairwise disjoint b-subsets of [N]
void disjoint_tuples(int N, int b, int l, std::vector<uint32_t>& cur, uint32_t used,
                     std::vector<std::vector<uint32_t>>& out) {
    if (static_cast<int>(cur.size()) == l) {
        out.push_back(cur);
        return;
    }
    for (uint32_t B = 0; B < (1U << N); ++B) {
        if (__builtin_popcount(B) != b || (B & used)) continue;
        cur.push_back(B);
        disjoint_tuples(N, b, l, cur, used | B, out);
        cur.pop_back();
    }
}

}  // namespace

SelectorResult selector_compose(const SelectorInstance& inst, const Rational& eps) {
    const int N = inst.N, n = inst.n, b = inst.b;
    if (eps <= 0 || eps > rat(1, 2)) throw InvalidArgument("eps must lie in (0,1/2]");
    if (b < 1 || n < 1 || N < n) throw InvalidArgument("selector needs 1 <= n <= N and b >= 1");
    if (n % b != 0 || N % b != 0) throw InvalidArgument("b must divide both n and N");
    if (N > 12 || inst.M > 12) throw InvalidArgument("selector_compose is for toy instances (N, M <= 12)");
    if (static_cast<int>(inst.f.size()) != N) throw InvalidArgument("need one truth table per selector bit");
    for (const auto& t : inst.f)
        if (t.size() != inst.X.size()) throw InvalidArgument("truth tables must cover X");
    SelectorResult out;
    const int nb = n / b;

    // Step 1: symmetric OR_{n/b} approximant within ε/2, as Σ_ℓ a_ℓ C(t, ℓ)
    SymApprox orx;
    for (int d = 0;; ++d) {
        orx = and_or_approx(nb, d, Which::OR);
        if (orx.certified_eps <= eps / 2) {
            out.outer_degree = d;
            break;
        }
    }
    const int dl = std::min(out.outer_degree, nb);
    const auto pv = count_values(orx.poly, orx.rebuild(2 * kDefaultPrecision), nb);
    out.a = forward_differences(pv, dl);
    out.outer_err = 0;
    for (int t = 0; t <= nb; ++t) {
        Rational v = 0;
        for (int l = 0; l <= dl; ++l) v += out.a[static_cast<size_t>(l)] * Rational(binomial(t, l));
        out.outer_err = std::max(out.outer_err, abs(Rational(v - (t > 0 ? 1 : 0))));
    }

    // Step 2: inner approximants for every S with |S| ≤ d·b
    Rational weight = 0;
    for (int l = 0; l <= dl; ++l)
        weight += Rational(binomial(nb, l)) * Rational(pow2(l)) * abs(out.a[static_cast<size_t>(l)]);
    out.inner_target = (eps - out.outer_err) / weight;
    auto inner = std::make_shared<std::map<uint32_t, Inner>>();
    out.inner_err = 0;
    for (uint32_t S = 1; S < (1U << N); ++S) {
        if (__builtin_popcount(S) > dl * b) continue;
        Inner in = inner_approx(inst, S, out.inner_target);
        out.max_inner_degree = std::max(out.max_inner_degree, in.degree);
        out.inner_err = std::max(out.inner_err, in.err);
        (*inner)[S] = std::move(in);
    }
    out.degree_bound = out.max_inner_degree + dl * b;

    // Step 3: F̃ with the expectation enumerated over disjoint b-set tuples
    struct Level {
        Rational coef;  // a_ℓ C(n/b,ℓ) C(N,bℓ) / C(n,bℓ) / #tuples
        std::vector<uint32_t> unions;
        std::vector<std::vector<Rational>> ie;  // inclusion–exclusion value per tuple per x
    };
    auto levels = std::make_shared<std::vector<Level>>();
    for (int l = 1; l <= dl; ++l) {
        Level L;
        std::vector<std::vector<uint32_t>> tuples;
        std::vector<uint32_t> cur;
        disjoint_tuples(N, b, l, cur, 0, tuples);
        L.coef = out.a[static_cast<size_t>(l)] * Rational(binomial(nb, l)) * Rational(binomial(N, b * l)) /
                 Rational(binomial(n, b * l)) / static_cast<long>(tuples.size());
        for (const auto& tp : tuples) {
            uint32_t U = 0;
            for (uint32_t B : tp) U |= B;
            L.unions.push_back(U);
            std::vector<Rational> v(inst.X.size(), Rational(0));
            for (uint32_t S = 1; S < (1U << l); ++S) {
                uint32_t part = 0;
                for (int i = 0; i < l; ++i)
                    if ((S >> i) & 1U) part |= tp[static_cast<size_t>(i)];
                const int sg = __builtin_popcount(S) % 2 ? 1 : -1;
                const auto& vals = inner->at(part).values;
                for (size_t j = 0; j < v.size(); ++j) v[j] += sg * vals[j];
            }
            L.ie.push_back(std::move(v));
        }
        levels->push_back(std::move(L));
    }
    const Rational a0 = out.a[0];
    out.eval = [levels, a0](size_t j, uint32_t y) {
        Rational s = a0;
        for (const auto& L : *levels) {
            Rational acc = 0;
            for (size_t t = 0; t < L.unions.size(); ++t)
                if ((L.unions[t] & ~y) == 0) acc += L.ie[t][j];
            s += L.coef * acc;
        }
        return s;
    };
    auto fcopy = std::make_shared<SelectorInstance>(inst);
    out.target = [fcopy](size_t j, uint32_t y) { return static_cast<int>(or_mask_value(*fcopy, y, j)); };

    out.max_error = 0;
    for (size_t j = 0; j < inst.X.size(); ++j)
        for (uint32_t y = 0; y < (1U << N); ++y) {
            if (__builtin_popcount(y) != n) continue;
            out.max_error = std::max(out.max_error, abs(Rational(out.eval(j, y) - out.target(j, y))));
        }
    return out;
}

// ---------------- homogenization ----------------

MultilinearPoly homogenize(const MultilinearPoly& phi_prime, int M, int N, int n) {
    if (M < 0 || N < 0 || n < 0 || phi_prime.N != M + N + n) throw InvalidArgument("variable layout must be x, y, z");
    if (M + N > 20) throw InvalidArgument("too many variables");
    const uint32_t xy = (M + N) >= 32 ? ~0U : ((1U << (M + N)) - 1);
    MultilinearPoly out;
    out.N = M + N;
    for (const auto& [S, c] : phi_prime.coef) {
        const int s = __builtin_popcount(S >> (M + N));
        const uint32_t base = S & xy;
        // C(n − k, s)/C(n, s) at k = |y|, written as Σ_k Δ^k g(0)·Σ_{|T|=k} y^T
        const RatPoly bs = binomial_poly(s);
        std::vector<Rational> g;
        for (int k = 0; k <= s; ++k) g.push_back(bs.eval(Rational(n - k)) / Rational(binomial(n, s)));
        const auto dg = forward_differences(g, s);
        for (uint32_t T = 0; T < (1U << N); ++T) {
            const int k = __builtin_popcount(T);
            if (k > s || dg[static_cast<size_t>(k)] == 0) continue;
            out.coef[base | (T << M)] += c * dg[static_cast<size_t>(k)];
        }
    }
    for (auto it = out.coef.begin(); it != out.coef.end();) it = it->second == 0 ? out.coef.erase(it) : std::next(it);
    return out;
}

// ---------------- conjunction norm ----------------

PiPtr PiExpr::constant(const Rational& c) {
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Constant;
    e->value = c;
    return e;
}
PiPtr PiExpr::conjunction(uint32_t pos, uint32_t neg) {
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Conjunction;
    e->pos = pos;
    e->neg = neg;
    return e;
}
PiPtr PiExpr::disjunction(uint32_t pos, uint32_t neg) {
    auto e = conjunction(pos, neg);
    e->kind = Kind::Disjunction;
    return e;
}
PiPtr PiExpr::from_table(std::vector<Rational> t) {
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Table;
    e->table = std::move(t);
    return e;
}
PiPtr PiExpr::sum(std::vector<PiPtr> kids, std::vector<Rational> weights) {
    if (kids.size() != weights.size()) throw InvalidArgument("one weight per summand");
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Sum;
    e->kids = std::move(kids);
    e->weights = std::move(weights);
    return e;
}
PiPtr PiExpr::product(std::vector<PiPtr> kids) {
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Product;
    e->kids = std::move(kids);
    return e;
}
PiPtr PiExpr::compose(RatPoly p, PiPtr inner) {
    auto e = std::make_shared<PiExpr>();
    e->kind = Kind::Compose;
    e->p = std::move(p);
    e->kids = {std::move(inner)};
    return e;
}

Rational PiExpr::eval(uint32_t x) const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::Conjunction: return Rational(((x & pos) == pos && (x & neg) == 0) ? 1 : 0);
        case Kind::Disjunction: return Rational(((x & pos) != 0 || (~x & neg) != 0) ? 1 : 0);
        case Kind::Table: return table.at(x);
        case Kind::Sum: {
            Rational s = 0;
            for (size_t i = 0; i < kids.size(); ++i) s += weights[i] * kids[i]->eval(x);
            return s;
        }
        case Kind::Product: {
            Rational s = 1;
            for (const auto& k : kids) s *= k->eval(x);
            return s;
        }
        case Kind::Compose: return p.eval(kids[0]->eval(x));
    }
    return 0;
}

Rational pi_norm_bound(const PiExpr& e) {
    using K = PiExpr::Kind;
    switch (e.kind) {
        case K::Constant: return abs(e.value);
        case K::Conjunction: return 1;
        case K::Disjunction: return 2;
        case K::Table: {
            Rational s = 0;
            for (const auto& v : e.table) s += abs(v);
            return s;
        }
        case K::Sum: {
            Rational s = 0;
            for (size_t i = 0; i < e.kids.size(); ++i) s += abs(e.weights[i]) * pi_norm_bound(*e.kids[i]);
            return s;
        }
        case K::Product: {
            Rational s = 1;
            for (const auto& k : e.kids) s *= pi_norm_bound(*k);
            return s;
        }
        case K::Compose: {
            const Rational inner = std::max(Rational(1), pi_norm_bound(*e.kids[0]));
            return pow(inner, std::max(e.p.degree(), 0)) * poly_norm(e.p);
        }
    }
    return 0;
}

namespace {

using ConjMap = std::map<std::pair<uint32_t, uint32_t>, Rational>;

void add_to(ConjMap& m, std::pair<uint32_t, uint32_t> k, const Rational& c) {
    if ((k.first & k.second) != 0 || c == 0) return;  // contradictory conjunction is 0
    auto& v = m[k];
    v += c;
    if (v == 0) m.erase(k);
}

ConjMap mul(const ConjMap& a, const ConjMap& b) {
    ConjMap out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) add_to(out, {ka.first | kb.first, ka.second | kb.second}, ca * cb);
    return out;
}

}  // namespace

std::map<std::pair<uint32_t, uint32_t>, Rational> conjunction_expansion(const PiExpr& e, int nvars) {
    using K = PiExpr::Kind;
    const uint32_t full = nvars >= 32 ? ~0U : ((1U << nvars) - 1);
    ConjMap out;
    switch (e.kind) {
        case K::Constant: add_to(out, {0, 0}, e.value); break;
        case K::Conjunction: add_to(out, {e.pos, e.neg}, Rational(1)); break;
        case K::Disjunction:
            // ∨ literals = 1 − ∧ negated literals
            add_to(out, {0, 0}, Rational(1));
            add_to(out, {e.neg, e.pos}, Rational(-1));
            break;
        case K::Table:
            for (uint32_t a = 0; a < e.table.size(); ++a) add_to(out, {a, ~a & full}, e.table[a]);
            break;
        case K::Sum:
            for (size_t i = 0; i < e.kids.size(); ++i)
                for (const auto& [k, c] : conjunction_expansion(*e.kids[i], nvars)) add_to(out, k, e.weights[i] * c);
            break;
        case K::Product:
            add_to(out, {0, 0}, Rational(1));
            for (const auto& k : e.kids) out = mul(out, conjunction_expansion(*k, nvars));
            break;
        case K::Compose: {
            const ConjMap f = conjunction_expansion(*e.kids[0], nvars);
            ConjMap pw;
            add_to(pw, {0, 0}, Rational(1));
            for (int i = 0; i <= e.p.degree(); ++i) {
                for (const auto& [k, c] : pw) add_to(out, k, e.p[static_cast<size_t>(i)] * c);
                if (i < e.p.degree()) pw = mul(pw, f);
            }
            break;
        }
    }
    return out;
}

}  // namespace polyapx
