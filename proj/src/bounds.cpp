#include "polyapx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polyapx/composed.hpp"
#include "polyapx/errors.hpp"
#include "polyapx/bigfloat.hpp"
#include "polyapx/symmetric.hpp"

namespace polyapx {

namespace {

double ed_exponent(int k) { return 1.0 / (4.0 * (1.0 - std::ldexp(1.0, -k))); }

double sqrt_factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return std::sqrt(f);
}

void validate(const BoundQuery& q) {
    if (!(q.n >= 1)) throw InvalidArgument("n must be ≥ 1");
    if (!(q.Delta >= 1)) throw InvalidArgument("Delta must be ≥ 1");
    if (q.k < 0) throw InvalidArgument("k must be ≥ 0");
    if ((q.family == Family::EdRangeDep || q.family == Family::Surj) && !(q.r >= 1))
        throw InvalidArgument("r must be ≥ 1");
    if (q.constants.C < 1 || q.constants.c < 1) throw InvalidArgument("constants must be ≥ 1");
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Symmetric: return "symmetric";
        case Family::Kdnf: return "kdnf";
        case Family::EdRangeFree: return "ed-range-free";
        case Family::EdRangeDep: return "ed-range-dep";
        case Family::Surj: return "surj";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Symmetric, Family::Kdnf, Family::EdRangeFree, Family::EdRangeDep, Family::Surj})
        if (family_name(f) == s) return f;
    if (s == "ed") return Family::EdRangeFree;
    throw InvalidArgument("unknown family '" + s + "'");
}

BoundConstants default_constants(Family f) {
    BoundConstants k;
    k.C = kSelectorConstant * std::sqrt(2.0) / std::log(2.0);
    switch (f) {
        case Family::Kdnf: k.c = 2 * (k.C + 1) * (k.C + 1); break;
        case Family::EdRangeFree: k.c = 16 * k.C * k.C; break;
        case Family::EdRangeDep: k.c = 64 * k.C * k.C; break;
        case Family::Symmetric: k.c = kPaturiConstant; break;
        case Family::Surj: k.c = kSurjDegreeConstant; break;
    }
    return k;
}

double closed_form(const BoundQuery& q) {
    validate(q);
    const double n = q.n, D = q.Delta, c = q.constants.c;
    const int k = q.k;
    double v = 0;
    switch (q.family) {
        case Family::Symmetric:
            v = c * (std::sqrt(n * k) + std::sqrt(n * D));
            break;
        case Family::Kdnf:
            if (k == 0) return 0;
            v = c * std::pow(std::sqrt(2.0), k) * std::pow(n, k / (k + 1.0)) * std::pow(D, 1.0 / (k + 1));
            break;
        case Family::EdRangeFree:
            if (k == 0) return 0;
            if (k == 1) {
                v = q.constants.C * std::sqrt(n * D);
                break;
            }
            v = std::pow(c, k) * sqrt_factorial(k) * std::pow(n, 1 - ed_exponent(k)) * std::pow(D, ed_exponent(k));
            break;
        case Family::EdRangeDep: {
            if (k == 0) return 0;
            const double e = ed_exponent(k);
            const double m = std::min(n, k * q.r);
            v = std::pow(c, k) * sqrt_factorial(k) * (std::sqrt(n) * std::pow(m, 0.5 - e) * std::pow(D, e) + std::sqrt(n * D));
            break;
        }
        case Family::Surj:
            if (q.r > n) return 0;
            v = c * (std::sqrt(n) * std::pow(q.r * D, 0.25) + std::sqrt(n * D));
            break;
    }
    return std::min(v, n);
}

std::vector<double> geometric_b_grid(double lo, double hi, int per_decade) {
    if (!(lo >= 1) || hi < lo || per_decade < 1) throw InvalidArgument("b grid needs 1 ≤ lo ≤ hi");
    std::vector<double> g;
    const double decades = std::log10(hi / lo);
    const int steps = static_cast<int>(std::ceil(decades * per_decade));
    for (int i = 0; i <= steps; ++i) g.push_back(std::min(hi, lo * std::pow(10.0, static_cast<double>(i) / per_decade)));
    return g;
}

std::optional<double> analytic_b(const BoundQuery& q) {
    const double C = q.constants.C, c = q.constants.c, n = q.n, D = q.Delta;
    const int k = q.k;
    if (k < 1 || D > n) return std::nullopt;
    if (q.family == Family::Kdnf) return (C + 1) * (C + 1) * std::ldexp(1.0, k) * std::pow(n / D, 1 - 2.0 / (k + 1));
    if (q.family == Family::EdRangeFree && k >= 2) {
        const double base = C * std::pow(n / D, 0.25) * 8 * std::pow(c, k - 1) * sqrt_factorial(k - 1);
        const double b = std::pow(base, (std::ldexp(1.0, k + 1) - 4) / (std::ldexp(1.0, k) - 1));
        return std::max(1.0, b);
    }
    return std::nullopt;
}

RecurrenceValue recurrence_step(const BoundQuery& q, const InnerBound& inner, const std::vector<double>& b_grid) {
    validate(q);
    for (double b : b_grid)
        if (!(b >= 1)) throw InvalidArgument("b grid must lie in [1, ∞)");
    const double C = q.constants.C, n = q.n, D = q.Delta;
    const int k = q.k;
    RecurrenceValue out;

    if (q.family == Family::EdRangeDep) {
        // C·√(1 + n/(kr))·(D(2kr, r, k, Δ+1) + Δ); trivial below kr
        if (k < 1) return out;
        if (n < k * q.r) {
            out.value = inner(n, q.r, k, D);
            return out;
        }
        out.value = std::min(n, C * std::sqrt(1 + n / (k * q.r)) * (inner(2 * k * q.r, q.r, k, D + 1) + D));
        return out;
    }
    if (q.family != Family::Kdnf && q.family != Family::EdRangeFree)
        throw InvalidArgument("no recurrence for family " + family_name(q.family));
    if (k < 1) return out;

    auto rhs = [&](double b) {
        if (q.family == Family::Kdnf)
            return std::min(n, C * std::sqrt(n * b * D) + inner(n, q.r, k - 1, D + C * std::sqrt(n * D / b)));
        const double n2 = std::floor(C * k * std::sqrt(n * b * D));
        const double in = n2 >= 1 ? inner(n2, q.r, k - 1, C * std::sqrt(n * D / b) + 1) : 0.0;
        return std::min(n, C * std::sqrt(n * b * D) +
                               C * (1 + std::pow(n / (b * D), 0.25) / std::sqrt(static_cast<double>(k))) *
                                   (in + std::sqrt(n * D / b)));
    };
    std::vector<double> bs = b_grid;
    if (auto b = analytic_b(q)) bs.push_back(*b);
    out.value = n;
    for (double b : bs) {
        const double v = rhs(b);
        if (v < out.value || out.best_b == 0) {
            out.value = v;
            out.best_b = b;
        }
    }
    return out;
}

ParamGrid induction_grid(Family f) {
    ParamGrid g;
    for (int e = 6; e <= 14; ++e) g.n.push_back(std::ldexp(1.0, e));
    g.k = {1, 2, 3, 4};
    g.Delta = {1, 8, 64};
    g.r = f == Family::EdRangeDep ? std::vector<double>{1, 4, 64, 1024} : std::vector<double>{1};
    return g;
}

SweepReport consistency_sweep(Family f, const ParamGrid& grid) {
    SweepReport rep;
    const BoundConstants K = default_constants(f);
    const BoundConstants Kfree = default_constants(Family::EdRangeFree);
    auto closed = [&](Family fam, const BoundConstants& k, double n, double r, int kk, double D) {
        BoundQuery q{fam, n, r, kk, D, k};
        return closed_form(q);
    };
    InnerBound inner;
    if (f == Family::EdRangeDep)
        inner = [&](double n, double r, int kk, double D) { return closed(Family::EdRangeFree, Kfree, n, r, kk, D); };
    else
        inner = [&](double n, double r, int kk, double D) { return closed(f, K, n, r, kk, std::max(1.0, D)); };

    for (double n : grid.n)
        for (double r : grid.r)
            for (int k : grid.k)
                for (double D : grid.Delta) {
                    SweepPoint p;
                    p.q = BoundQuery{f, n, r, k, D, K};
                    p.closed = closed_form(p.q);
                    if (f == Family::EdRangeFree && k == 1) {
                        // base case: the closed form is the OR bound itself
                        p.recurrence = std::min(n, K.C * std::sqrt(n * D));
                    } else if (f == Family::EdRangeDep) {
                        // D(n,r,k,Δ) ≤ D(n, r + ⌈Δ/k⌉, k, Δ), then the small-range step
                        BoundQuery q2 = p.q;
                        q2.r = r + std::ceil(D / k);
                        q2.constants = Kfree;
                        p.recurrence = recurrence_step(q2, inner, {}).value;
                    } else {
                        const double hi = std::max(10.0, 100 * n * n);
                        p.recurrence = recurrence_step(p.q, inner, geometric_b_grid(1, hi)).value;
                    }
                    p.violation = p.closed < p.recurrence * (1 - 1e-12);
                    rep.violations += p.violation;
                    rep.nontrivial += p.closed < n;
                    rep.points.push_back(p);
                }
    return rep;
}

int entropy_bound_violations(int nmax) {
    int bad = 0;
    for (int n = 1; n <= nmax; ++n) {
        Integer s = 1;
        for (int k = 1; k <= n; ++k) {
            s += binomial(n, k);
            // Σ_{i≤k} C(n,i) ≤ (en/k)^k, compared in high precision
            const BigFloat lhs(Rational(s), 256);
            const BigFloat rhs = pow(exp(BigFloat(1, 256)) * BigFloat(rat(n, k), 256), k);
            bad += lhs > rhs;
        }
    }
    return bad;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_csv(const SweepReport& r) {
    std::string out = csv_row({"family", "n", "r", "k", "Delta", "bound", "recurrence_value", "oracle_value"});
    for (const auto& p : r.points)
        out += csv_row({family_name(p.q.family), format_double(p.q.n), format_double(p.q.r), std::to_string(p.q.k),
                        format_double(p.q.Delta), format_double(p.closed), format_double(p.recurrence),
                        p.oracle ? format_double(*p.oracle) : ""});
    return out;
}

}  // namespace polyapx
