#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyapx {

enum class Family { Symmetric, Kdnf, EdRangeFree, EdRangeDep, Surj };
std::string family_name(Family f);
Family parse_family(const std::string& s);

// c: closed-form constant of the family; C: recurrence constant
struct BoundConstants {
    double C = 0;
    double c = 0;
};
// C = c_sel·√2/ln 2 with c_sel the measured selector constant; c per family
// (kdnf 2(C+1)², ed (4C)², ed-range-dep 4·(4C)², symmetric and surj from
// the measured construction constants)
BoundConstants default_constants(Family f);

struct BoundQuery {
    Family family = Family::Kdnf;
    double n = 1;
    double r = 1;       // ed-range-dep, surj
    int k = 0;          // kdnf / ed order; ℓ for symmetric
    double Delta = 1;   // log2(1/ε)
    BoundConstants constants;
};

double closed_form(const BoundQuery& q);

// bound for level k−1 (or the same level, for the small-range ed step)
using InnerBound = std::function<double(double n, double r, int k, double Delta)>;

std::vector<double> geometric_b_grid(double lo, double hi, int per_decade = 64);

struct RecurrenceValue {
    double value = 0;
    double best_b = 0;  // 0 when no b is involved
};
// right-hand side of the family's recurrence, minimized over b_grid plus the
// analytic optimizer when one is known
RecurrenceValue recurrence_step(const BoundQuery& q, const InnerBound& inner, const std::vector<double>& b_grid);
// the kdnf optimizer (C+1)²·2^k·(n/Δ)^(1−2/(k+1)); ed analogue from the range-free proof
std::optional<double> analytic_b(const BoundQuery& q);

struct SweepPoint {
    BoundQuery q;
    double closed = 0;
    double recurrence = 0;
    std::optional<double> oracle;
    bool violation = false;
};
struct SweepReport {
    std::vector<SweepPoint> points;
    int violations = 0;
    int nontrivial = 0;  // points where the closed form is below the trivial bound n
};
struct ParamGrid {
    std::vector<double> n, r, Delta;
    std::vector<int> k;
};
// closed_form(k) ≥ recurrence_step(closed_form(k−1)) at every grid point
SweepReport consistency_sweep(Family f, const ParamGrid& grid);
ParamGrid induction_grid(Family f);

// Σ_{i≤k} C(n,i) ≤ (en/k)^k; returns the number of failing (n,k) with 1 ≤ k ≤ n ≤ nmax
int entropy_bound_violations(int nmax);

// RFC 4180
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);
std::string sweep_csv(const SweepReport& r);
std::string format_double(double v);

}  // namespace polyapx
