#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polyapx/acceptance.hpp"
#include "polyapx/bounds.hpp"
#include "polyapx/extension.hpp"
#include "polyapx/json_io.hpp"

using namespace polyapx;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kVerifyFailed = 3, kPrecision = 4 };

struct Config {
    std::string target = "and";
    std::string family = "kdnf";
    std::string values;
    std::string eps_s;
    std::string delta_s;
    std::string input;
    std::string output;
    int n = -1, r = -1, k = -1, m = -1, d = -1;
    long precision = kDefaultPrecision;
    uint64_t seed = kAcceptanceSeed;
};

void need(bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(msg);
}

Rational eps_or(const Config& c, const Rational& dflt) {
    const Rational e = c.eps_s.empty() ? dflt : parse_rational(c.eps_s);
    need(e > 0 && e < rat(1, 2), "--eps must lie in (0, 1/2)");
    return e;
}

std::vector<Rational> parse_values(const std::string& s) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(parse_rational(tok));
    need(v.size() >= 2, "--values needs f(0),…,f(n) with n ≥ 1");
    return v;
}

int need_n(const Config& c) {
    need(c.n >= 1, "--n must be ≥ 1");
    return c.n;
}

void emit(const Config& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + c.output);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_construct(const Config& c) {
    const long P = c.precision;
    Json j;
    if (c.target == "surj") {
        need(c.r >= 1, "--r must be ≥ 1");
        const auto a = surjectivity_approx(need_n(c), c.r, eps_or(c, rat(1, 3)));
        j = block_json(a);
    } else {
        SymApprox a;
        if (c.target == "and" || c.target == "or") {
            const Which w = c.target == "and" ? Which::AND : Which::OR;
            if (c.d >= 0) {
                need(c.eps_s.empty(), "give either --d or --eps");
                a = and_or_approx(need_n(c), c.d, w, P);
            } else {
                a = and_or_for_eps(need_n(c), eps_or(c, rat(1, 3)), w, P);
            }
        } else if (c.target == "exact") {
            need(c.k >= 0, "--k must be ≥ 0");
            a = exact_weight_approx(need_n(c), c.k, c.m >= 0 ? c.m : c.k, eps_or(c, rat(1, 8)), P);
        } else if (c.target == "symmetric") {
            a = symmetric_approx(SymSpec::from_values(parse_values(c.values)), eps_or(c, rat(1, 8)), P);
        } else if (c.target == "small-support") {
            a = small_support_approx(SymSpec::from_values(parse_values(c.values)), eps_or(c, rat(1, 8)));
        } else if (c.target == "sampling") {
            a = sampling_approx(SymSpec::from_values(parse_values(c.values)), eps_or(c, rat(1, 8))).approx;
        } else if (c.target == "interpolant") {
            a = interpolant_approx(SymSpec::from_values(parse_values(c.values)));
        } else if (c.target == "extension") {
            const auto v = parse_values(c.values);
            need(v.size() % 2 == 1, "--values must list f(0..2m)");
            const int m = static_cast<int>(v.size() - 1) / 2;
            const Rational delta = c.delta_s.empty() ? rat(1, 8) : parse_rational(c.delta_s);
            need(delta > 0 && delta < 1, "--delta must lie in (0, 1)");
            a = extend_approx(interpolant_approx(SymSpec::from_values(v)), m, need_n(c), delta).output;
        } else {
            throw InvalidArgument("unknown target '" + c.target + "'");
        }
        j = sym_json(a);
    }
    emit(c, dump(j));
    if (!c.output.empty())
        std::cout << "degree " << j.at("degree") << ", certified_eps " << j.at("certified_eps").get<std::string>() << "\n";
    return kOk;
}

int cmd_verify(const Config& c) {
    std::ifstream f(c.input);
    need(static_cast<bool>(f), "cannot read " + c.input);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("bad JSON: ") + e.what());
    }
    const VerifyReport r = verify_json(j, c.precision);
    std::cout << (r.pass ? "PASS" : "FAIL") << " max_error " << to_string(r.max_err) << " (" << r.max_err.get_d()
              << ") argmax " << r.argmax << " certified_eps " << to_string(r.certified) << "\n";
    return r.pass ? kOk : kVerifyFailed;
}

std::vector<Rational> oracle_spectrum(const Config& c) {
    if (c.target == "and") return SymSpec::and_spec(need_n(c)).values;
    if (c.target == "or") return SymSpec::or_spec(need_n(c)).values;
    if (c.target == "exact") {
        need(c.k >= 0 && c.k <= need_n(c), "--k must lie in 0..n");
        return SymSpec::exact_spec(c.n, c.k).values;
    }
    if (c.target == "values") return parse_values(c.values);
    throw InvalidArgument("unknown oracle target '" + c.target + "'");
}

int cmd_oracle(const Config& c) {
    need(c.d >= 0, "--degree must be ≥ 0");
    const auto spec = oracle_spectrum(c);
    Json j = minimax_json(minimax_lp(spec, c.d));
    j["target"] = c.target;
    j["n"] = static_cast<int>(spec.size()) - 1;
    emit(c, dump(j));
    return kOk;
}

double delta_of(const Config& c) {
    double D = 1;
    if (!c.delta_s.empty()) {
        need(c.eps_s.empty(), "give either --delta or --eps");
        D = parse_rational(c.delta_s).get_d();
    } else if (!c.eps_s.empty()) {
        D = -std::log2(eps_or(c, rat(1, 3)).get_d());
    }
    need(D >= 1, "Delta must be ≥ 1");
    return D;
}

int cmd_bounds(const Config& c) {
    const Family fam = parse_family(c.family);
    BoundQuery q;
    q.family = fam;
    q.n = need_n(c);
    q.r = c.r >= 0 ? c.r : 1;
    q.k = c.k >= 0 ? c.k : 1;
    q.Delta = delta_of(c);
    q.constants = default_constants(fam);
    const double v = closed_form(q);
    emit(c, csv_row({"family", "n", "r", "k", "Delta", "bound"}) +
                csv_row({family_name(fam), format_double(q.n), format_double(q.r), std::to_string(q.k),
                         format_double(q.Delta), format_double(v)}));
    return kOk;
}

// deg_{2^-Δ} of a hard member of the family, for symmetric grid points small enough to solve
std::optional<double> symmetric_oracle(int n, int k, double D) {
    if (n > 32 || D != std::floor(D)) return std::nullopt;
    const Rational eps = Rational(1) / Rational(pow2(static_cast<long>(D)));
    int best = deg_eps(SymSpec::and_spec(n).values, eps);
    if (k >= 1 && k <= n) best = std::max(best, deg_eps(SymSpec::exact_spec(n, k).values, eps));
    return best;
}

int cmd_table(const Config& c) {
    const Family fam = parse_family(c.family);
    std::string out;
    if (fam == Family::Symmetric || fam == Family::Surj) {
        out = csv_row({"family", "n", "r", "k", "Delta", "bound", "recurrence_value", "oracle_value"});
        const BoundConstants K = default_constants(fam);
        const std::vector<double> Ds{1, 2, 4, 8};
        for (int e = 2; e <= 14; ++e) {
            const int n = 1 << e;
            if (fam == Family::Symmetric) {
                for (int k = 0; k <= 3; ++k)
                    for (double D : Ds) {
                        const double b = closed_form(BoundQuery{fam, double(n), 1, k, D, K});
                        const auto o = symmetric_oracle(n, k, D);
                        out += csv_row({family_name(fam), format_double(n), "1", std::to_string(k), format_double(D),
                                        format_double(b), "", o ? format_double(*o) : ""});
                    }
            } else {
                for (int re = 0; re <= 16; re += 2)
                    for (double D : Ds) {
                        const double r = std::ldexp(1.0, re);
                        const double b = closed_form(BoundQuery{fam, double(n), r, 0, D, K});
                        out += csv_row({family_name(fam), format_double(n), format_double(r), "0", format_double(D),
                                        format_double(b), "", ""});
                    }
            }
        }
    } else {
        out = sweep_csv(consistency_sweep(fam, induction_grid(fam)));
    }
    emit(c, out);
    return kOk;
}

int cmd_selftest(const Config& c) {
    const auto res = run_acceptance(std::cout, c.seed);
    for (const auto& r : res)
        if (!r.pass) return kVerifyFailed;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyapx: certified polynomial approximations of symmetric and block-symmetric functions"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "seed for randomized corpora");
        s->add_option("--output,-o", c.output, "output file (default stdout)");
        s->add_option("--precision", c.precision, "float precision in bits (≥ 64)");
    };
    auto* construct = app.add_subcommand("construct", "build an approximant and certify it exhaustively");
    construct->add_option("--target", c.target,
                          "and | or | exact | symmetric | small-support | sampling | interpolant | extension | surj");
    construct->add_option("--n", c.n);
    construct->add_option("--r", c.r);
    construct->add_option("--k", c.k);
    construct->add_option("--m", c.m, "exactness radius for --target exact (default k)");
    construct->add_option("--d,--degree", c.d, "fixed degree for and/or");
    construct->add_option("--eps", c.eps_s);
    construct->add_option("--delta", c.delta_s, "extension accuracy");
    construct->add_option("--values", c.values, "comma-separated spectrum f(0),…,f(n)");
    common(construct);

    auto* verify = app.add_subcommand("verify", "re-check a serialized approximant against its target");
    verify->add_option("input", c.input)->required();
    common(verify);

    auto* oracle = app.add_subcommand("oracle", "exact minimax error E(f,d)");
    oracle->add_option("--target", c.target, "and | or | exact | values");
    oracle->add_option("--n", c.n);
    oracle->add_option("--k", c.k);
    oracle->add_option("--d,--degree", c.d)->required();
    oracle->add_option("--values", c.values);
    common(oracle);

    auto* bounds = app.add_subcommand("bounds", "closed-form degree bound as a CSV row");
    bounds->add_option("--family", c.family, "symmetric | kdnf | ed-range-free | ed-range-dep | surj");
    bounds->add_option("--n", c.n);
    bounds->add_option("--r", c.r);
    bounds->add_option("--k", c.k);
    bounds->add_option("--delta", c.delta_s, "Delta = log2(1/eps)");
    bounds->add_option("--eps", c.eps_s);
    common(bounds);

    auto* table = app.add_subcommand("table", "CSV sweep of a bound family");
    table->add_option("--family", c.family);
    common(table);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (c.precision < 64) throw InvalidArgument("--precision must be ≥ 64");
        if (*construct) return cmd_construct(c);
        if (*verify) return cmd_verify(c);
        if (*oracle) return cmd_oracle(c);
        if (*bounds) return cmd_bounds(c);
        if (*table) return cmd_table(c);
        if (*selftest) return cmd_selftest(c);
    } catch (const PrecisionRejected& e) {
        std::cerr << "precision rejected: " << e.what() << "\n";
        return kPrecision;
    } catch (const VerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
