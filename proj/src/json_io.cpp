#include "polyapx/json_io.hpp"

namespace polyapx {

Json rat_json(const Rational& q) { return to_string(q); }

Rational json_rat(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InvalidArgument("expected a rational string");
}

Json coef_json(const Coef& c) {
    if (auto q = std::get_if<Rational>(&c)) return Json{{"q", to_string(*q)}};
    const auto& f = std::get<BigFloat>(c);
    return Json{{"f", f.to_hex()}, {"precision_bits", f.prec()}};
}

Coef json_coef(const Json& j) {
    if (j.contains("q")) return json_rat(j.at("q"));
    return BigFloat::parse(j.at("f").get<std::string>(), j.at("precision_bits").get<long>());
}

namespace {

Json rat_list(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

std::vector<Rational> list_rat(const Json& j) {
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(json_rat(x));
    return v;
}

const char* kind_name(PolyExpr::Kind k) {
    switch (k) {
        case PolyExpr::Kind::Mono: return "mono";
        case PolyExpr::Kind::MonoF: return "monof";
        case PolyExpr::Kind::Cheb: return "cheb";
        case PolyExpr::Kind::BinomTail: return "binom_tail";
        case PolyExpr::Kind::Compose: return "compose";
        case PolyExpr::Kind::Product: return "product";
        case PolyExpr::Kind::Power: return "power";
        case PolyExpr::Kind::LinComb: return "lincomb";
    }
    return "?";
}

}  // namespace

Json expr_json(const PolyExpr& p) {
    Json j{{"kind", kind_name(p.kind())}};
    switch (p.kind()) {
        case PolyExpr::Kind::Mono:
            j["coeffs"] = rat_list(p.rat_poly().coeffs());
            break;
        case PolyExpr::Kind::MonoF: {
            j["precision_bits"] = p.precision();
            Json a = Json::array();
            for (const auto& x : p.float_poly().coeffs()) a.push_back(x.to_hex());
            j["coeffs"] = a;
            break;
        }
        case PolyExpr::Kind::Cheb:
            j["d"] = p.param_d();
            break;
        case PolyExpr::Kind::BinomTail:
            j["d"] = p.param_d();
            j["k"] = p.param_k();
            break;
        case PolyExpr::Kind::Compose:
            j["outer"] = expr_json(p.children()[0]);
            j["inner"] = expr_json(p.children()[1]);
            break;
        case PolyExpr::Kind::Product: {
            Json a = Json::array();
            for (const auto& f : p.children()) a.push_back(expr_json(f));
            j["factors"] = a;
            break;
        }
        case PolyExpr::Kind::Power:
            j["e"] = p.param_k();
            j["base"] = expr_json(p.children()[0]);
            break;
        case PolyExpr::Kind::LinComb: {
            Json c = Json::array(), t = Json::array();
            for (const auto& x : p.coefs()) c.push_back(coef_json(x));
            for (const auto& f : p.children()) t.push_back(expr_json(f));
            j["coefs"] = c;
            j["terms"] = t;
            break;
        }
    }
    return j;
}

PolyExpr json_expr(const Json& j) {
    const std::string k = j.at("kind").get<std::string>();
    if (k == "mono") return PolyExpr::mono(RatPoly(list_rat(j.at("coeffs"))));
    if (k == "monof") {
        const long prec = j.at("precision_bits").get<long>();
        std::vector<BigFloat> c;
        for (const auto& x : j.at("coeffs")) c.push_back(BigFloat::parse(x.get<std::string>(), prec));
        return PolyExpr::mono(FloatPoly(std::move(c)));
    }
    if (k == "cheb") return PolyExpr::cheb(j.at("d").get<int>());
    if (k == "binom_tail") return PolyExpr::binom_tail(j.at("d").get<int>(), j.at("k").get<int>());
    if (k == "compose") return PolyExpr::compose(json_expr(j.at("outer")), json_expr(j.at("inner")));
    if (k == "product") {
        std::vector<PolyExpr> f;
        for (const auto& x : j.at("factors")) f.push_back(json_expr(x));
        return PolyExpr::product(std::move(f));
    }
    if (k == "power") return PolyExpr::power(json_expr(j.at("base")), j.at("e").get<int>());
    if (k == "lincomb") {
        const auto& c = j.at("coefs");
        const auto& t = j.at("terms");
        if (c.size() != t.size() + 1) throw InvalidArgument("lincomb needs one more coefficient than terms");
        std::vector<std::pair<Coef, PolyExpr>> terms;
        for (size_t i = 0; i < t.size(); ++i) terms.emplace_back(json_coef(c[i + 1]), json_expr(t[i]));
        return PolyExpr::lincomb(json_coef(c[0]), std::move(terms));
    }
    throw InvalidArgument("unknown expression kind '" + k + "'");
}

Json poly_json(const RatPoly& p) {
    return Json{{"backend", "rational"}, {"precision_bits", 0}, {"degree", p.degree()}, {"coeffs", rat_list(p.coeffs())}};
}

Json poly_json(const FloatPoly& p) {
    Json a = Json::array();
    long prec = 0;
    for (const auto& x : p.coeffs()) {
        a.push_back(x.to_hex());
        prec = x.prec();
    }
    return Json{{"backend", "float"}, {"precision_bits", prec}, {"degree", p.degree()}, {"coeffs", a}};
}

Json poly_json(const PolyExpr& p) {
    Json j;
    if (p.exact()) {
        j = Json{{"backend", "rational"}, {"precision_bits", 0}, {"degree", p.degree()}};
        if (p.degree() <= kDenseCoeffMaxDegree) {
            const RatPoly e = p.expand_exact();
            j["coeffs"] = rat_list(e.coeffs());
        }
    } else {
        j = Json{{"backend", "float"}, {"precision_bits", p.precision()}, {"degree", p.degree()}};
        if (p.degree() <= kDenseCoeffMaxDegree) {
            Json a = Json::array();
            const FloatPoly e = p.expand_float(p.precision());
            for (const auto& x : e.coeffs()) a.push_back(x.to_hex());
            j["coeffs"] = a;
        }
    }
    j["expr"] = expr_json(p);
    return j;
}

PolyExpr json_poly(const Json& j) {
    if (j.contains("expr")) return json_expr(j.at("expr"));
    if (!j.contains("coeffs")) throw InvalidArgument("polynomial JSON needs \"expr\" or \"coeffs\"");
    const std::string backend = j.value("backend", "rational");
    if (backend == "rational") return PolyExpr::mono(RatPoly(list_rat(j.at("coeffs"))));
    if (backend != "float") throw InvalidArgument("unknown backend '" + backend + "'");
    const long prec = j.at("precision_bits").get<long>();
    if (prec < 64) throw InvalidArgument("precision_bits must be ≥ 64");
    std::vector<BigFloat> c;
    for (const auto& x : j.at("coeffs")) c.push_back(BigFloat::parse(x.get<std::string>(), prec));
    return PolyExpr::mono(FloatPoly(std::move(c)));
}

Json sym_json(const SymApprox& a) {
    Json j = poly_json(a.poly);
    j["target"] = "spectrum";
    j["n"] = a.spec.n;
    j["values"] = rat_list(a.spec.values);
    j["certified_eps"] = to_string(a.certified_eps);
    j["construction"] = construction_name(a.construction);
    j["argmax"] = a.argmax;
    j["exact_on"] = a.exact_on;
    return j;
}

SymApprox json_sym(const Json& j) {
    SymApprox a;
    if (j.value("target", "spectrum") != "spectrum") throw InvalidArgument("expected a spectrum target");
    a.spec = SymSpec::from_values(list_rat(j.at("values")));
    a.poly = json_poly(j);
    a.certified_eps = json_rat(j.at("certified_eps"));
    a.construction = parse_construction(j.value("construction", "interpolant"));
    a.precision = a.poly.precision();
    a.argmax = j.value("argmax", 0);
    if (j.contains("exact_on")) a.exact_on = j.at("exact_on").get<std::set<int>>();
    return a;
}

Json minimax_json(const MinimaxResult& m) {
    Json j = poly_json(m.coeffs);
    j["d"] = m.d;
    j["eps_star"] = to_string(m.eps_star);
    j["active_points"] = m.active_points;
    j["active_signs"] = m.active_signs;
    j["alternation"] = m.alternation();
    return j;
}

Json block_json(const BlockSymApprox& a) {
    Json terms = Json::array();
    for (const auto& t : a.terms)
        terms.push_back(Json{{"ell", t.ell}, {"mu", to_string(t.mu)}, {"q_err", to_string(t.q_err)}, {"q", poly_json(t.q)}});
    return Json{{"target", "surj"},
                {"n", a.n},
                {"r", a.r},
                {"general", a.general},
                {"outer", poly_json(a.outer)},
                {"outer_err", to_string(a.outer_err)},
                {"conj_err", to_string(a.conj_err)},
                {"terms", terms},
                {"certified_eps", to_string(a.certified_eps)},
                {"tracked_degree", a.tracked_degree},
                {"degree", a.tracked_degree}};
}

BlockSymApprox json_block(const Json& j) {
    BlockSymApprox a;
    a.n = j.at("n").get<int>();
    a.r = j.at("r").get<int>();
    if (a.n < 1 || a.r < 1) throw InvalidArgument("n and r must be ≥ 1");
    a.general = j.value("general", false);
    a.certified_eps = json_rat(j.at("certified_eps"));
    a.tracked_degree = j.value("tracked_degree", 0);
    a.outer_err = json_rat(j.value("outer_err", Json("0")));
    a.conj_err = json_rat(j.value("conj_err", Json("0")));
    if (j.contains("outer")) {
        a.outer = json_poly(j.at("outer"));
        a.outer_degree = a.outer.degree();
        if (a.r <= a.n) a.outer_values = count_values(a.outer, a.outer, a.r);
    }
    for (const auto& t : j.at("terms")) {
        BlockTerm b;
        b.ell = t.at("ell").get<int>();
        if (b.ell < 0 || b.ell > a.r) throw InvalidArgument("term size out of range");
        b.mu = json_rat(t.at("mu"));
        b.q = json_poly(t.at("q"));
        b.degree = std::max(b.q.degree(), 0);
        b.q_err = json_rat(t.value("q_err", Json("0")));
        b.q_values = count_values(b.q, b.q, a.n);
        a.terms.push_back(std::move(b));
    }
    return a;
}

VerifyReport verify_json(const Json& j, long prec) {
    VerifyReport r;
    const std::string target = j.value("target", "");
    if (target == "surj") {
        const auto a = json_block(j);
        const auto s = sweep_block(a);
        r.max_err = s.max_err;
        r.certified = a.certified_eps;
        r.argmax = "[";
        for (size_t i = 0; i < s.argmax.size(); ++i) r.argmax += (i ? "," : "") + std::to_string(s.argmax[i]);
        r.argmax += "]";
    } else if (target == "spectrum") {
        const auto a = json_sym(j);
        const PolyExpr p = a.poly;
        const auto s = sweep_weights([&](long) { return p; }, a.spec.values,
                                     p.exact() ? prec : std::max(prec, p.precision()));
        r.max_err = s.max_err;
        r.certified = a.certified_eps;
        r.argmax = std::to_string(s.argmax);
    } else {
        throw InvalidArgument("verify expects a spectrum or surj approximant");
    }
    r.pass = r.max_err <= r.certified;
    return r;
}

}  // namespace polyapx
