#pragma once

#include <json.hpp>

#include "polyapx/composed.hpp"
#include "polyapx/oracle.hpp"
#include "polyapx/symmetric.hpp"

namespace polyapx {

using Json = nlohmann::ordered_json;

// dense "coeffs" are emitted only up to this degree; the expression tree is always present
constexpr int kDenseCoeffMaxDegree = 64;

Json rat_json(const Rational& q);
Rational json_rat(const Json& j);

Json coef_json(const Coef& c);
Coef json_coef(const Json& j);

Json expr_json(const PolyExpr& p);
PolyExpr json_expr(const Json& j);

Json poly_json(const RatPoly& p);
Json poly_json(const FloatPoly& p);
// {"backend", "precision_bits", "degree", "coeffs"?, "expr"}
Json poly_json(const PolyExpr& p);
PolyExpr json_poly(const Json& j);  // from "expr", else from dense "coeffs"

Json sym_json(const SymApprox& a);
SymApprox json_sym(const Json& j);

Json minimax_json(const MinimaxResult& m);
Json block_json(const BlockSymApprox& a);
BlockSymApprox json_block(const Json& j);

struct VerifyReport {
    bool pass = false;
    Rational max_err;
    Rational certified;
    std::string argmax;  // weight, or column-weight vector "[w1,...]"
};
// re-checks a serialized spectrum or surj approximant exhaustively
VerifyReport verify_json(const Json& j, long prec = kDefaultPrecision);

}  // namespace polyapx
