#pragma once

#include <vector>

#include "polyapx/poly.hpp"

namespace polyapx {

// T_d(t) by T_{k+1} = 2t·T_k − T_{k−1}; exact for rational t
template <class T>
T cheb_eval(int d, const T& t) {
    if (d < 0) throw InvalidArgument("negative Chebyshev degree");
    T a = like(t, 1);
    if (d == 0) return a;
    T b = t;
    for (int k = 1; k < d; ++k) {
        T c = t * b;
        c += c;
        c -= a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

RatPoly cheb_coeffs(int d);

enum class ChebNodeKind { Root, Extremum };

struct ChebNode {
    int d;
    int i;
    ChebNodeKind kind;
    BigFloat location;  // cos((2i−1)π/2d) for roots (i=1..d), cos(iπ/d) for extrema (i=0..d)
};

std::vector<ChebNode> cheb_nodes(int d, ChebNodeKind kind, long prec = kDefaultPrecision);

// (t ± √(t²−1))^d averaged; only meaningful for |t| ≥ 1
BigFloat cheb_closed_form(int d, const BigFloat& t);

// 2^(d−1)·∏(t − root_i)
BigFloat cheb_factored(int d, const BigFloat& t);

}  // namespace polyapx
