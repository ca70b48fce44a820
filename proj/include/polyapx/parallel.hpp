#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "polyapx/bigfloat.hpp"
#include "polyapx/errors.hpp"

namespace polyapx {

unsigned worker_count();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks; callers
// write into per-index slots so results never depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

// max of f over indices with deterministic tie-break toward the smaller index
struct GridMax {
    BigFloat value;
    size_t index = 0;
};
GridMax parallel_max(size_t n, const std::function<BigFloat(size_t)>& f);

}  // namespace polyapx

namespace polyapx {

// a + j/density for j = 0.., plus b itself; open_left drops a
std::vector<Rational> grid(const Rational& a, const Rational& b, long density, bool open_left = false);

}  // namespace polyapx
