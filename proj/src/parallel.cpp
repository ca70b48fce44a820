#include "polyapx/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace polyapx {

unsigned worker_count() {
    if (const char* e = std::getenv("POLYAPX_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    const size_t w = std::min<size_t>(worker_count(), n);
    if (w <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> th;
    for (size_t k = 0; k < w; ++k) {
        th.emplace_back([&, k] {
            const size_t lo = n * k / w, hi = n * (k + 1) / w;
            try {
                for (size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : th) t.join();
    if (err) std::rethrow_exception(err);
}

GridMax parallel_max(size_t n, const std::function<BigFloat(size_t)>& f) {
    std::vector<BigFloat> v(n);
    parallel_for(n, [&](size_t i) { v[i] = f(i); });
    GridMax best{n ? v[0] : BigFloat(), 0};
    for (size_t i = 1; i < n; ++i)
        if (v[i] > best.value) best = {v[i], i};
    return best;
}

}  // namespace polyapx

namespace polyapx {

std::vector<Rational> grid(const Rational& a, const Rational& b, long density, bool open_left) {
    if (density < 1) throw InvalidArgument("grid density must be positive");
    std::vector<Rational> out;
    if (b < a) return out;
    const Rational step(1, density);
    Rational t = a;
    if (open_left) t += step;
    for (; t < b; t += step) out.push_back(t);
    if (!(open_left && b == a)) out.push_back(b);
    return out;
}

}  // namespace polyapx
