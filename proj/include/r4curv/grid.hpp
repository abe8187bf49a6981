#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "r4curv/surface.hpp"

namespace r4curv {

struct GridSpec {
    int nu = 32, nv = 32;
    double inset = 0.0; // fraction of each open interval trimmed per side
};

inline std::vector<double> grid_axis(const DomainInterval& r, int n, double inset) {
    std::vector<double> out;
    out.reserve(n);
    if (r.periodic) {
        // full period, endpoint omitted: it aliases the first sample
        for (int i = 0; i < n; ++i) out.push_back(r.lo + r.span() * i / n);
    } else {
        double lo = r.lo + inset * r.span();
        double span = r.span() * (1.0 - 2.0 * inset);
        // cell centers: every sample strictly inside the open interval
        for (int i = 0; i < n; ++i) out.push_back(lo + span * (i + 0.5) / n);
    }
    return out;
}

struct GridPoint {
    double u, v;
};

// Row-major over v-fast ordering; consumers rely on this order being stable.
inline std::vector<GridPoint> grid_points(const SurfaceDef& s, const GridSpec& g) {
    std::vector<double> us = grid_axis(s.u_range, g.nu, g.inset);
    std::vector<double> vs = grid_axis(s.v_range, g.nv, g.inset);
    std::vector<GridPoint> out;
    out.reserve(us.size() * vs.size());
    for (double u : us)
        for (double v : vs) out.push_back({u, v});
    return out;
}

inline int thread_count() {
    if (const char* env = std::getenv("R4CURV_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

// Index-sliced parallel loop. Each index owns its output slot, so results are
// byte-identical for any thread count; the first worker's exception wins.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = static_cast<int>(std::min<std::size_t>(workers, n));
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace r4curv
