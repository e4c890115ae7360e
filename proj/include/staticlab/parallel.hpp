#ifndef STATICLAB_PARALLEL_HPP
#define STATICLAB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace staticlab {

// Evaluation sweeps are pure; STATICLAB_THREADS caps the worker count.
inline int max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("STATICLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < static_cast<long>(hw)) return static_cast<int>(v);
        if (v >= static_cast<long>(hw)) return static_cast<int>(hw);
        return 1;
    }
    return static_cast<int>(hw);
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int nt = max_threads();
    if (nt <= 1 || count < 4) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t chunk = (count + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace staticlab

#endif
