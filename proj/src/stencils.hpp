#ifndef STATICLAB_SRC_STENCILS_HPP
#define STATICLAB_SRC_STENCILS_HPP

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "staticlab/chart.hpp"

namespace staticlab::detail {

struct Stencil {
    int order;    // derivative order
    int accuracy; // 2 or 4
    std::vector<std::pair<int, double>> taps;
    int reach() const {
        int r = 0;
        for (const auto& [off, w] : taps) r = std::max(r, std::abs(off));
        return r;
    }
};

inline const Stencil& d1_o4() {
    static const Stencil s{1, 4, {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
    return s;
}
inline const Stencil& d2_o4() {
    static const Stencil s{
        2, 4, {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}}};
    return s;
}
inline const Stencil& d1_o2() {
    static const Stencil s{1, 2, {{-1, -0.5}, {1, 0.5}}};
    return s;
}
inline const Stencil& d2_o2() {
    static const Stencil s{2, 2, {{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
    return s;
}
inline const Stencil& d3_o2() {
    static const Stencil s{3, 2, {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}};
    return s;
}

using VecFn = std::function<void(const Point&, std::vector<double>&)>;

// Apply a 1D stencil along coordinate k of a vector-valued function.
inline void apply_stencil(const VecFn& fn, const Point& x, int k, double h, const Stencil& st,
                          std::vector<double>& out, std::vector<double>& scratch) {
    const double inv = 1.0 / std::pow(h, st.order);
    std::fill(out.begin(), out.end(), 0.0);
    Point y = x;
    for (const auto& [off, w] : st.taps) {
        y[k] = x[k] + off * h;
        fn(y, scratch);
        const double c = w * inv;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * scratch[i];
    }
}

// Shrink a step so the stencil stays inside a non-periodic domain.
inline double clamp_step(const Chart& chart, const Point& x, int k, double h, int reach) {
    if (chart.periodic(k)) return h;
    double room = std::min(x[k] - chart.lo(k), chart.hi(k) - x[k]);
    if (room <= 0.0) return h * 1e-3;
    double fit = room / (reach + 0.25);
    return std::min(h, fit);
}

} // namespace staticlab::detail

#endif
