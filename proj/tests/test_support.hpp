#ifndef STATICLAB_TESTS_SUPPORT_HPP
#define STATICLAB_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>

#include "staticlab/catalog.hpp"
#include "staticlab/metric.hpp"

namespace testsupport {

using namespace staticlab;

// Random smooth metric: delta_ij + sum of low-frequency trigonometric bumps
// with analytic jets, kept safely positive definite.
inline MetricField random_trig_metric(int n, unsigned seed, double amplitude = 0.08,
                                      int modes = 3) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 2);

    struct Mode {
        std::vector<std::vector<double>> amp; // n x n symmetric
        std::vector<double> k;
        double phase;
    };
    auto modes_data = std::make_shared<std::vector<Mode>>();
    for (int m = 0; m < modes; ++m) {
        Mode md;
        md.amp.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double a = amplitude / modes * uni(rng);
                md.amp[i][j] = a;
                md.amp[j][i] = a;
            }
        md.k.resize(n);
        for (int i = 0; i < n; ++i) md.k[i] = freq(rng) * 1.0;
        md.phase = uni(rng) * M_PI;
        modes_data->push_back(std::move(md));
    }

    Chart chart = Chart::box(n, 0.0, 2.0 * M_PI, /*periodic=*/true);
    auto wave = [modes_data, n](const Point& x, int m) {
        double w = (*modes_data)[m].phase;
        for (int i = 0; i < n; ++i) w += (*modes_data)[m].k[i] * x[i];
        return w;
    };
    MetricField metric(chart, [modes_data, wave, n](const Point& x, Matrix& g) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = (i == j) ? 1.0 : 0.0;
        for (std::size_t m = 0; m < modes_data->size(); ++m) {
            double s = std::sin(wave(x, m));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g(i, j) += (*modes_data)[m].amp[i][j] * s;
        }
    }, "random-trig");

    auto deriv = [modes_data, wave, n](int order) {
        return [modes_data, wave, n, order](const Point& x, std::vector<double>& out) {
            std::fill(out.begin(), out.end(), 0.0);
            for (std::size_t m = 0; m < modes_data->size(); ++m) {
                const auto& md = (*modes_data)[m];
                double w = wave(x, m);
                double tr;
                switch (order) {
                    case 1: tr = std::cos(w); break;
                    case 2: tr = -std::sin(w); break;
                    default: tr = -std::cos(w);
                }
                if (order == 1) {
                    for (int k = 0; k < n; ++k)
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j)
                                out[(static_cast<std::size_t>(k) * n + i) * n + j] +=
                                    md.amp[i][j] * md.k[k] * tr;
                } else if (order == 2) {
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l)
                            for (int i = 0; i < n; ++i)
                                for (int j = 0; j < n; ++j)
                                    out[((static_cast<std::size_t>(k) * n + l) * n + i) * n + j] +=
                                        md.amp[i][j] * md.k[k] * md.k[l] * tr;
                } else {
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l)
                            for (int q = 0; q < n; ++q)
                                for (int i = 0; i < n; ++i)
                                    for (int j = 0; j < n; ++j)
                                        out[(((static_cast<std::size_t>(k) * n + l) * n + q) * n +
                                             i) * n + j] +=
                                            md.amp[i][j] * md.k[k] * md.k[l] * md.k[q] * tr;
                }
            }
        };
    };
    metric.set_analytic_derivatives(deriv(1), deriv(2), deriv(3));
    return metric;
}

} // namespace testsupport

#endif
