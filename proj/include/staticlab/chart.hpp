#ifndef STATICLAB_CHART_HPP
#define STATICLAB_CHART_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "staticlab/errors.hpp"

namespace staticlab {

using Point = std::vector<double>;

// A coordinate chart: names, domain intervals, periodicity flags.
// Non-periodic interval ends may be coordinate singularities of the metric
// (polar-type charts); interior sampling keeps a guard margin from them.
class Chart {
public:
    Chart() = default;
    Chart(int dim, std::vector<std::string> names,
          std::vector<std::array<double, 2>> domain, std::vector<bool> periodic)
        : dim_(dim), names_(std::move(names)), domain_(std::move(domain)),
          periodic_(std::move(periodic)) {
        if (dim_ < 1) throw ConfigError("chart dimension must be positive");
        for (int k = 0; k < dim_; ++k) {
            if (!(domain_[k][1] > domain_[k][0]))
                throw ConfigError("degenerate domain for coordinate " + names_[k]);
        }
    }

    int dim() const { return dim_; }
    const std::string& name(int k) const { return names_[k]; }
    double lo(int k) const { return domain_[k][0]; }
    double hi(int k) const { return domain_[k][1]; }
    double extent(int k) const { return domain_[k][1] - domain_[k][0]; }
    bool periodic(int k) const { return periodic_[k]; }
    double period(int k) const { return extent(k); }

    // Characteristic length used to size finite-difference steps.
    double scale(int k) const { return std::min(extent(k), 2.0 * M_PI); }

    bool contains(const Point& x, double margin_frac = 0.0) const {
        for (int k = 0; k < dim_; ++k) {
            if (periodic_[k]) continue;
            double m = margin_frac * extent(k);
            if (x[k] < domain_[k][0] + m || x[k] > domain_[k][1] - m) return false;
        }
        return true;
    }

    void require_interior(const Point& x, double margin_frac = 0.0) const {
        if (static_cast<int>(x.size()) != dim_ || !contains(x, margin_frac))
            throw OutOfDomainError(x);
    }

    Point clamp_interior(Point x, double margin_frac) const {
        for (int k = 0; k < dim_; ++k) {
            if (periodic_[k]) continue;
            double m = margin_frac * extent(k);
            x[k] = std::clamp(x[k], domain_[k][0] + m, domain_[k][1] - m);
        }
        return x;
    }

    // Concatenate an s-line with a fiber chart (warped products).
    static Chart product(const Chart& base, const Chart& fiber) {
        std::vector<std::string> names;
        std::vector<std::array<double, 2>> dom;
        std::vector<bool> per;
        for (int k = 0; k < base.dim(); ++k) {
            names.push_back(base.name(k));
            dom.push_back({base.lo(k), base.hi(k)});
            per.push_back(base.periodic(k));
        }
        for (int k = 0; k < fiber.dim(); ++k) {
            names.push_back(fiber.name(k));
            dom.push_back({fiber.lo(k), fiber.hi(k)});
            per.push_back(fiber.periodic(k));
        }
        return Chart(base.dim() + fiber.dim(), std::move(names), std::move(dom), std::move(per));
    }

    static Chart line(double a, double b, bool periodic = false, std::string name = "s") {
        return Chart(1, {std::move(name)}, {{a, b}}, {periodic});
    }

    static Chart box(int dim, double a, double b, bool periodic = false) {
        std::vector<std::string> names;
        std::vector<std::array<double, 2>> dom;
        std::vector<bool> per;
        for (int k = 0; k < dim; ++k) {
            names.push_back("x" + std::to_string(k + 1));
            dom.push_back({a, b});
            per.push_back(periodic);
        }
        return Chart(dim, std::move(names), std::move(dom), std::move(per));
    }

private:
    int dim_ = 0;
    std::vector<std::string> names_;
    std::vector<std::array<double, 2>> domain_;
    std::vector<bool> periodic_;
};

} // namespace staticlab

#endif
