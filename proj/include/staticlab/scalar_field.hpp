#ifndef STATICLAB_SCALAR_FIELD_HPP
#define STATICLAB_SCALAR_FIELD_HPP

#include <functional>
#include <vector>

#include "staticlab/chart.hpp"
#include "staticlab/curve.hpp"

namespace staticlab {

struct ScalarJet {
    double value = 0.0;
    std::vector<double> grad;  // coordinate partials d_k f
    std::vector<double> hess;  // coordinate partials d_k d_l f (row-major)
    double d1(int k) const { return grad[k]; }
    double d2(int k, int l) const { return hess[static_cast<std::size_t>(k) * grad.size() + l]; }
};

// Smooth scalar field on a chart, with optional analytic partials; falls
// back to the same stencils the metric engine uses.
class ScalarField {
public:
    using Value = std::function<double(const Point&)>;
    using Partials1 = std::function<void(const Point&, std::vector<double>&)>;
    using Partials2 = std::function<void(const Point&, std::vector<double>&)>;

    ScalarField() = default;
    ScalarField(Chart chart, Value v) : chart_(std::move(chart)), value_(std::move(v)) {}

    void set_analytic_partials(Partials1 p1, Partials2 p2) {
        p1_ = std::move(p1);
        p2_ = std::move(p2);
    }

    bool valid() const { return static_cast<bool>(value_); }
    const Chart& chart() const { return chart_; }
    double operator()(const Point& x) const { return value_(x); }

    ScalarJet jet(const Point& x, int order = 2) const;

    // f depends on the first coordinate only (warped-product potentials).
    static ScalarField radial(const Chart& chart, const Curve& c);
    static ScalarField coordinate(const Chart& chart, int k);
    static ScalarField constant(const Chart& chart, double v);

    // Whether this field was built as radial(...) (level sets are s-slices).
    bool is_radial() const { return radial_; }
    const Curve& radial_curve() const { return curve_; }

private:
    Chart chart_;
    Value value_;
    Partials1 p1_;
    Partials2 p2_;
    bool radial_ = false;
    Curve curve_;
};

} // namespace staticlab

#endif
