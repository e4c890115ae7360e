#ifndef STATICLAB_ODE_HPP
#define STATICLAB_ODE_HPP

#include <functional>
#include <limits>
#include <vector>

#include "staticlab/curve.hpp"

namespace staticlab {

struct OdeSystem {
    int dim = 0;
    // y' = rhs(s, y)
    std::function<void(double, const double*, double*)> rhs;
    // Optional analytic y'' for quintic dense output; without it the
    // interpolant degrades to cubic Hermite.
    std::function<void(double, const double*, double*)> rhs2;
};

struct OdeOptions {
    double rtol = 1.0e-11;
    double atol = 1.0e-13;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 4000000;
};

// Dense-output trajectory from the adaptive Dormand-Prince 5(4) solver.
class Trajectory {
public:
    int dim() const { return dim_; }
    double front() const { return s_.front(); }
    double back() const { return s_.back(); }
    std::size_t steps() const { return s_.size() - 1; }
    const std::vector<double>& nodes() const { return s_; }
    double node_value(std::size_t i, int comp) const { return y_[i * dim_ + comp]; }
    double node_derivative(std::size_t i, int comp) const { return dy_[i * dim_ + comp]; }

    // Interpolated component or its s-derivative (order <= 3).
    double eval(double s, int comp, int order = 0) const;
    void eval_state(double s, std::vector<double>& y) const;

    bool has_second_derivatives() const { return !d2y_.empty(); }
    HermiteCurve component_curve(int comp) const;

private:
    friend Trajectory integrate_ode(const OdeSystem&, std::vector<double>, double, double,
                                    const OdeOptions&);
    int dim_ = 0;
    std::vector<double> s_;
    std::vector<double> y_, dy_, d2y_; // node-major, dim-stride
};

Trajectory integrate_ode(const OdeSystem& sys, std::vector<double> y0, double s0, double s1,
                         const OdeOptions& opts = {});

// Brent root bracket solve for smooth callables.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double tol = 1.0e-13);

} // namespace staticlab

#endif
