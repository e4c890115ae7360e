#ifndef STATICLAB_CURVE_HPP
#define STATICLAB_CURVE_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace staticlab {

// Smooth function of one variable with derivatives available up to order 3.
// Used for warp factors r(s) and radial potentials f(s).
class Curve {
public:
    using Eval = std::function<double(double s, int order)>;

    Curve() = default;
    explicit Curve(Eval e) : eval_(std::move(e)) {}

    double operator()(double s, int order = 0) const { return eval_(s, order); }
    bool valid() const { return static_cast<bool>(eval_); }

    static Curve constant(double c) {
        return Curve([c](double, int k) { return k == 0 ? c : 0.0; });
    }

    static Curve linear(double a, double b) { // a + b s
        return Curve([a, b](double s, int k) {
            if (k == 0) return a + b * s;
            if (k == 1) return b;
            return 0.0;
        });
    }

    // c0 + amp * sin(omega s + phase)
    static Curve sinusoid(double c0, double amp, double omega = 1.0, double phase = 0.0) {
        return Curve([=](double s, int k) {
            double w = omega * s + phase;
            double p = std::pow(omega, k);
            switch (k & 3) {
                case 0: return (k == 0 ? c0 : 0.0) + amp * p * std::sin(w);
                case 1: return amp * p * std::cos(w);
                case 2: return -amp * p * std::sin(w);
                default: return -amp * p * std::cos(w);
            }
        });
    }

    static Curve sine(double omega = 1.0) { return sinusoid(0.0, 1.0, omega); }
    static Curve cosine(double omega = 1.0) { return sinusoid(0.0, 1.0, omega, M_PI / 2.0); }

    static Curve hyperbolic_sine() {
        return Curve([](double s, int k) { return (k % 2 == 0) ? std::sinh(s) : std::cosh(s); });
    }

    static Curve hyperbolic_cosine() {
        return Curve([](double s, int k) { return (k % 2 == 0) ? std::cosh(s) : std::sinh(s); });
    }

    static Curve sum(const Curve& a, const Curve& b, double cb = 1.0) {
        Eval ea = a.eval_, eb = b.eval_;
        return Curve([ea, eb, cb](double s, int k) { return ea(s, k) + cb * eb(s, k); });
    }

    Curve scaled(double c) const {
        Eval e = eval_;
        return Curve([e, c](double s, int k) { return c * e(s, k); });
    }

    Curve derivative() const {
        Eval e = eval_;
        return Curve([e](double s, int k) {
            if (k > 2) throw std::runtime_error("curve derivative order exceeded");
            return e(s, k + 1);
        });
    }

private:
    Eval eval_;
};

// Piecewise quintic Hermite interpolant through (s_i, y_i, y'_i, y''_i).
// Matching value and two derivatives at both segment ends keeps the
// interpolation error at O(h^6), so curves reconstructed from a tight ODE
// solve stay usable down to ~1e-12.
class HermiteCurve {
public:
    HermiteCurve() = default;
    HermiteCurve(std::vector<double> s, std::vector<double> y,
                 std::vector<double> dy, std::vector<double> d2y)
        : s_(std::move(s)), y_(std::move(y)), dy_(std::move(dy)), d2y_(std::move(d2y)) {
        if (s_.size() < 2 || y_.size() != s_.size() || dy_.size() != s_.size() ||
            d2y_.size() != s_.size())
            throw std::runtime_error("hermite curve: inconsistent sample arrays");
        build();
    }

    double eval(double s, int order) const {
        std::size_t seg = locate(s);
        const double* c = coef_.data() + 6 * seg;
        double t = s - s_[seg];
        switch (order) {
            case 0:
                return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
            case 1:
                return c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
            case 2:
                return 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
            case 3:
                return 6 * c[3] + t * (24 * c[4] + t * 60 * c[5]);
            default:
                throw std::runtime_error("hermite curve: derivative order exceeded");
        }
    }

    Curve as_curve() const {
        auto self = std::make_shared<HermiteCurve>(*this);
        return Curve([self](double s, int k) { return self->eval(s, k); });
    }

    double front() const { return s_.front(); }
    double back() const { return s_.back(); }
    const std::vector<double>& nodes() const { return s_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& slopes() const { return dy_; }
    const std::vector<double>& curvatures() const { return d2y_; }

private:
    void build() {
        std::size_t m = s_.size() - 1;
        coef_.resize(6 * m);
        for (std::size_t i = 0; i < m; ++i) {
            double h = s_[i + 1] - s_[i];
            double y0 = y_[i], y1 = y_[i + 1];
            double v0 = dy_[i], v1 = dy_[i + 1];
            double a0 = d2y_[i], a1 = d2y_[i + 1];
            double* c = coef_.data() + 6 * i;
            c[0] = y0;
            c[1] = v0;
            c[2] = a0 / 2.0;
            double h2 = h * h, h3 = h2 * h;
            double r0 = (y1 - y0 - v0 * h - a0 * h2 / 2.0) / h3;
            double r1 = (v1 - v0 - a0 * h) / h2;
            double r2 = (a1 - a0) / h;
            c[3] = 10.0 * r0 - 4.0 * r1 + r2 / 2.0;
            c[4] = (-15.0 * r0 + 7.0 * r1 - r2) / h;
            c[5] = (6.0 * r0 - 3.0 * r1 + r2 / 2.0) / h2;
        }
    }

    std::size_t locate(double s) const {
        if (s <= s_.front()) return 0;
        if (s >= s_.back()) return s_.size() - 2;
        std::size_t lo = 0, hi = s_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (s >= s_[mid] ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> s_, y_, dy_, d2y_;
    std::vector<double> coef_;
};

} // namespace staticlab

#endif
