#include "staticlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace staticlab {

namespace {

// Dormand-Prince 5(4) tableau.
const double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
const double A21 = 1.0 / 5;
const double A31 = 3.0 / 40, A32 = 9.0 / 40;
const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
             A54 = -212.0 / 729;
const double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
             A65 = -5103.0 / 18656;
const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
             B6 = 11.0 / 84;
const double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
             E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
             E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

} // namespace

Trajectory integrate_ode(const OdeSystem& sys, std::vector<double> y0, double s0, double s1,
                         const OdeOptions& opts) {
    const int n = sys.dim;
    const double dir = (s1 >= s0) ? 1.0 : -1.0;
    const double span = std::fabs(s1 - s0);
    if (span == 0.0) throw std::runtime_error("ode: empty span");

    Trajectory tr;
    tr.dim_ = n;

    std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n);
    double s = s0;
    sys.rhs(s, y.data(), k1.data());

    auto push_node = [&](double sv, const std::vector<double>& yv, const std::vector<double>& dyv) {
        tr.s_.push_back(sv);
        tr.y_.insert(tr.y_.end(), yv.begin(), yv.end());
        tr.dy_.insert(tr.dy_.end(), dyv.begin(), dyv.end());
        if (sys.rhs2) {
            std::vector<double> d2(n);
            sys.rhs2(sv, yv.data(), d2.data());
            tr.d2y_.insert(tr.d2y_.end(), d2.begin(), d2.end());
        }
    };
    push_node(s, y, k1);

    double h = dir * std::min({span / 16.0, opts.max_step, 0.1});
    long steps = 0;
    while (dir * (s1 - s) > 1e-14 * span) {
        if (++steps > opts.max_steps) throw std::runtime_error("ode: step limit exceeded");
        if (dir * (s + h - s1) > 0.0) h = s1 - s;

        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * A21 * k1[i];
        sys.rhs(s + C2 * h, yt.data(), k2.data());
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        sys.rhs(s + C3 * h, yt.data(), k3.data());
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        sys.rhs(s + C4 * h, yt.data(), k4.data());
        for (int i = 0; i < n; ++i)
            yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        sys.rhs(s + C5 * h, yt.data(), k5.data());
        for (int i = 0; i < n; ++i)
            yt[i] = y[i] +
                    h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        sys.rhs(s + h, yt.data(), k6.data());
        for (int i = 0; i < n; ++i)
            y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        sys.rhs(s + h, y5.data(), k7.data());

        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = opts.atol + opts.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / n);

        if (err <= 1.0) {
            s += h;
            y = y5;
            k1 = k7;
            push_node(s, y, k1);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::fabs(h) > opts.max_step) h = dir * opts.max_step;
        if (std::fabs(h) < 1e-14 * span) throw std::runtime_error("ode: step underflow");
    }
    return tr;
}

double Trajectory::eval(double s, int comp, int order) const {
    std::vector<double> yv;
    // locate segment
    const auto& sv = s_;
    bool fwd = sv.back() >= sv.front();
    std::size_t lo = 0, hi = sv.size() - 1;
    if (fwd) {
        if (s <= sv.front()) hi = 1;
        else if (s >= sv.back()) lo = sv.size() - 2;
        else {
            while (hi - lo > 1) {
                std::size_t mid = (lo + hi) / 2;
                (s >= sv[mid] ? lo : hi) = mid;
            }
        }
    } else {
        if (s >= sv.front()) hi = 1;
        else if (s <= sv.back()) lo = sv.size() - 2;
        else {
            while (hi - lo > 1) {
                std::size_t mid = (lo + hi) / 2;
                (s <= sv[mid] ? lo : hi) = mid;
            }
        }
    }
    std::size_t i = lo;
    double h = sv[i + 1] - sv[i];
    double y0 = y_[i * dim_ + comp], y1 = y_[(i + 1) * dim_ + comp];
    double v0 = dy_[i * dim_ + comp], v1 = dy_[(i + 1) * dim_ + comp];
    if (!d2y_.empty()) {
        double a0 = d2y_[i * dim_ + comp], a1 = d2y_[(i + 1) * dim_ + comp];
        HermiteCurve seg({sv[i], sv[i + 1]}, {y0, y1}, {v0, v1}, {a0, a1});
        return seg.eval(s, order);
    }
    // cubic Hermite
    double t = (s - sv[i]) / h;
    double h00 = 2 * t * t * t - 3 * t * t + 1, h10 = t * t * t - 2 * t * t + t;
    double h01 = -2 * t * t * t + 3 * t * t, h11 = t * t * t - t * t;
    if (order == 0) return h00 * y0 + h * h10 * v0 + h01 * y1 + h * h11 * v1;
    if (order == 1) {
        double d00 = 6 * t * t - 6 * t, d10 = 3 * t * t - 4 * t + 1;
        double d01 = -6 * t * t + 6 * t, d11 = 3 * t * t - 2 * t;
        return (d00 * y0 + h * d10 * v0 + d01 * y1 + h * d11 * v1) / h;
    }
    throw std::runtime_error("trajectory: cubic dense output supports order <= 1");
}

void Trajectory::eval_state(double s, std::vector<double>& y) const {
    y.resize(dim_);
    for (int c = 0; c < dim_; ++c) y[c] = eval(s, c, 0);
}

HermiteCurve Trajectory::component_curve(int comp) const {
    if (d2y_.empty())
        throw std::runtime_error("trajectory: second derivatives required for component curves");
    std::size_t m = s_.size();
    std::vector<double> yv(m), dv(m), av(m);
    for (std::size_t i = 0; i < m; ++i) {
        yv[i] = y_[i * dim_ + comp];
        dv[i] = dy_[i * dim_ + comp];
        av[i] = d2y_[i * dim_ + comp];
    }
    std::vector<double> sv = s_;
    if (sv.back() < sv.front()) {
        std::reverse(sv.begin(), sv.end());
        std::reverse(yv.begin(), yv.end());
        std::reverse(dv.begin(), dv.end());
        std::reverse(av.begin(), av.end());
    }
    return HermiteCurve(sv, yv, dv, av);
}

double brent_root(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::runtime_error("brent: root not bracketed");
    if (std::fabs(fa) < std::fabs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool mflag = true;
    for (int it = 0; it < 200; ++it) {
        if (fb == 0.0 || std::fabs(b - a) < tol) return b;
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        double lo = (3 * a + b) / 4, hi = b;
        if (lo > hi) std::swap(lo, hi);
        bool cond = (s < lo || s > hi) || (mflag && std::fabs(s - b) >= std::fabs(b - c) / 2) ||
                    (!mflag && std::fabs(s - b) >= std::fabs(c - d) / 2) ||
                    (mflag && std::fabs(b - c) < tol) || (!mflag && std::fabs(c - d) < tol);
        if (cond) {
            s = (a + b) / 2;
            mflag = true;
        } else {
            mflag = false;
        }
        double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::fabs(fa) < std::fabs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

} // namespace staticlab
