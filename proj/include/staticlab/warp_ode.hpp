#ifndef STATICLAB_WARP_ODE_HPP
#define STATICLAB_WARP_ODE_HPP

#include <string>

#include "staticlab/ode.hpp"
#include "staticlab/statics.hpp"

namespace staticlab {

// The radial system classifying warped vacuum static spaces:
//   f'' + (n-1) (r'/r) f' + R/(n-1) f = 0,      r' f' - r'' f = 0,
// with first integrals
//   a = r^{n-1} r'' + R/(n(n-1)) r^n,
//   k = (r')^2 + R/(n(n-1)) r^2 + 2a/(n-2) r^{2-n}.
// The a-integral turns the r-equation into the closed form
//   r'' = a r^{1-n} - R/(n(n-1)) r,
// which is what the integrator uses (the second equation solves for r''
// only where f != 0); the second equation is then monitored as a constraint.
struct WarpOdeParams {
    int n = 3;
    double R = 6.0;
    double a = 0.0;
};

struct OdeState {
    double s = 0.0;
    double r = 1.0, rp = 0.0;
    double f = 0.0, fp = 1.0;
};

struct FirstIntegrals {
    double a = 0.0;
    double k = 0.0;
};

double warp_acceleration(const WarpOdeParams& p, double r);
FirstIntegrals first_integrals(const WarpOdeParams& p, double r, double rp);
// From a raw state via the constraint r'' = r' f' / f (requires |f| > 0).
FirstIntegrals first_integrals_from_state(int n, double R, const OdeState& st);

struct WarpTrajectory {
    WarpOdeParams params;
    Trajectory traj; // state (r, r', f, f')
    double a_drift = 0.0;          // drift of a reconstructed through the constraint
    double k_drift = 0.0;          // drift of the k integral
    double constraint_residual = 0.0; // max |r' f' - r'' f|
    double min_r = 0.0;
    bool collapsed = false;        // r reached ~0 and the trajectory was cut
    double collapse_s = 0.0;
};

WarpTrajectory integrate_warp_ode(const WarpOdeParams& p, const OdeState& y0, double span,
                                  const OdeOptions& opts = {});

// Effective potential of the reduced (r, r') system: (r')^2 = k - V(r),
// V(r) = R/(n(n-1)) r^2 + 2a/(n-2) r^{2-n}.
struct EffectivePotential {
    int n;
    double R, a;
    double value(double r) const;
    double deriv(double r) const;
    bool has_well() const { return R > 0.0 && a > 0.0; }
    double well_center() const; // r* with V'(r*) = 0
};

struct PeriodicWarp {
    bool found = false;
    std::string diagnostic;
    WarpOdeParams params;
    double period = 0.0;
    double k = 0.0;
    double r_max = 0.0, r_min = 0.0;
    double closure_error = 0.0;
    Curve r, f; // f normalized to max |f| = 1; valid on [-0.3 T, 1.3 T]
};

// Locate a closed orbit of the reduced system at the given a; `amplitude`
// sets the turning point r(0) = amplitude * r*. amplitude = 1 degenerates
// to the constant-r solution.
PeriodicWarp find_periodic_warp(int n, double R, double a, double amplitude = 1.25,
                                const OdeOptions& opts = {});

// Assemble the closed vacuum static model S^1 x_r E from a periodic warp;
// the fiber is chosen Einstein with Ric = (n-2) k g_E.
StaticModel periodic_warp_model(const PeriodicWarp& pw, std::string name = "");

} // namespace staticlab

#endif
