#ifndef STATICLAB_QUADRATURE_HPP
#define STATICLAB_QUADRATURE_HPP

#include <array>
#include <functional>
#include <vector>

#include "staticlab/statics.hpp"

namespace staticlab {

// Integration domain on a warped model: the whole (closed) manifold or the
// region c1 < f < c2 bounded by regular level sets.
struct Region {
    enum class Kind { ClosedManifold, BetweenLevels };
    Kind kind = Kind::ClosedManifold;
    double c1 = 0.0, c2 = 0.0;
    std::vector<std::array<double, 2>> intervals; // s-intervals covering the region
};

Region region_closed(const StaticModel& model);
// Connected components of {c1 < f < c2} whose boundary consists of genuine
// level-set crossings; components touching the chart ends are excluded
// (their boundary is not a level set). Both values must be regular.
Region region_between_levels(const StaticModel& model, double c1, double c2);

struct IntegralResult {
    double value = 0.0;
    double error_indicator = 0.0; // |I(2m) - I(m)| from node doubling
    int nodes = 0;
    bool converged = false;
};

// Integral of a radial function against the volume element:
// sum_intervals Vol(fibers) * int phi(s) prod_i w_i(s)^{m_i} ds.
// Gauss-Legendre on intervals; trapezoid when the full periodic circle.
IntegralResult integrate_radial(const StaticModel& model,
                                const std::function<double(double)>& phi, const Region& region,
                                int nodes = 48, double conv_tol = 1.0e-6);

// Scalar invariants of warped models depend on s only, so volume integrals
// reduce to radial ones; the callback receives a full slice point.
IntegralResult integrate_invariant(const StaticModel& model,
                                   const std::function<double(const Point&)>& fn,
                                   const Region& region, int nodes = 48,
                                   double conv_tol = 1.0e-6);

struct IdentityCheck {
    double lhs = 0.0, rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool converged = false;
    int nodes = 0;
};

// int f^p B_jk f^{j,k} = 1/(2(n-1)) int f^{p-2} |D|^2 over c1 < f < c2.
IdentityCheck check_main_identity(const StaticModel& model, double c1, double c2, int p,
                                  int nodes = 48);

// Closed-manifold identity:
// int f^p (div div B) = -p(n-4)/(2(n-1)(n-2)) int f^{p-2} D.C
IdentityCheck check_full_divergence_identity(const StaticModel& model, int p, int nodes = 24);

// Dimension-3 specialization: int f^p C_{ijk,}^{ijk} = -(p/4) int f^p |C|^2.
IdentityCheck check_3d_identity(const StaticModel& model, int p, int nodes = 32);

// The coefficient of the closed-manifold identity and its n=3 value.
double full_divergence_coefficient(int n, int p);

// Pointwise vanishing of n^i f^j D_{ijk} on a level set (the boundary-term
// mechanism of the between-levels identity).
double boundary_antisymmetry_residual(const StaticModel& model, double c);

// Model with f replaced by f + eps * sin(freq s + phase): negative controls.
StaticModel perturb_potential(const StaticModel& model, double eps, double freq = 2.0,
                              double phase = 0.3);

// Nodes/weights of the m-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace staticlab

#endif
