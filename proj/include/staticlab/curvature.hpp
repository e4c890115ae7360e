#ifndef STATICLAB_CURVATURE_HPP
#define STATICLAB_CURVATURE_HPP

#include <functional>

#include "staticlab/metric.hpp"
#include "staticlab/scalar_field.hpp"
#include "staticlab/tensor.hpp"

namespace staticlab {

// Order-2 curvature data at a point, everything stored with indices down.
struct CurvaturePoint {
    int n = 0;
    Matrix g, ginv;
    TensorValue gamma;   // Gamma^m_{ij}, slots (up, low, low)
    TensorValue riemann; // R_{ijkl}
    Matrix ricci;
    double scalar = 0.0;
    Matrix schouten;     // S_{ij} = R_{ij} - R g_{ij} / (2(n-1))
    TensorValue weyl;    // W_{ijkl}
};

CurvaturePoint curvature_at(const MetricField& M, const Point& x);

TensorValue christoffel(const MetricField& M, const Point& x);
TensorValue riemann(const MetricField& M, const Point& x);

struct RicciScalarSchouten {
    Matrix ricci;
    double scalar;
    Matrix schouten;
};
RicciScalarSchouten ricci_scalar_schouten(const MetricField& M, const Point& x);

TensorValue weyl(const MetricField& M, const Point& x);

// Stencil steps (fractions of coordinate scale) for differencing derived
// tensor fields. Larger steps for finite-difference metrics keep the
// roundoff amplification of nested differencing under control.
struct FieldSteps {
    double schouten_frac; // step when differencing the Schouten field (Cotton)
    double div_frac;      // step when differencing Cotton/Weyl-divergence fields (Bach)
    static FieldSteps for_metric(const MetricField& M) {
        return M.analytic() ? FieldSteps{1.0e-3, 5.0e-3} : FieldSteps{5.0e-3, 2.0e-2};
    }
};

// C_{ijk} = S_{jk,i} - S_{ik,j}, covariant derivatives of Schouten.
TensorValue cotton(const MetricField& M, const Point& x);
TensorValue cotton(const MetricField& M, const Point& x, const FieldSteps& steps);

// (div W)_{ijk} = W_{ijkl,}^l and the residual of the Bianchi consequence
// div W = -(n-3)/(n-2) C.
TensorValue weyl_divergence(const MetricField& M, const Point& x);
double weyl_divergence_residual(const MetricField& M, const Point& x);

// (n-2) B_{jk} = -C_{ijk,}^i + S^{il} W_{ijkl}  (defined for n >= 3).
TensorValue bach(const MetricField& M, const Point& x);
TensorValue bach(const MetricField& M, const Point& x, const FieldSteps& steps);
// Independent route through the double divergence of Weyl (n >= 4 only).
TensorValue bach_from_weyl_divergence(const MetricField& M, const Point& x);

// Augmented Cotton tensor D_{ijk} = f^2 C_{ijk} - f W_{ijkl} f^l.
TensorValue d_tensor(const MetricField& M, const ScalarField& f, const Point& x);

// Scalar-field differential geometry.
TensorValue hessian(const MetricField& M, const ScalarField& f, const Point& x);
std::vector<double> gradient_upper(const MetricField& M, const ScalarField& f, const Point& x);
double laplacian(const MetricField& M, const ScalarField& f, const Point& x);

// Generic covariant differencing of tensor fields (all-lower components).
using TensorFieldFn = std::function<TensorValue(const Point&)>;

// nabla_k T_{i...}: prepends one lower slot. `second_order` selects the
// cheaper 2-point stencil used inside deeply nested divergences.
TensorValue covariant_derivative(const MetricField& M, const TensorFieldFn& field,
                                 const Point& x, double h_frac, bool second_order = false);

// nabla^i T_{... i ...} contracted on `slot`.
TensorValue covariant_divergence(const MetricField& M, const TensorFieldFn& field,
                                 const Point& x, int slot, double h_frac,
                                 bool second_order = false);

} // namespace staticlab

#endif
