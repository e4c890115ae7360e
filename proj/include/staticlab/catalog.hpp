#ifndef STATICLAB_CATALOG_HPP
#define STATICLAB_CATALOG_HPP

#include <functional>
#include <string>
#include <vector>

#include "staticlab/statics.hpp"

namespace staticlab {

// Constructive catalog of classified vacuum static spaces. Every entry is
// certified by three independent pipelines: the vacuum-static residual, the
// Bach check, and the Einstein-slice check with constant (n-2) k.
struct CatalogEntry {
    std::string name;
    int dim = 3;
    std::vector<std::string> tags; // flat, Sn, Hn, S1xS2, constant-r, periodic-r, non-compact
    double expected_scalar = 0.0;  // catalog normalization of R
    bool compact = false;
    bool constant_f = false;
    double einstein_k = std::numeric_limits<double>::quiet_NaN(); // k for warped entries
    std::function<StaticModel()> build;
};

const std::vector<CatalogEntry>& catalog();

struct CatalogCertification {
    std::string name;
    double vacuum_residual = 0.0;
    double scalar_deviation = 0.0;      // max |R - expected|
    double max_bach = 0.0;
    double max_d = 0.0;
    double slice_einstein_dev = 0.0;    // NaN when f is constant
    double slice_constant_expected = 0.0; // (n-2) k
    double slice_constant_measured = 0.0; // Einstein constant of the fiber
    bool pass = false;
};

struct CertifyTolerances {
    double vacuum = 1.0e-6;
    double bach = 3.0e-5;
    double d_flat = 1.0e-5;
    double slice = 1.0e-5;
};

CatalogCertification certify_entry(const CatalogEntry& entry,
                                   const CertifyTolerances& tol = {}, int samples = 10);

// Model registry: catalog entries plus the manufactured test models
// (warped3, warped4, warped5, s3-cpe, ...).
StaticModel build_model(const std::string& name);
std::vector<std::string> model_names();

} // namespace staticlab

#endif
