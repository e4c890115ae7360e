#ifndef STATICLAB_ERRORS_HPP
#define STATICLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace staticlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Metric failed the positive-definiteness test at a point.
struct DegenerateMetricError : Error {
    std::vector<double> point;
    explicit DegenerateMetricError(std::vector<double> x)
        : Error("metric not positive definite at evaluation point"), point(std::move(x)) {}
};

struct OutOfDomainError : Error {
    std::vector<double> point;
    explicit OutOfDomainError(std::vector<double> x)
        : Error("point outside chart domain"), point(std::move(x)) {}
};

/// Warp factor r(s) must stay positive on the s-domain.
struct InvalidWarpError : Error {
    double s;
    explicit InvalidWarpError(double where)
        : Error("warp factor is non-positive at s=" + std::to_string(where)), s(where) {}
};

/// Requested level value is not regular (|grad f| too small on the slice).
struct RegularValueError : Error {
    double min_grad_norm;
    explicit RegularValueError(double g)
        : Error("level value is not regular, min |grad f| = " + std::to_string(g)),
          min_grad_norm(g) {}
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace staticlab

#endif
