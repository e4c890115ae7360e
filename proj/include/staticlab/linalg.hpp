#ifndef STATICLAB_LINALG_HPP
#define STATICLAB_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace staticlab {

// Dense square matrix, row-major. Dimensions here are tiny (n <= 5),
// so plain Gaussian elimination is all we need.
class Matrix {
public:
    Matrix() : n_(0) {}
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    // Cholesky-style positive definiteness test; also yields det on success.
    bool positive_definite(double* det = nullptr) const {
        Matrix l(n_);
        double d = 1.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j <= i; ++j) {
                double sum = (*this)(i, j);
                for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
                if (i == j) {
                    if (sum <= 0.0 || !std::isfinite(sum)) return false;
                    l(i, i) = std::sqrt(sum);
                    d *= sum;
                } else {
                    l(i, j) = sum / l(j, j);
                }
            }
        }
        if (det) *det = d;
        return true;
    }

    double det() const {
        Matrix lu(*this);
        double d = 1.0;
        std::vector<int> p(n_);
        if (!lu.factor(p, d)) return 0.0;
        for (int i = 0; i < n_; ++i) d *= lu(i, i);
        return d;
    }

    Matrix inverse() const {
        Matrix lu(*this);
        std::vector<int> p(n_);
        double sign = 1.0;
        lu.factor(p, sign);
        Matrix inv(n_);
        std::vector<double> col(n_);
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < n_; ++i) col[i] = (i == j) ? 1.0 : 0.0;
            lu.solve_factored(p, col);
            for (int i = 0; i < n_; ++i) inv(i, j) = col[i];
        }
        return inv;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::fabs(v));
        return m;
    }

private:
    bool factor(std::vector<int>& perm, double& sign) {
        for (int i = 0; i < n_; ++i) perm[i] = i;
        for (int k = 0; k < n_; ++k) {
            int piv = k;
            double best = std::fabs((*this)(k, k));
            for (int i = k + 1; i < n_; ++i) {
                double v = std::fabs((*this)(i, k));
                if (v > best) { best = v; piv = i; }
            }
            if (best == 0.0) return false;
            if (piv != k) {
                for (int j = 0; j < n_; ++j) std::swap((*this)(k, j), (*this)(piv, j));
                std::swap(perm[k], perm[piv]);
                sign = -sign;
            }
            for (int i = k + 1; i < n_; ++i) {
                (*this)(i, k) /= (*this)(k, k);
                for (int j = k + 1; j < n_; ++j) (*this)(i, j) -= (*this)(i, k) * (*this)(k, j);
            }
        }
        return true;
    }

    void solve_factored(const std::vector<int>& perm, std::vector<double>& b) const {
        std::vector<double> x(n_);
        for (int i = 0; i < n_; ++i) x[i] = b[perm[i]];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j) x[i] -= (*this)(i, j) * x[j];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j) x[i] -= (*this)(i, j) * x[j];
            x[i] /= (*this)(i, i);
        }
        b = x;
    }

    int n_;
    std::vector<double> a_;
};

// Deterministic compensated (pairwise) summation, used wherever reported
// numbers must not depend on evaluation order.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

} // namespace staticlab

#endif
