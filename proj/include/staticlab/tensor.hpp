#ifndef STATICLAB_TENSOR_HPP
#define STATICLAB_TENSOR_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "staticlab/linalg.hpp"

namespace staticlab {

enum class Variance { Lower, Upper };

// Pointwise multi-index array with declared index variance. Curvature
// tensors are produced with all indices lowered; raising is explicit.
class TensorValue {
public:
    TensorValue() : dim_(0) {}
    TensorValue(int dim, std::vector<Variance> variance)
        : dim_(dim), variance_(std::move(variance)) {
        std::size_t sz = 1;
        for (std::size_t r = 0; r < variance_.size(); ++r) sz *= dim_;
        comps_.assign(sz, 0.0);
    }

    static TensorValue lower(int dim, int rank) {
        return TensorValue(dim, std::vector<Variance>(rank, Variance::Lower));
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(variance_.size()); }
    Variance variance(int slot) const { return variance_[slot]; }
    const std::vector<double>& components() const { return comps_; }
    std::vector<double>& components() { return comps_; }

    double& operator()(int i) { return comps_[idx1(i)]; }
    double operator()(int i) const { return comps_[idx1(i)]; }
    double& operator()(int i, int j) { return comps_[idx2(i, j)]; }
    double operator()(int i, int j) const { return comps_[idx2(i, j)]; }
    double& operator()(int i, int j, int k) { return comps_[idx3(i, j, k)]; }
    double operator()(int i, int j, int k) const { return comps_[idx3(i, j, k)]; }
    double& operator()(int i, int j, int k, int l) { return comps_[idx4(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return comps_[idx4(i, j, k, l)]; }

    double max_abs() const {
        double m = 0.0;
        for (double v : comps_) m = std::max(m, std::fabs(v));
        return m;
    }

    TensorValue& operator+=(const TensorValue& o) {
        assert(comps_.size() == o.comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
        return *this;
    }

    TensorValue& operator-=(const TensorValue& o) {
        assert(comps_.size() == o.comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
        return *this;
    }

    TensorValue& operator*=(double c) {
        for (double& v : comps_) v *= c;
        return *this;
    }

    // Contract one slot with a symmetric 2-index kernel (g to lower,
    // g^{-1} to raise); the slot's variance flips.
    TensorValue contract_slot(int slot, const Matrix& kernel, Variance new_variance) const {
        TensorValue out(dim_, variance_);
        out.variance_[slot] = new_variance;
        int r = rank();
        std::vector<int> id(r, 0);
        std::size_t total = comps_.size();
        for (std::size_t flat = 0; flat < total; ++flat) {
            unflatten(flat, id);
            double sum = 0.0;
            std::vector<int> src = id;
            for (int m = 0; m < dim_; ++m) {
                src[slot] = m;
                sum += kernel(id[slot], m) * comps_[flatten(src)];
            }
            out.comps_[flat] = sum;
        }
        return out;
    }

    TensorValue raise_slot(int slot, const Matrix& ginv) const {
        return contract_slot(slot, ginv, Variance::Upper);
    }
    TensorValue lower_slot(int slot, const Matrix& g) const {
        return contract_slot(slot, g, Variance::Lower);
    }

    // Full contraction |T|^2 = T_{i...} T_{j...} g^{ij}... for an all-lower tensor.
    double norm2(const Matrix& ginv) const {
        TensorValue up = *this;
        for (int s = 0; s < rank(); ++s) up = up.raise_slot(s, ginv);
        double sum = 0.0;
        for (std::size_t i = 0; i < comps_.size(); ++i) sum += comps_[i] * up.comps_[i];
        return sum;
    }

    // Full contraction T . U with both all-lower.
    double dot(const TensorValue& other, const Matrix& ginv) const {
        TensorValue up = other;
        for (int s = 0; s < rank(); ++s) up = up.raise_slot(s, ginv);
        double sum = 0.0;
        for (std::size_t i = 0; i < comps_.size(); ++i) sum += comps_[i] * up.comps_[i];
        return sum;
    }

    // Trace over two lower slots against g^{-1}; result rank drops by two.
    TensorValue trace(int s1, int s2, const Matrix& ginv) const {
        assert(s1 != s2);
        if (s1 > s2) std::swap(s1, s2);
        std::vector<Variance> var;
        for (int s = 0; s < rank(); ++s)
            if (s != s1 && s != s2) var.push_back(variance_[s]);
        TensorValue out(dim_, var);
        int r = rank();
        std::vector<int> id(r, 0), oid;
        std::size_t total = out.comps_.empty() ? 1 : out.comps_.size();
        std::vector<int> out_id(var.size(), 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            out.unflatten(flat, out_id);
            int q = 0;
            for (int s = 0; s < r; ++s)
                if (s != s1 && s != s2) id[s] = out_id[q++];
            double sum = 0.0;
            for (int a = 0; a < dim_; ++a)
                for (int b = 0; b < dim_; ++b) {
                    id[s1] = a;
                    id[s2] = b;
                    sum += ginv(a, b) * comps_[flatten(id)];
                }
            out.comps_[flat] = sum;
        }
        return out;
    }

    double symmetry_residual(int s1, int s2) const { return swap_residual(s1, s2, +1.0); }
    double antisymmetry_residual(int s1, int s2) const { return swap_residual(s1, s2, -1.0); }

private:
    double swap_residual(int s1, int s2, double sign) const {
        double m = 0.0;
        int r = rank();
        std::vector<int> id(r, 0);
        for (std::size_t flat = 0; flat < comps_.size(); ++flat) {
            unflatten(flat, id);
            std::vector<int> sw = id;
            std::swap(sw[s1], sw[s2]);
            m = std::max(m, std::fabs(comps_[flat] - sign * comps_[flatten(sw)]));
        }
        return m;
    }

    std::size_t idx1(int i) const { return static_cast<std::size_t>(i); }
    std::size_t idx2(int i, int j) const { return static_cast<std::size_t>(i) * dim_ + j; }
    std::size_t idx3(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }
    std::size_t idx4(int i, int j, int k, int l) const {
        return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
    }

    std::size_t flatten(const std::vector<int>& id) const {
        std::size_t f = 0;
        for (std::size_t s = 0; s < id.size(); ++s) f = f * dim_ + id[s];
        return f;
    }

    void unflatten(std::size_t flat, std::vector<int>& id) const {
        for (int s = static_cast<int>(id.size()) - 1; s >= 0; --s) {
            id[s] = static_cast<int>(flat % dim_);
            flat /= dim_;
        }
    }

    int dim_;
    std::vector<Variance> variance_;
    std::vector<double> comps_;
};

} // namespace staticlab

#endif
