#include <algorithm>
#include <cmath>
#include <sstream>

#include "fvspike/solver.hpp"

namespace fvspike {

BandedLU::BandedLU(const StencilMatrix& matrix)
    : n_(matrix.dimension()),
      lower_(static_cast<std::size_t>(matrix.n_x())),
      width_(3 * static_cast<std::size_t>(matrix.n_x()) + 1),
      band_(n_ * width_, 0.0),
      pivots_(n_, 0) {
    const std::size_t kl = lower_;
    const std::size_t ku = lower_;
    std::vector<double> row_norm(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
        const std::size_t c_lo = r >= kl ? r - kl : 0;
        const std::size_t c_hi = std::min(n_ - 1, r + ku);
        for (std::size_t c = c_lo; c <= c_hi; ++c) {
            const double v = matrix.entry(r, c);
            at(r, c) = v;
            row_norm[r] += std::abs(v);
        }
    }

    for (std::size_t k = 0; k < n_; ++k) {
        const std::size_t r_hi = std::min(n_ - 1, k + kl);
        std::size_t p = k;
        double best = std::abs(at(k, k));
        for (std::size_t r = k + 1; r <= r_hi; ++r) {
            const double v = std::abs(at(r, k));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        // Scaled against equation k, the row whose diagonal this column eliminates.
        if (!(best >= 1e-14 * row_norm[k]) || best == 0.0) {
            std::ostringstream msg;
            msg << "singular Jacobian: pivot " << best << " in column " << k + 1 << " below 1e-14 x row norm "
                << row_norm[k];
            throw SingularMatrixError(k, msg.str());
        }
        pivots_[k] = p;
        const std::size_t c_hi = std::min(n_ - 1, k + kl + ku);
        if (p != k) {
            for (std::size_t c = k; c <= c_hi; ++c) {
                std::swap(at(k, c), at(p, c));
            }
        }
        const double pivot = at(k, k);
        for (std::size_t r = k + 1; r <= r_hi; ++r) {
            double& lrk = at(r, k);
            if (lrk == 0.0) {
                continue;
            }
            lrk /= pivot;
            const double l = lrk;
            for (std::size_t c = k + 1; c <= c_hi; ++c) {
                at(r, c) -= l * at(k, c);
            }
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_) {
        throw DimensionMismatch("rhs length " + std::to_string(rhs.size()) + " vs matrix dimension " +
                                std::to_string(n_));
    }
    const std::size_t kl = lower_;
    const std::size_t ku = lower_;
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n_; ++k) {
        if (pivots_[k] != k) {
            std::swap(x[k], x[pivots_[k]]);
        }
        const double xk = x[k];
        const std::size_t r_hi = std::min(n_ - 1, k + kl);
        for (std::size_t r = k + 1; r <= r_hi; ++r) {
            x[r] -= at(r, k) * xk;
        }
    }
    for (std::size_t k = n_; k-- > 0;) {
        const std::size_t c_hi = std::min(n_ - 1, k + kl + ku);
        double acc = x[k];
        for (std::size_t c = k + 1; c <= c_hi; ++c) {
            acc -= at(k, c) * x[c];
        }
        x[k] = acc / at(k, k);
    }
    return x;
}

std::vector<double> linear_solve(const StencilMatrix& matrix, std::span<const double> rhs) {
    if (rhs.size() != matrix.dimension()) {
        throw DimensionMismatch("rhs length " + std::to_string(rhs.size()) + " vs matrix dimension " +
                                std::to_string(matrix.dimension()));
    }
    return BandedLU(matrix).solve(rhs);
}

}  // namespace fvspike
