#include "fvspike/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fvspike/error.hpp"

namespace fvspike {

void Domain::validate() const {
    const bool finite = std::isfinite(x_lo) && std::isfinite(x_hi) && std::isfinite(y_lo) && std::isfinite(y_hi);
    if (!finite || !(x_lo < x_hi) || !(y_lo < y_hi)) {
        std::ostringstream msg;
        msg << "invalid domain [" << x_lo << ", " << x_hi << "] x [" << y_lo << ", " << y_hi
            << "]: bounds must be finite with x_lo < x_hi and y_lo < y_hi";
        throw InvalidArgument(msg.str());
    }
}

int linear_index(int i, int j, int n_x, int n_y) {
    if (n_x < 1 || n_y < 1 || i < 1 || i > n_x || j < 1 || j > n_y) {
        std::ostringstream msg;
        msg << "cell index (" << i << ", " << j << ") outside grid " << n_x << " x " << n_y;
        throw InvalidArgument(msg.str());
    }
    return (j - 1) * n_x + i;
}

CellIndex inverse_index(int s, int n_x, int n_y) {
    if (n_x < 1 || n_y < 1 || s < 1 || s > n_x * n_y) {
        std::ostringstream msg;
        msg << "single index " << s << " outside [1, " << n_x * n_y << "]";
        throw InvalidArgument(msg.str());
    }
    return {(s - 1) % n_x + 1, (s - 1) / n_x + 1};
}

Mesh::Mesh(const Domain& domain, int n_x, int n_y) : domain_(domain), n_x_(n_x), n_y_(n_y) {
    domain_.validate();
    if (n_x < 1 || n_y < 1) {
        throw InvalidArgument("cell counts must be positive, got n_x=" + std::to_string(n_x) +
                              ", n_y=" + std::to_string(n_y));
    }
    h_x_ = domain_.width() / n_x_;
    h_y_ = domain_.height() / n_y_;
    x_centers_.resize(static_cast<std::size_t>(n_x_));
    y_centers_.resize(static_cast<std::size_t>(n_y_));
    for (int i = 1; i <= n_x_; ++i) {
        x_centers_[static_cast<std::size_t>(i - 1)] = domain_.x_lo + (i - 0.5) * h_x_;
    }
    for (int j = 1; j <= n_y_; ++j) {
        y_centers_[static_cast<std::size_t>(j - 1)] = domain_.y_lo + (j - 0.5) * h_y_;
    }
}

bool Mesh::is_uniform() const noexcept {
    return std::abs(h_x_ - h_y_) <= 1e-12 * std::max(h_x_, h_y_);
}

Mesh build_mesh(const Domain& domain, int n_x, int n_y) { return Mesh(domain, n_x, n_y); }

GridField::GridField(Mesh mesh, double fill) : mesh_(std::move(mesh)), values_(mesh_.size(), fill) {}

GridField::GridField(Mesh mesh, std::vector<double> values) : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (values_.size() != mesh_.size()) {
        throw DimensionMismatch("field has " + std::to_string(values_.size()) + " values but mesh has " +
                                std::to_string(mesh_.size()) + " cells");
    }
}

void require_same_mesh(const Mesh& mesh, const GridField& field) {
    if (!(field.mesh() == mesh) || field.size() != mesh.size()) {
        throw DimensionMismatch("field is not defined on the given mesh (" + std::to_string(field.mesh().n_x()) +
                                "x" + std::to_string(field.mesh().n_y()) + " vs " + std::to_string(mesh.n_x()) +
                                "x" + std::to_string(mesh.n_y()) + ")");
    }
}

}  // namespace fvspike
