#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fvspike {

/// Axis-aligned rectangle ]x_lo, x_hi[ x ]y_lo, y_hi[.
struct Domain {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;

    /// Throws InvalidArgument unless both spans are finite and positive.
    void validate() const;

    [[nodiscard]] double width() const noexcept { return x_hi - x_lo; }
    [[nodiscard]] double height() const noexcept { return y_hi - y_lo; }
    [[nodiscard]] double area() const noexcept { return width() * height(); }

    /// Square domain [lo, hi]^2.
    static Domain square(double lo, double hi) noexcept { return {lo, hi, lo, hi}; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// 1-based grid position of a control volume.
struct CellIndex {
    int i = 1;
    int j = 1;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Single index s = (j-1)*n_x + i, 1-based. Throws InvalidArgument when (i, j) lies outside [1,n_x]x[1,n_y].
[[nodiscard]] int linear_index(int i, int j, int n_x, int n_y);

/// Inverse of linear_index. Throws InvalidArgument when s lies outside [1, n_x*n_y].
[[nodiscard]] CellIndex inverse_index(int s, int n_x, int n_y);

/// Cell-centred partition of a rectangle into n_x x n_y equal control volumes.
///
/// Cell (i, j) occupies ]x_{i-1/2}, x_{i+1/2}[ x ]y_{j-1/2}, y_{j+1/2}[ with centre
/// (x_lo + (i - 1/2) h_x, y_lo + (j - 1/2) h_y). Indices in the public interface are
/// 1-based; values attached to the mesh are stored in single-index order.
class Mesh {
public:
    Mesh(const Domain& domain, int n_x, int n_y);

    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] int n_x() const noexcept { return n_x_; }
    [[nodiscard]] int n_y() const noexcept { return n_y_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(n_x_) * static_cast<std::size_t>(n_y_);
    }
    [[nodiscard]] double h_x() const noexcept { return h_x_; }
    [[nodiscard]] double h_y() const noexcept { return h_y_; }
    [[nodiscard]] double cell_area() const noexcept { return h_x_ * h_y_; }

    [[nodiscard]] std::span<const double> x_centers() const noexcept { return x_centers_; }
    [[nodiscard]] std::span<const double> y_centers() const noexcept { return y_centers_; }

    /// Centre coordinates for 1-based indices.
    [[nodiscard]] double x_center(int i) const { return x_centers_.at(static_cast<std::size_t>(i - 1)); }
    [[nodiscard]] double y_center(int j) const { return y_centers_.at(static_cast<std::size_t>(j - 1)); }

    /// |h_x - h_y| <= 1e-12 * max(h_x, h_y).
    [[nodiscard]] bool is_uniform() const noexcept;
    [[nodiscard]] bool is_square() const noexcept { return n_x_ == n_y_; }

    [[nodiscard]] int linear_index(int i, int j) const { return fvspike::linear_index(i, j, n_x_, n_y_); }
    [[nodiscard]] CellIndex inverse_index(int s) const { return fvspike::inverse_index(s, n_x_, n_y_); }

    friend bool operator==(const Mesh& a, const Mesh& b) noexcept {
        return a.domain_ == b.domain_ && a.n_x_ == b.n_x_ && a.n_y_ == b.n_y_;
    }

private:
    Domain domain_;
    int n_x_;
    int n_y_;
    double h_x_;
    double h_y_;
    std::vector<double> x_centers_;
    std::vector<double> y_centers_;
};

/// Validating factory; equivalent to the Mesh constructor.
[[nodiscard]] Mesh build_mesh(const Domain& domain, int n_x, int n_y);

/// One scalar per control volume, stored in single-index order (s = 1 first).
class GridField {
public:
    explicit GridField(Mesh mesh, double fill = 0.0);
    GridField(Mesh mesh, std::vector<double> values);

    [[nodiscard]] const Mesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    /// 1-based single index.
    [[nodiscard]] double at_index(int s) const { return values_.at(static_cast<std::size_t>(s - 1)); }
    double& at_index(int s) { return values_.at(static_cast<std::size_t>(s - 1)); }

    /// 1-based grid indices.
    [[nodiscard]] double operator()(int i, int j) const { return at_index(mesh_.linear_index(i, j)); }
    double& operator()(int i, int j) { return at_index(mesh_.linear_index(i, j)); }

    friend bool operator==(const GridField& a, const GridField& b) {
        return a.mesh_ == b.mesh_ && a.values_ == b.values_;
    }

private:
    Mesh mesh_;
    std::vector<double> values_;
};

/// Throws DimensionMismatch unless the field is defined on a mesh equal to `mesh`.
void require_same_mesh(const Mesh& mesh, const GridField& field);

}  // namespace fvspike
