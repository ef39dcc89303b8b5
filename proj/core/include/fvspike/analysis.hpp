#pragma once

#include <array>
#include <string>
#include <vector>

#include "fvspike/mesh.hpp"

namespace fvspike {

/// Closed-form diffusion threshold
///
///   d0 = |Ω| ((2π / ((q+2)(q+3)))^2 (6/(7π))^(q+1))^(1/(q-1)).
///
/// Throws InvalidArgument for q = 1, q <= 0 or area <= 0.
[[nodiscard]] double compute_d0(double q, double area);

enum class PeakKind { maximum, minimum };
enum class LocationClass { interior, boundary, corner };

[[nodiscard]] std::string to_string(PeakKind k);
[[nodiscard]] std::string to_string(LocationClass c);

struct Peak {
    int i = 1;
    int j = 1;
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    PeakKind kind = PeakKind::maximum;
    LocationClass location_class = LocationClass::interior;
};

[[nodiscard]] LocationClass classify_location(int i, int j, int n_x, int n_y) noexcept;

/// Discrete 8-neighbourhood extrema.
///
/// Cells sharing an identical value and 8-connected form a plateau; a plateau is a maximum
/// (minimum) when every cell bordering it is strictly lower (higher), and is reported once at
/// the member closest to its centroid. Peaks with |value - median| < min_prominence are
/// dropped. Result is sorted by |value| descending, ties by single index.
[[nodiscard]] std::vector<Peak> detect_peaks(const GridField& field, double min_prominence = 0.0);

struct SolutionStats {
    double max = 0.0;
    double argmax_x = 0.0;
    double argmax_y = 0.0;
    double min = 0.0;
    double argmin_x = 0.0;
    double argmin_y = 0.0;
    double mean = 0.0;
    bool is_constant = false;
};

/// Extrema (first occurrence in single-index order), mean, and the constant-field test
/// max - min < 1e-8 max(1, |mean|).
[[nodiscard]] SolutionStats solution_stats(const GridField& field);

using Point2 = std::array<double, 2>;
using Polyline = std::vector<Point2>;

struct ContourSet {
    std::vector<double> levels;
    std::vector<std::vector<Polyline>> polylines;  ///< one list per level
};

/// Marching squares over the lattice of cell centres with linear interpolation along lattice
/// edges. Ambiguous saddles are split according to the mean of the four corners. Segments are
/// chained into polylines; closed loops repeat their first point at the end.
[[nodiscard]] ContourSet marching_squares(const GridField& field, const std::vector<double>& levels);

/// `count` levels evenly spaced strictly inside (min, max) of the field.
[[nodiscard]] std::vector<double> default_levels(const GridField& field, int count = 8);

/// The dihedral group of the square acting on grid indices.
enum class Symmetry { identity, rot90, rot180, rot270, reflect_x, reflect_y, transpose, antitranspose };

inline constexpr std::array<Symmetry, 8> kAllSymmetries{
    Symmetry::identity, Symmetry::rot90,     Symmetry::rot180,    Symmetry::rot270,
    Symmetry::reflect_x, Symmetry::reflect_y, Symmetry::transpose, Symmetry::antitranspose};

[[nodiscard]] std::string to_string(Symmetry s);

/// Image of 1-based cell (i, j) under the symmetry on an n x n grid.
[[nodiscard]] CellIndex map_cell(Symmetry s, CellIndex c, int n) noexcept;

/// σ·X, with (σ·X)(σ(c)) = X(c). Requires a square grid.
[[nodiscard]] GridField apply_symmetry(Symmetry s, const GridField& field);

struct SymmetryDeviation {
    Symmetry symmetry = Symmetry::identity;
    double deviation = 0.0;  ///< ||σ·X - X||_inf
};

/// Deviation for each of the eight symmetries; throws InvalidArgument on non-square grids.
[[nodiscard]] std::vector<SymmetryDeviation> symmetry_report(const GridField& field);

}  // namespace fvspike
