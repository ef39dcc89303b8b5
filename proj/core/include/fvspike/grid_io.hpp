#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fvspike/analysis.hpp"
#include "fvspike/error.hpp"
#include "fvspike/mesh.hpp"

namespace fvspike {

/// Malformed or unreadable input file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Grid CSV: a header line `# nx,ny,x_lo,x_hi,y_lo,y_hi` carrying the values, then n_y rows of
/// n_x comma-separated values, row j = 1 first, each printed with 17 significant digits.
void write_grid_csv(std::ostream& out, const GridField& field);
[[nodiscard]] GridField read_grid_csv(std::istream& in);

[[nodiscard]] std::string grid_csv_string(const GridField& field);

/// JSON sidecar describing the mesh: domain bounds, n_x, n_y, h_x, h_y.
void write_grid_header_json(std::ostream& out, const Mesh& mesh);

/// gnuplot "nonuniform matrix": first row n_x followed by the x centres, then one row per j
/// starting with y_j. (n_y + 1) rows of (n_x + 1) whitespace-separated columns.
void write_gnuplot_matrix(std::ostream& out, const GridField& field);

/// {"contours": [{"level": L, "polylines": [[[x, y], ...], ...]}, ...]}
void write_contours_json(std::ostream& out, const ContourSet& contours);

/// Flat CSV with header `level,polyline_id,x,y`.
void write_contours_csv(std::ostream& out, const ContourSet& contours);

/// CSV with header `kind,i,j,x,y,value,location_class`.
void write_peaks_csv(std::ostream& out, const std::vector<Peak>& peaks);

/// Shortest text that reads back to the same double ("%.17g").
[[nodiscard]] std::string format_double(double v);

}  // namespace fvspike
