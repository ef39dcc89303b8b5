#include "fvspike/grid_io.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fvspike {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) parts.push_back(cur);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

double parse_number(const std::string& text, int line_no) {
    const char* begin = text.c_str();
    while (*begin == ' ' || *begin == '\t') ++begin;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
    if (end == begin || (end && *end != '\0') || errno == ERANGE) {
        throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

void write_grid_csv(std::ostream& out, const GridField& field) {
    const Mesh& m = field.mesh();
    const Domain& d = m.domain();
    out << "# " << m.n_x() << ',' << m.n_y() << ',' << format_double(d.x_lo) << ',' << format_double(d.x_hi) << ','
        << format_double(d.y_lo) << ',' << format_double(d.y_hi) << '\n';
    const auto v = field.values();
    const auto nx = static_cast<std::size_t>(m.n_x());
    for (int j = 0; j < m.n_y(); ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            if (i > 0) out << ',';
            out << format_double(v[static_cast<std::size_t>(j) * nx + i]);
        }
        out << '\n';
    }
}

std::string grid_csv_string(const GridField& field) {
    std::ostringstream out;
    write_grid_csv(out, field);
    return out.str();
}

GridField read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("grid CSV is empty");
    }
    if (line.empty() || line[0] != '#') {
        throw FormatError("line 1: expected header '# nx,ny,x_lo,x_hi,y_lo,y_hi'");
    }
    const auto head = split(line.substr(1), ',');
    if (head.size() != 6) {
        throw FormatError("line 1: header needs 6 fields nx,ny,x_lo,x_hi,y_lo,y_hi, got " +
                          std::to_string(head.size()));
    }
    const double nx_d = parse_number(head[0], 1);
    const double ny_d = parse_number(head[1], 1);
    if (nx_d < 1 || ny_d < 1 || nx_d != std::floor(nx_d) || ny_d != std::floor(ny_d) || nx_d > 1e6 || ny_d > 1e6) {
        throw FormatError("line 1: nx and ny must be positive integers");
    }
    const int nx = static_cast<int>(nx_d);
    const int ny = static_cast<int>(ny_d);
    const Domain domain{parse_number(head[2], 1), parse_number(head[3], 1), parse_number(head[4], 1),
                        parse_number(head[5], 1)};
    Mesh mesh = [&] {
        try {
            return Mesh(domain, nx, ny);
        } catch (const InvalidArgument& e) {
            throw FormatError(std::string("line 1: ") + e.what());
        }
    }();

    std::vector<double> values;
    values.reserve(mesh.size());
    int line_no = 1;
    int rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (static_cast<int>(cells.size()) != nx) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(nx) +
                              " values, got " + std::to_string(cells.size()));
        }
        for (const auto& c : cells) values.push_back(parse_number(c, line_no));
        ++rows;
    }
    if (rows != ny) {
        throw FormatError("expected " + std::to_string(ny) + " data rows, got " + std::to_string(rows));
    }
    return GridField(std::move(mesh), std::move(values));
}

void write_grid_header_json(std::ostream& out, const Mesh& mesh) {
    const Domain& d = mesh.domain();
    nlohmann::ordered_json j;
    j["domain"] = {{"x_lo", d.x_lo}, {"x_hi", d.x_hi}, {"y_lo", d.y_lo}, {"y_hi", d.y_hi}};
    j["n_x"] = mesh.n_x();
    j["n_y"] = mesh.n_y();
    j["h_x"] = mesh.h_x();
    j["h_y"] = mesh.h_y();
    out << j.dump(2) << '\n';
}

void write_gnuplot_matrix(std::ostream& out, const GridField& field) {
    const Mesh& m = field.mesh();
    out << m.n_x();
    for (const double x : m.x_centers()) out << ' ' << format_double(x);
    out << '\n';
    for (int j = 1; j <= m.n_y(); ++j) {
        out << format_double(m.y_center(j));
        for (int i = 1; i <= m.n_x(); ++i) out << ' ' << format_double(field(i, j));
        out << '\n';
    }
}

void write_contours_json(std::ostream& out, const ContourSet& contours) {
    nlohmann::ordered_json doc;
    doc["contours"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < contours.levels.size(); ++k) {
        nlohmann::ordered_json entry;
        entry["level"] = contours.levels[k];
        entry["polylines"] = nlohmann::ordered_json::array();
        for (const auto& line : contours.polylines[k]) {
            nlohmann::ordered_json pts = nlohmann::ordered_json::array();
            for (const auto& p : line) pts.push_back({p[0], p[1]});
            entry["polylines"].push_back(std::move(pts));
        }
        doc["contours"].push_back(std::move(entry));
    }
    out << doc.dump(1) << '\n';
}

void write_contours_csv(std::ostream& out, const ContourSet& contours) {
    out << "level,polyline_id,x,y\n";
    for (std::size_t k = 0; k < contours.levels.size(); ++k) {
        for (std::size_t id = 0; id < contours.polylines[k].size(); ++id) {
            for (const auto& p : contours.polylines[k][id]) {
                out << format_double(contours.levels[k]) << ',' << id << ',' << format_double(p[0]) << ','
                    << format_double(p[1]) << '\n';
            }
        }
    }
}

void write_peaks_csv(std::ostream& out, const std::vector<Peak>& peaks) {
    out << "kind,i,j,x,y,value,location_class\n";
    for (const auto& p : peaks) {
        out << to_string(p.kind) << ',' << p.i << ',' << p.j << ',' << format_double(p.x) << ','
            << format_double(p.y) << ',' << format_double(p.value) << ',' << to_string(p.location_class) << '\n';
    }
}

}  // namespace fvspike
