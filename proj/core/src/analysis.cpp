#include "fvspike/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fvspike/error.hpp"

namespace fvspike {

double compute_d0(double q, double area) {
    if (!std::isfinite(q) || q <= 0.0) {
        throw InvalidArgument("d0 needs a finite q > 0, got " + std::to_string(q));
    }
    if (q == 1.0) {
        throw InvalidArgument("d0 is undefined at q = 1: the exponent 1/(q-1) is singular");
    }
    if (!std::isfinite(area) || area <= 0.0) {
        throw InvalidArgument("d0 needs a positive domain area");
    }
    constexpr double pi = std::numbers::pi;
    const double ratio = 2.0 * pi / ((q + 2.0) * (q + 3.0));
    const double inner = ratio * ratio * std::pow(6.0 / (7.0 * pi), q + 1.0);
    return area * std::pow(inner, 1.0 / (q - 1.0));
}

SolutionStats solution_stats(const GridField& field) {
    const auto v = field.values();
    if (v.empty()) {
        throw InvalidArgument("solution_stats on an empty field");
    }
    const Mesh& mesh = field.mesh();
    std::size_t arg_hi = 0;
    std::size_t arg_lo = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] > v[arg_hi]) arg_hi = k;
        if (v[k] < v[arg_lo]) arg_lo = k;
        sum += v[k];
    }
    SolutionStats st;
    st.max = v[arg_hi];
    st.min = v[arg_lo];
    st.mean = std::clamp(sum / static_cast<double>(v.size()), st.min, st.max);
    const CellIndex hi = mesh.inverse_index(static_cast<int>(arg_hi + 1));
    const CellIndex lo = mesh.inverse_index(static_cast<int>(arg_lo + 1));
    st.argmax_x = mesh.x_center(hi.i);
    st.argmax_y = mesh.y_center(hi.j);
    st.argmin_x = mesh.x_center(lo.i);
    st.argmin_y = mesh.y_center(lo.j);
    st.is_constant = (st.max - st.min) < 1e-8 * std::max(1.0, std::abs(st.mean));
    return st;
}

std::vector<double> default_levels(const GridField& field, int count) {
    const SolutionStats st = solution_stats(field);
    std::vector<double> levels;
    if (count < 1 || st.is_constant) {
        return levels;
    }
    levels.reserve(static_cast<std::size_t>(count));
    const double span = st.max - st.min;
    for (int k = 1; k <= count; ++k) {
        levels.push_back(st.min + span * k / (count + 1.0));
    }
    return levels;
}

std::string to_string(Symmetry s) {
    switch (s) {
        case Symmetry::identity: return "identity";
        case Symmetry::rot90: return "rot90";
        case Symmetry::rot180: return "rot180";
        case Symmetry::rot270: return "rot270";
        case Symmetry::reflect_x: return "reflect_x";
        case Symmetry::reflect_y: return "reflect_y";
        case Symmetry::transpose: return "transpose";
        case Symmetry::antitranspose: return "antitranspose";
    }
    return "unknown";
}

CellIndex map_cell(Symmetry s, CellIndex c, int n) noexcept {
    const int i = c.i;
    const int j = c.j;
    switch (s) {
        case Symmetry::identity: return {i, j};
        case Symmetry::rot90: return {n + 1 - j, i};
        case Symmetry::rot180: return {n + 1 - i, n + 1 - j};
        case Symmetry::rot270: return {j, n + 1 - i};
        case Symmetry::reflect_x: return {n + 1 - i, j};
        case Symmetry::reflect_y: return {i, n + 1 - j};
        case Symmetry::transpose: return {j, i};
        case Symmetry::antitranspose: return {n + 1 - j, n + 1 - i};
    }
    return c;
}

GridField apply_symmetry(Symmetry s, const GridField& field) {
    const Mesh& mesh = field.mesh();
    if (!mesh.is_square()) {
        throw InvalidArgument("grid symmetries need n_x == n_y");
    }
    const int n = mesh.n_x();
    GridField out(mesh);
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= n; ++i) {
            const CellIndex to = map_cell(s, {i, j}, n);
            out(to.i, to.j) = field(i, j);
        }
    }
    return out;
}

std::vector<SymmetryDeviation> symmetry_report(const GridField& field) {
    std::vector<SymmetryDeviation> out;
    out.reserve(kAllSymmetries.size());
    const auto base = field.values();
    for (const Symmetry s : kAllSymmetries) {
        const GridField image = apply_symmetry(s, field);
        const auto v = image.values();
        double dev = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            dev = std::max(dev, std::abs(v[k] - base[k]));
        }
        out.push_back({s, dev});
    }
    return out;
}

}  // namespace fvspike
