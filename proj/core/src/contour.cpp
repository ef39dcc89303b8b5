#include <array>
#include <cmath>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fvspike/analysis.hpp"
#include "fvspike/error.hpp"

namespace fvspike {

namespace {

// Local square edges.
enum Edge : int { bottom = 0, right = 1, top = 2, left = 3, none = -1 };

using SegmentPair = std::array<Edge, 2>;
using CaseSegments = std::array<SegmentPair, 2>;

// Corner bits: 1 = (i,j), 2 = (i+1,j), 4 = (i+1,j+1), 8 = (i,j+1). Saddles 5 and 10 hold the
// "centre outside" split here and are swapped when the corner mean reaches the level.
constexpr std::array<CaseSegments, 16> kCases{{
    {{{none, none}, {none, none}}},
    {{{left, bottom}, {none, none}}},
    {{{bottom, right}, {none, none}}},
    {{{left, right}, {none, none}}},
    {{{right, top}, {none, none}}},
    {{{left, bottom}, {right, top}}},
    {{{bottom, top}, {none, none}}},
    {{{left, top}, {none, none}}},
    {{{top, left}, {none, none}}},
    {{{bottom, top}, {none, none}}},
    {{{bottom, right}, {top, left}}},
    {{{right, top}, {none, none}}},
    {{{left, right}, {none, none}}},
    {{{bottom, right}, {none, none}}},
    {{{left, bottom}, {none, none}}},
    {{{none, none}, {none, none}}},
}};

constexpr CaseSegments kSaddle5CentreInside{{{bottom, right}, {left, top}}};
constexpr CaseSegments kSaddle10CentreInside{{{left, bottom}, {right, top}}};

struct Tracer {
    const Mesh& mesh;
    std::span<const double> v;
    double level;
    int nx;

    [[nodiscard]] double value(int i, int j) const {
        return v[static_cast<std::size_t>((j - 1) * nx + (i - 1))];
    }

    // Global id of the lattice edge leaving node (i, j) to the right (even) or upwards (odd).
    [[nodiscard]] long edge_id(int i, int j, Edge e) const {
        switch (e) {
            case bottom: return 2L * ((j - 1) * nx + (i - 1));
            case top: return 2L * (j * nx + (i - 1));
            case left: return 2L * ((j - 1) * nx + (i - 1)) + 1;
            case right: return 2L * ((j - 1) * nx + i) + 1;
            case none: break;
        }
        return -1;
    }

    [[nodiscard]] Point2 crossing(long id) const {
        const long node = id / 2;
        const int i = static_cast<int>(node % nx) + 1;
        const int j = static_cast<int>(node / nx) + 1;
        const bool horizontal = (id % 2) == 0;
        const int i1 = horizontal ? i + 1 : i;
        const int j1 = horizontal ? j : j + 1;
        const double v0 = value(i, j);
        const double v1 = value(i1, j1);
        const double t = (level - v0) / (v1 - v0);
        const double x0 = mesh.x_center(i);
        const double y0 = mesh.y_center(j);
        const double x1 = mesh.x_center(i1);
        const double y1 = mesh.y_center(j1);
        return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    }
};

std::vector<Polyline> trace_level(const GridField& field, double level) {
    const Mesh& mesh = field.mesh();
    const int nx = mesh.n_x();
    const int ny = mesh.n_y();
    Tracer tr{mesh, field.values(), level, nx};

    std::vector<std::pair<long, long>> segments;
    for (int j = 1; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const double bl = tr.value(i, j);
            const double br = tr.value(i + 1, j);
            const double tr_ = tr.value(i + 1, j + 1);
            const double tl = tr.value(i, j + 1);
            const int code = (bl >= level ? 1 : 0) | (br >= level ? 2 : 0) | (tr_ >= level ? 4 : 0) |
                             (tl >= level ? 8 : 0);
            CaseSegments segs = kCases[static_cast<std::size_t>(code)];
            if (code == 5 || code == 10) {
                const double centre = 0.25 * (bl + br + tr_ + tl);
                if (centre >= level) {
                    segs = code == 5 ? kSaddle5CentreInside : kSaddle10CentreInside;
                }
            }
            for (const auto& seg : segs) {
                if (seg[0] == none) continue;
                segments.emplace_back(tr.edge_id(i, j, seg[0]), tr.edge_id(i, j, seg[1]));
            }
        }
    }

    std::unordered_map<long, std::vector<std::size_t>> incident;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        incident[segments[k].first].push_back(k);
        incident[segments[k].second].push_back(k);
    }

    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> lines;
    auto walk = [&](long start) {
        Polyline line{tr.crossing(start)};
        long cur = start;
        for (;;) {
            std::size_t next_seg = segments.size();
            for (const std::size_t s : incident[cur]) {
                if (!used[s]) {
                    next_seg = s;
                    break;
                }
            }
            if (next_seg == segments.size()) break;
            used[next_seg] = true;
            const long next = segments[next_seg].first == cur ? segments[next_seg].second : segments[next_seg].first;
            line.push_back(tr.crossing(next));
            cur = next;
            if (cur == start) break;
        }
        lines.push_back(std::move(line));
    };

    // Open chains start at an edge touched by a single segment (a domain-boundary crossing).
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (used[k]) continue;
        for (const long end : {segments[k].first, segments[k].second}) {
            if (incident[end].size() == 1 && !used[k]) {
                walk(end);
            }
        }
    }
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (!used[k]) {
            walk(segments[k].first);
        }
    }
    return lines;
}

}  // namespace

ContourSet marching_squares(const GridField& field, const std::vector<double>& levels) {
    ContourSet out;
    out.levels = levels;
    out.polylines.reserve(levels.size());
    for (const double level : levels) {
        if (!std::isfinite(level)) {
            throw InvalidArgument("contour levels must be finite");
        }
        out.polylines.push_back(trace_level(field, level));
    }
    return out;
}

}  // namespace fvspike
