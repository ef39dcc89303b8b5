#include <algorithm>
#include <cmath>
#include <vector>

#include "fvspike/analysis.hpp"

namespace fvspike {

namespace {

double median_of(std::span<const double> v) {
    std::vector<double> tmp(v.begin(), v.end());
    const std::size_t mid = tmp.size() / 2;
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid), tmp.end());
    const double upper = tmp[mid];
    if (tmp.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

std::string to_string(PeakKind k) { return k == PeakKind::maximum ? "maximum" : "minimum"; }

std::string to_string(LocationClass c) {
    switch (c) {
        case LocationClass::interior: return "interior";
        case LocationClass::boundary: return "boundary";
        case LocationClass::corner: return "corner";
    }
    return "unknown";
}

LocationClass classify_location(int i, int j, int n_x, int n_y) noexcept {
    const bool on_x = (i == 1 || i == n_x);
    const bool on_y = (j == 1 || j == n_y);
    if (on_x && on_y) return LocationClass::corner;
    if (on_x || on_y) return LocationClass::boundary;
    return LocationClass::interior;
}

std::vector<Peak> detect_peaks(const GridField& field, double min_prominence) {
    const Mesh& mesh = field.mesh();
    const int nx = mesh.n_x();
    const int ny = mesh.n_y();
    const auto v = field.values();
    const std::size_t n = v.size();
    if (n == 0) return {};
    const double median = median_of(v);

    auto idx = [nx](int i, int j) { return static_cast<std::size_t>((j - 1) * nx + (i - 1)); };

    std::vector<int> group_of(n, -1);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> members;
    std::vector<Peak> peaks;
    int group_id = 0;

    for (std::size_t start = 0; start < n; ++start) {
        if (group_of[start] >= 0) continue;
        const double value = v[start];
        members.clear();
        stack.assign(1, start);
        group_of[start] = group_id;
        bool any_lower = false;
        bool any_higher = false;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            const int ci = static_cast<int>(cur % static_cast<std::size_t>(nx)) + 1;
            const int cj = static_cast<int>(cur / static_cast<std::size_t>(nx)) + 1;
            for (int dj = -1; dj <= 1; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = ci + di;
                    const int nj = cj + dj;
                    if (ni < 1 || ni > nx || nj < 1 || nj > ny) continue;
                    const std::size_t nb = idx(ni, nj);
                    if (v[nb] == value) {
                        if (group_of[nb] < 0) {
                            group_of[nb] = group_id;
                            stack.push_back(nb);
                        }
                    } else if (v[nb] < value) {
                        any_lower = true;
                    } else {
                        any_higher = true;
                    }
                }
            }
        }
        ++group_id;

        const bool is_max = any_lower && !any_higher;
        const bool is_min = any_higher && !any_lower;
        if (!is_max && !is_min) continue;
        if (std::abs(value - median) < min_prominence) continue;

        double ci_mean = 0.0;
        double cj_mean = 0.0;
        for (const std::size_t m : members) {
            ci_mean += static_cast<double>(m % static_cast<std::size_t>(nx)) + 1.0;
            cj_mean += static_cast<double>(m / static_cast<std::size_t>(nx)) + 1.0;
        }
        ci_mean /= static_cast<double>(members.size());
        cj_mean /= static_cast<double>(members.size());
        std::size_t rep = members.front();
        double best = INFINITY;
        for (const std::size_t m : members) {
            const double di = static_cast<double>(m % static_cast<std::size_t>(nx)) + 1.0 - ci_mean;
            const double dj = static_cast<double>(m / static_cast<std::size_t>(nx)) + 1.0 - cj_mean;
            const double dist = di * di + dj * dj;
            if (dist < best || (dist == best && m < rep)) {
                best = dist;
                rep = m;
            }
        }
        const int pi = static_cast<int>(rep % static_cast<std::size_t>(nx)) + 1;
        const int pj = static_cast<int>(rep / static_cast<std::size_t>(nx)) + 1;
        peaks.push_back({pi, pj, mesh.x_center(pi), mesh.y_center(pj), value,
                         is_max ? PeakKind::maximum : PeakKind::minimum, classify_location(pi, pj, nx, ny)});
    }

    std::stable_sort(peaks.begin(), peaks.end(), [nx](const Peak& a, const Peak& b) {
        const double aa = std::abs(a.value);
        const double bb = std::abs(b.value);
        if (aa != bb) return aa > bb;
        return (a.j - 1) * nx + a.i < (b.j - 1) * nx + b.i;
    });
    return peaks;
}

}  // namespace fvspike
