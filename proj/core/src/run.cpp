#include "fvspike/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fvspike/grid_io.hpp"
#include "fvspike/guess.hpp"

namespace fvspike {

namespace {

using ojson = nlohmann::ordered_json;

void evaluate_expectations(RunReport& r) {
    const Expectations& x = r.config.expect;
    auto add = [&r](std::string name, bool soft, std::string expected, std::string observed, bool passed) {
        r.expectations.push_back({std::move(name), soft, std::move(expected), std::move(observed), passed});
    };
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };

    if (x.converged) add("converged", false, b(*x.converged), b(r.solve.converged), r.solve.converged == *x.converged);
    if (x.positive) add("positive", false, b(*x.positive), b(r.solve.positive), r.solve.positive == *x.positive);
    if (x.nonconstant) {
        const bool nonconstant = !r.stats.is_constant;
        add("nonconstant", false, b(*x.nonconstant), b(nonconstant), nonconstant == *x.nonconstant);
    }
    const int maxima = r.count_peaks(PeakKind::maximum);
    if (x.min_maxima) {
        add("min_maxima", false, ">= " + std::to_string(*x.min_maxima), std::to_string(maxima), maxima >= *x.min_maxima);
    }
    if (x.min_interior_maxima) {
        const int interior = r.count_interior_maxima();
        add("min_interior_maxima", false, ">= " + std::to_string(*x.min_interior_maxima), std::to_string(interior),
            interior >= *x.min_interior_maxima);
    }
    if (x.min_minima_below_mean) {
        const int below = r.count_minima_below_mean();
        add("min_minima_below_mean", false, ">= " + std::to_string(*x.min_minima_below_mean), std::to_string(below),
            below >= *x.min_minima_below_mean);
    }
    if (x.expected_maxima) {
        add("expected_maxima", true, std::to_string(*x.expected_maxima), std::to_string(maxima),
            maxima == *x.expected_maxima);
    }
    if (x.max_value) {
        const double target = *x.max_value;
        const double observed = r.stats.max;
        const bool ok = observed > 0.0 && target > 0.0 && observed <= target * x.max_value_factor &&
                        observed >= target / x.max_value_factor;
        add("max_value", true, format_double(target) + " within x" + format_double(x.max_value_factor),
            format_double(observed), ok);
    }
    if (x.argmax) {
        const Mesh mesh(r.config.domain, r.config.n_x, r.config.n_y);
        const double cells = std::max(std::abs(r.stats.argmax_x - (*x.argmax)[0]) / mesh.h_x(),
                                      std::abs(r.stats.argmax_y - (*x.argmax)[1]) / mesh.h_y());
        add("argmax", true,
            "(" + format_double((*x.argmax)[0]) + ", " + format_double((*x.argmax)[1]) + ") within " +
                format_double(x.argmax_cells) + " cells",
            "(" + format_double(r.stats.argmax_x) + ", " + format_double(r.stats.argmax_y) + ")",
            cells <= x.argmax_cells);
    }
}

ojson typed_value(const std::string& key, const std::string& text) {
    if (key == "run.name" || key == "guess.kind" || key == "guess.expression") return text;
    if (text == "true") return true;
    if (text == "false") return false;
    const char* first = text.data();
    const char* last = first + text.size();
    long long n = 0;
    if (const auto [end, ec] = std::from_chars(first, last, n); ec == std::errc{} && end == last) return n;
    double v = 0.0;
    if (const auto [end, ec] = std::from_chars(first, last, v); ec == std::errc{} && end == last) return v;
    return text;
}

ojson config_json(const RunConfig& c) {
    ojson j = ojson::object();
    for (const auto& [key, value] : to_config_map(c)) {
        const auto dot = key.find('.');
        j[key.substr(0, dot)][key.substr(dot + 1)] = typed_value(key, value.text);
    }
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

}  // namespace

int RunReport::count_peaks(PeakKind kind) const {
    return static_cast<int>(std::count_if(peaks.begin(), peaks.end(), [kind](const Peak& p) { return p.kind == kind; }));
}

int RunReport::count_interior_maxima() const {
    return static_cast<int>(std::count_if(peaks.begin(), peaks.end(), [](const Peak& p) {
        return p.kind == PeakKind::maximum && p.location_class == LocationClass::interior;
    }));
}

int RunReport::count_minima_below_mean() const {
    return static_cast<int>(std::count_if(peaks.begin(), peaks.end(), [this](const Peak& p) {
        return p.kind == PeakKind::minimum && p.value < stats.mean;
    }));
}

namespace {

bool finite_field(const GridField& u) {
    const auto v = u.values();
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

RunReport run_solve(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const Mesh mesh(config.domain, config.n_x, config.n_y);
    const GridField x0 = materialize_guess(config.guess, mesh);

    RunReport r{.config = config, .solve = newton_solve(mesh, config.params, x0, config.newton)};
    if (config.params.q != 1.0) {
        r.d0 = compute_d0(config.params.q, config.domain.area());
    }
    if (finite_field(r.solve.solution)) {
        r.stats = solution_stats(r.solve.solution);
        r.peaks = detect_peaks(r.solve.solution, config.prominence);
        if (mesh.is_square()) {
            r.symmetry = symmetry_report(r.solve.solution);
        }
    }
    evaluate_expectations(r);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string report_json(const RunReport& r) {
    ojson j;
    j["config"] = config_json(r.config);

    const SolveReport& s = r.solve;
    ojson solve;
    solve["converged"] = s.converged;
    solve["termination"] = to_string(s.termination);
    solve["message"] = s.message;
    solve["iterations"] = s.iterations;
    solve["final_residual"] = s.final_residual;
    solve["last_step"] = s.last_step;
    solve["floor_events"] = s.floor_events;
    solve["positive"] = s.positive;
    solve["constant_solution"] = s.constant_solution;
    solve["residual_history"] = s.residual_history;
    solve["step_history"] = s.step_history;
    j["solve"] = std::move(solve);

    j["d0"] = r.d0 ? ojson(*r.d0) : ojson(nullptr);
    j["stats"] = {{"max", r.stats.max},           {"argmax", {r.stats.argmax_x, r.stats.argmax_y}},
                  {"min", r.stats.min},           {"argmin", {r.stats.argmin_x, r.stats.argmin_y}},
                  {"mean", r.stats.mean},         {"is_constant", r.stats.is_constant}};

    j["peak_counts"] = {{"maxima", r.count_peaks(PeakKind::maximum)},
                        {"minima", r.count_peaks(PeakKind::minimum)},
                        {"interior_maxima", r.count_interior_maxima()},
                        {"minima_below_mean", r.count_minima_below_mean()}};
    j["peaks"] = ojson::array();
    for (const Peak& p : r.peaks) {
        j["peaks"].push_back({{"kind", to_string(p.kind)},
                              {"i", p.i},
                              {"j", p.j},
                              {"x", p.x},
                              {"y", p.y},
                              {"value", p.value},
                              {"location_class", to_string(p.location_class)}});
    }
    j["symmetry"] = ojson::object();
    for (const auto& dev : r.symmetry) j["symmetry"][to_string(dev.symmetry)] = dev.deviation;
    j["expectations"] = ojson::array();
    for (const auto& e : r.expectations) {
        j["expectations"].push_back({{"name", e.name},
                                     {"soft", e.soft},
                                     {"expected", e.expected},
                                     {"observed", e.observed},
                                     {"passed", e.passed}});
    }
    j["wall_time"] = r.wall_time;
    j["files"] = r.files;
    return j.dump(2) + "\n";
}

void write_outputs(RunReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const GridField& u = r.solve.solution;
    if (r.config.outputs.grid_csv) {
        write_file(dir / "grid.csv", grid_csv_string(u));
        std::ostringstream header;
        write_grid_header_json(header, u.mesh());
        write_file(dir / "grid.json", header.str());
        r.files["grid_csv"] = (dir / "grid.csv").string();
        r.files["grid_json"] = (dir / "grid.json").string();
    }
    if (r.config.outputs.contours_json && finite_field(u)) {
        const std::vector<double> levels =
            r.config.levels.empty() ? default_levels(u, r.config.level_count) : r.config.levels;
        const ContourSet contours = marching_squares(u, levels);
        std::ostringstream js;
        write_contours_json(js, contours);
        write_file(dir / "contours.json", js.str());
        std::ostringstream csv;
        write_contours_csv(csv, contours);
        write_file(dir / "contours.csv", csv.str());
        r.files["contours_json"] = (dir / "contours.json").string();
        r.files["contours_csv"] = (dir / "contours.csv").string();
    }
    if (r.config.outputs.peaks_csv) {
        std::ostringstream csv;
        write_peaks_csv(csv, r.peaks);
        write_file(dir / "peaks.csv", csv.str());
        r.files["peaks_csv"] = (dir / "peaks.csv").string();
    }
    if (r.config.outputs.report_json) {
        r.files["report_json"] = (dir / "report.json").string();
        write_file(dir / "report.json", report_json(r));
    }
}

int exit_code(const RunReport& r, bool strict) {
    if (!r.solve.converged) {
        return 2;
    }
    for (const auto& e : r.expectations) {
        if (!e.passed && (!e.soft || strict)) {
            return 3;
        }
    }
    return 0;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                                int parallelism, const std::filesystem::path& out_dir) {
    if (values.empty()) {
        throw InvalidArgument("sweep needs at least one value");
    }
    for (const double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("sweep values must be finite");
        }
    }
    const int workers = std::clamp(parallelism, 1, static_cast<int>(values.size()));
    const char* axis_name = axis == SweepAxis::d ? "d" : "q";

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < values.size(); k = next++) {
            SweepRow& row = rows[k];
            row.value = values[k];
            try {
                RunConfig c = base;
                (axis == SweepAxis::d ? c.params.d : c.params.q) = values[k];
                c.name = base.name + "-" + axis_name + "=" + format_double(values[k]);
                RunReport rep = run_solve(c);
                write_outputs(rep, out_dir / (std::string(axis_name) + "_" + std::to_string(k)));
                row.converged = rep.solve.converged;
                row.final_residual = rep.solve.final_residual;
                row.n_peaks_max = rep.count_peaks(PeakKind::maximum);
                row.n_peaks_min = rep.count_peaks(PeakKind::minimum);
                row.max = rep.stats.max;
                row.iterations = rep.solve.iterations;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    write_sweep_summary(csv, rows);
    write_file(out_dir / "sweep_summary.csv", csv.str());
    return rows;
}

void write_sweep_summary(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,converged,final_residual,n_peaks_max,n_peaks_min,max,iterations,error\n";
    for (const auto& r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        out << format_double(r.value) << ',' << (r.converged ? "true" : "false") << ','
            << format_double(r.final_residual) << ',' << r.n_peaks_max << ',' << r.n_peaks_min << ','
            << format_double(r.max) << ',' << r.iterations << ',' << err << '\n';
    }
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) {
        return *explicit_dir;
    }
    if (const char* env = std::getenv("FVSPIKE_OUT"); env && *env) {
        return env;
    }
    return "fvspike_out";
}

}  // namespace fvspike
