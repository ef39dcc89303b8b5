// fvspike: steady states of -d Δu + u = u^q with homogeneous Neumann boundaries.
//
//   fvspike solve  --config <file> [--out <dir>] [--strict]
//   fvspike d0     --q <v> --domain x0,x1,y0,y1
//   fvspike sweep  --config <file> --axis d|q --values v1,v2,... [--parallel k] [--out <dir>]
//   fvspike peaks  --in <grid.csv> [--prominence p]
//   fvspike export --in <grid.csv> --format csv|contour_json|gnuplot_matrix [--out <file>] [--levels a,b,...]
//
// Exit codes: 0 converged, 1 usage or configuration error, 2 not converged,
// 3 a recipe expectation failed (soft expectations only count with --strict).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fvspike/analysis.hpp"
#include "fvspike/config.hpp"
#include "fvspike/grid_io.hpp"
#include "fvspike/run.hpp"

namespace {

using namespace fvspike;

constexpr int kUsageError = 1;

std::string show(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void print_summary(const RunReport& r, std::ostream& out) {
    const SolveReport& s = r.solve;
    out << "run " << r.config.name << ": q=" << show(r.config.params.q)
        << " d=" << show(r.config.params.d) << " grid " << r.config.n_x << "x" << r.config.n_y
        << " guess " << describe(r.config.guess) << '\n';
    out << "  newton: " << to_string(s.termination) << " after " << s.iterations << " iterates, |F|inf = "
        << show(s.final_residual);
    if (s.floor_events > 0) out << ", " << s.floor_events << " step-floor events";
    out << '\n';
    if (!s.message.empty()) out << "  detail: " << s.message << '\n';
    if (s.termination == Termination::non_finite) {
        out << "  solution: non-finite, analysis skipped\n";
    } else {
        out << "  solution: max " << show(r.stats.max) << " at (" << show(r.stats.argmax_x) << ", "
            << show(r.stats.argmax_y) << "), min " << show(r.stats.min) << ", mean "
            << show(r.stats.mean) << (s.positive ? ", positive" : ", NOT positive")
            << (r.stats.is_constant ? ", constant" : ", nonconstant") << '\n';
        out << "  peaks: " << r.count_peaks(PeakKind::maximum) << " maxima (" << r.count_interior_maxima()
            << " interior), " << r.count_peaks(PeakKind::minimum) << " minima\n";
    }
    if (r.d0) out << "  d0 = " << show(*r.d0) << " (advisory)\n";
    for (const auto& e : r.expectations) {
        if (e.passed) {
            out << "  expect " << e.name << ": ok (" << e.observed << ")\n";
        } else {
            out << "  " << (e.soft ? "warning" : "FAILED") << ": expect " << e.name << " " << e.expected
                << ", observed " << e.observed << '\n';
        }
    }
    out << "  wall time " << r.wall_time << " s\n";
}

int cmd_solve(const std::string& config_path, const std::optional<std::string>& out_dir, bool strict) {
    const ConfigSource src = load_config_file(config_path);
    const std::vector<RunConfig> runs = expand_runs(src);
    const std::filesystem::path base = resolve_output_dir(out_dir);
    int worst = 0;
    for (const RunConfig& c : runs) {
        RunReport r = run_solve(c);
        const std::filesystem::path dir = runs.size() == 1 ? base : base / c.name;
        write_outputs(r, dir);
        print_summary(r, std::cout);
        std::cout << "  outputs in " << dir.string() << '\n';
        worst = std::max(worst, exit_code(r, strict));
    }
    return worst;
}

int cmd_d0(double q, const std::string& domain_text) {
    const auto b = parse_real_list(domain_text, "--domain");
    if (b.size() != 4) {
        throw ConfigError("--domain", 0, "expected x0,x1,y0,y1");
    }
    const Domain domain{b[0], b[1], b[2], b[3]};
    domain.validate();
    const double d0 = compute_d0(q, domain.area());
    std::printf("%.12g\n", d0);
    if (q == 5.0 && domain.area() == 100.0) {
        std::printf("note: a value of about 0.5 is often quoted for q=5 on [-5,5]^2; the closed form gives %.4g\n",
                    d0);
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis, const std::string& values_text, int parallel,
              const std::optional<std::string>& out_dir) {
    const std::vector<double> values = parse_real_list(values_text, "--values");
    const ConfigSource src = load_config_file(config_path);
    if (!src.variants.empty()) {
        throw ConfigError("", 0, "sweep needs a config without variants");
    }
    const RunConfig base = run_config_from_map(src.base);
    const SweepAxis ax = axis == "d" ? SweepAxis::d : SweepAxis::q;
    const std::filesystem::path dir = resolve_output_dir(out_dir);
    const auto rows = run_sweep(base, ax, values, parallel, dir);
    write_sweep_summary(std::cout, rows);
    std::cout << "summary written to " << (dir / "sweep_summary.csv").string() << '\n';
    for (const auto& r : rows) {
        if (!r.error.empty() || !r.converged) return 2;
    }
    return 0;
}

GridField load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    return read_grid_csv(in);
}

int cmd_peaks(const std::string& in_path, double prominence) {
    const GridField u = load_grid(in_path);
    write_peaks_csv(std::cout, detect_peaks(u, prominence));
    return 0;
}

int cmd_export(const std::string& in_path, const std::string& format, const std::optional<std::string>& out_path,
               const std::string& levels_text, int level_count) {
    const GridField u = load_grid(in_path);
    std::ostringstream buf;
    if (format == "csv") {
        write_grid_csv(buf, u);
    } else if (format == "gnuplot_matrix") {
        write_gnuplot_matrix(buf, u);
    } else {
        const std::vector<double> levels =
            levels_text.empty() ? default_levels(u, level_count) : parse_real_list(levels_text, "--levels");
        write_contours_json(buf, marching_squares(u, levels));
    }
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw FormatError("cannot write '" + *out_path + "'");
        out << buf.str();
    } else {
        std::cout << buf.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume solver for -d Δu + u = u^q with homogeneous Neumann conditions"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    bool strict = false;
    auto* solve = app.add_subcommand("solve", "Solve one configuration (or each of its variants)");
    solve->add_option("--config", config_path, "Config file (key=value sections or JSON)")->required();
    solve->add_option("--out", out_dir, "Output directory (default $FVSPIKE_OUT or ./fvspike_out)");
    solve->add_flag("--strict", strict, "Treat soft expectation failures as errors");

    double q = 0.0;
    std::string domain_text;
    auto* d0 = app.add_subcommand("d0", "Print the closed-form diffusion threshold d0(q, |Ω|)");
    d0->add_option("--q", q, "Exponent q")->required();
    d0->add_option("--domain", domain_text, "x0,x1,y0,y1")->required();

    std::string axis;
    std::string values_text;
    int parallel = 1;
    auto* sweep = app.add_subcommand("sweep", "Solve a base config for several values of d or q");
    sweep->add_option("--config", config_path, "Base config file")->required();
    sweep->add_option("--axis", axis, "Parameter to vary")->required()->check(CLI::IsMember({"d", "q"}));
    sweep->add_option("--values", values_text, "Comma-separated values")->required();
    sweep->add_option("--parallel", parallel, "Concurrent solves")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory");

    std::string in_path;
    double prominence = 0.0;
    auto* peaks = app.add_subcommand("peaks", "List discrete maxima and minima of a grid CSV");
    peaks->add_option("--in", in_path, "Grid CSV")->required();
    peaks->add_option("--prominence", prominence, "Minimum |value - median|")->check(CLI::NonNegativeNumber);

    std::string format;
    std::optional<std::string> out_file;
    std::string levels_text;
    int level_count = 8;
    auto* exp = app.add_subcommand("export", "Re-serialise a grid CSV");
    exp->add_option("--in", in_path, "Grid CSV")->required();
    exp->add_option("--format", format, "Target format")
        ->required()
        ->check(CLI::IsMember({"csv", "contour_json", "gnuplot_matrix"}));
    exp->add_option("--out", out_file, "Output file (default stdout)");
    exp->add_option("--levels", levels_text, "Contour levels for contour_json");
    exp->add_option("--level-count", level_count, "Evenly spaced levels when --levels is absent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*solve) return cmd_solve(config_path, out_dir, strict);
        if (*d0) return cmd_d0(q, domain_text);
        if (*sweep) return cmd_sweep(config_path, axis, values_text, parallel, out_dir);
        if (*peaks) return cmd_peaks(in_path, prominence);
        if (*exp) return cmd_export(in_path, format, out_file, levels_text, level_count);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}
