#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fvspike/analysis.hpp"
#include "fvspike/config.hpp"
#include "fvspike/solver.hpp"

namespace fvspike {

/// Outcome of one recipe expectation.
struct ExpectationResult {
    std::string name;
    bool soft = false;
    std::string expected;
    std::string observed;
    bool passed = false;
};

struct RunReport {
    RunConfig config;
    SolveReport solve;
    std::optional<double> d0{};             ///< absent when q = 1
    SolutionStats stats{};
    std::vector<Peak> peaks{};
    std::vector<SymmetryDeviation> symmetry{}; ///< square grids only
    std::vector<ExpectationResult> expectations{};
    double wall_time = 0.0;                  ///< seconds
    std::map<std::string, std::string> files{};

    [[nodiscard]] int count_peaks(PeakKind kind) const;
    [[nodiscard]] int count_interior_maxima() const;
    [[nodiscard]] int count_minima_below_mean() const;
};

/// materialize_guess -> newton_solve -> analysis, without touching the filesystem.
/// Throws on configuration problems (including guess evaluation errors).
[[nodiscard]] RunReport run_solve(const RunConfig& config);

/// Writes the configured outputs into `dir` (created if needed) and records their paths in
/// report.files; report.json is written last.
void write_outputs(RunReport& report, const std::filesystem::path& dir);

[[nodiscard]] std::string report_json(const RunReport& report);

/// 0 converged with all hard (and, when strict, soft) expectations met; 2 not converged;
/// 3 expectation failure.
[[nodiscard]] int exit_code(const RunReport& report, bool strict);

enum class SweepAxis { d, q };

struct SweepRow {
    double value = 0.0;
    bool converged = false;
    double final_residual = 0.0;
    int n_peaks_max = 0;
    int n_peaks_min = 0;
    double max = 0.0;
    int iterations = 0;
    std::string error;  ///< non-empty when the run failed before producing a report
};

/// One independent solve per value with at most `parallelism` running at once. Each run writes
/// into `out_dir/<axis>_<index>`; the summary goes to `out_dir/sweep_summary.csv`. Values must be
/// finite (checked before any run starts).
[[nodiscard]] std::vector<SweepRow> run_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                                              int parallelism, const std::filesystem::path& out_dir);

void write_sweep_summary(std::ostream& out, const std::vector<SweepRow>& rows);

/// Directory for outputs: explicit value, else $FVSPIKE_OUT, else "fvspike_out".
[[nodiscard]] std::filesystem::path resolve_output_dir(const std::optional<std::string>& explicit_dir);

}  // namespace fvspike
