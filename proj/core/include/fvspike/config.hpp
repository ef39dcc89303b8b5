#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fvspike/error.hpp"
#include "fvspike/guess.hpp"
#include "fvspike/mesh.hpp"
#include "fvspike/solver.hpp"
#include "fvspike/system.hpp"

namespace fvspike {

/// Bad configuration text or value. line() is 0 when the origin has no line (JSON input).
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, int line, const std::string& message);

    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

struct ConfigValue {
    std::string text;
    int line = 0;
};

/// Flat "section.key" -> value map.
using ConfigMap = std::map<std::string, ConfigValue>;

/// A parsed config file: the base settings plus named variants that override base keys.
struct ConfigSource {
    ConfigMap base;
    std::vector<std::pair<std::string, ConfigMap>> variants;
};

/// Line-oriented format:
///
///   # comment
///   [section]
///   key = value
///   [variant NAME]
///   section.key = value
///
/// Keys before the first section header belong to section "run".
[[nodiscard]] ConfigSource parse_config_text(std::string_view text);

/// JSON alternative: {"section": {"key": value, ...}, ..., "variants": {"NAME": {"section.key": value}}}.
/// A run report (an object with a "config" member) is accepted and its echoed config is used.
[[nodiscard]] ConfigSource parse_config_json(std::string_view text);

/// Dispatches on content: JSON when the first non-blank character is '{'.
[[nodiscard]] ConfigSource load_config_file(const std::filesystem::path& path);

struct OutputSet {
    bool grid_csv = true;
    bool report_json = true;
    bool contours_json = true;
    bool peaks_csv = true;
};

/// Property-level outcomes a recipe asserts. Soft checks warn unless running strict.
struct Expectations {
    std::optional<bool> converged;
    std::optional<bool> positive;
    std::optional<bool> nonconstant;
    std::optional<int> min_maxima;
    std::optional<int> min_interior_maxima;
    std::optional<int> min_minima_below_mean;
    std::optional<int> expected_maxima;          ///< soft: exact count
    std::optional<double> max_value;             ///< soft: within max_value_factor
    double max_value_factor = 5.0;
    std::optional<std::array<double, 2>> argmax; ///< soft: within argmax_cells cells
    double argmax_cells = 3.0;
};

struct RunConfig {
    std::string name = "run";
    Domain domain = Domain::square(-1.0, 1.0);
    int n_x = 45;
    int n_y = 45;
    SolverParams params{};
    GuessSpec guess{};
    NewtonConfig newton{};
    OutputSet outputs{};
    std::vector<double> levels;   ///< explicit contour levels; empty: level_count evenly spaced
    int level_count = 8;
    double prominence = 0.0;      ///< peak prominence filter
    Expectations expect{};

    void validate() const;
};

/// Builds and validates a RunConfig; unknown keys and bad values raise ConfigError.
[[nodiscard]] RunConfig run_config_from_map(const ConfigMap& map);

/// Every setting of `config` as explicit text, suitable for run_config_from_map.
[[nodiscard]] ConfigMap to_config_map(const RunConfig& config);

/// Base config plus one config per variant (the base alone when there are none).
[[nodiscard]] std::vector<RunConfig> expand_runs(const ConfigSource& source);

/// Comma-separated list of finite reals; throws ConfigError naming `field`.
[[nodiscard]] std::vector<double> parse_real_list(std::string_view text, const std::string& field, int line = 0);

}  // namespace fvspike
