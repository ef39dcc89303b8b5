#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "fvspike/mesh.hpp"

namespace fvspike {

enum class BuiltinGuess {
    recip_si,      ///< 1 / Si(s)
    recip_s_si,    ///< 1 / |s Si(s)|
    abs_sec,       ///< |sec(s)|
    abs_cos,       ///< |cos(s)|
    abs_cd,        ///< |cd(s, m)|
    recip_abs_cn,  ///< 1 / |cn(s, m)|
    constant,      ///< kappa > 0
    random_uniform ///< U(lo, hi), seeded
};

/// Parameters of a builtin family; fields irrelevant to the family are ignored.
struct BuiltinSpec {
    BuiltinGuess name = BuiltinGuess::constant;
    double m = 0.0;       ///< elliptic parameter for abs_cd / recip_abs_cn
    double kappa = 1.0;   ///< constant value
    double lo = 0.5;      ///< random_uniform bounds
    double hi = 1.5;
    std::uint64_t seed = 0;
};

struct ExpressionSpec {
    std::string source;
};

struct GuessSpec {
    std::variant<BuiltinSpec, ExpressionSpec> kind = BuiltinSpec{};
    double clamp_min = 1e-8;
};

/// Canonical spelling ("recip_si", "abs_cd", ...).
[[nodiscard]] std::string to_string(BuiltinGuess g);

/// Inverse of to_string; throws InvalidArgument on unknown names.
[[nodiscard]] BuiltinGuess builtin_from_string(const std::string& name);

/// Human-readable one-liner, e.g. "abs_cd(m=10)" or "expr: 1/si(s)".
[[nodiscard]] std::string describe(const GuessSpec& spec);

/// Initial vector on `mesh`.
///
/// Each cell sees s, i, j, x = x_center(i), y = y_center(j), N = n_x. Builtins are clamped so
/// every value is finite and >= clamp_min; expression results are kept unless non-finite or of
/// magnitude below clamp_min, which are replaced by clamp_min. Evaluation errors propagate as
/// EvalError carrying the cell.
[[nodiscard]] GridField materialize_guess(const GuessSpec& spec, const Mesh& mesh);

}  // namespace fvspike
