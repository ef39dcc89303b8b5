#include "fvspike/guess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "fvspike/error.hpp"
#include "fvspike/expression.hpp"
#include "fvspike/specfun.hpp"

namespace fvspike {

namespace {

constexpr std::array<std::pair<BuiltinGuess, const char*>, 8> kNames{{
    {BuiltinGuess::recip_si, "recip_si"},
    {BuiltinGuess::recip_s_si, "recip_s_si"},
    {BuiltinGuess::abs_sec, "abs_sec"},
    {BuiltinGuess::abs_cos, "abs_cos"},
    {BuiltinGuess::abs_cd, "abs_cd"},
    {BuiltinGuess::recip_abs_cn, "recip_abs_cn"},
    {BuiltinGuess::constant, "constant"},
    {BuiltinGuess::random_uniform, "random_uniform"},
}};

double floor_at(double v, double clamp) { return std::max(clamp, v); }

double reciprocal(double magnitude, double clamp) { return 1.0 / std::max(clamp, magnitude); }

GridField materialize_builtin(const BuiltinSpec& b, double clamp, const Mesh& mesh) {
    GridField out(mesh);
    auto values = out.values();
    const std::size_t n = values.size();

    if (b.name == BuiltinGuess::constant) {
        if (!std::isfinite(b.kappa) || b.kappa <= 0.0) {
            throw InvalidArgument("constant guess needs a finite kappa > 0");
        }
        std::fill(values.begin(), values.end(), floor_at(b.kappa, clamp));
        return out;
    }
    if (b.name == BuiltinGuess::random_uniform) {
        if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi)) {
            throw InvalidArgument("random_uniform guess needs finite lo < hi");
        }
        std::mt19937_64 rng(b.seed);
        std::uniform_real_distribution<double> dist(b.lo, b.hi);
        for (auto& v : values) {
            v = floor_at(std::abs(dist(rng)), clamp);
        }
        return out;
    }
    if ((b.name == BuiltinGuess::abs_cd || b.name == BuiltinGuess::recip_abs_cn) && !std::isfinite(b.m)) {
        throw InvalidArgument("elliptic guess needs a finite parameter m");
    }

    for (std::size_t k = 0; k < n; ++k) {
        const double s = static_cast<double>(k + 1);
        double v = 0.0;
        switch (b.name) {
            case BuiltinGuess::recip_si: v = reciprocal(std::abs(sine_integral(s)), clamp); break;
            case BuiltinGuess::recip_s_si: v = reciprocal(std::abs(s * sine_integral(s)), clamp); break;
            case BuiltinGuess::abs_sec: v = reciprocal(std::abs(std::cos(s)), clamp); break;
            case BuiltinGuess::abs_cos: v = floor_at(std::abs(std::cos(s)), clamp); break;
            case BuiltinGuess::abs_cd: {
                const JacobiTriple t = jacobi_elliptic(s, b.m);
                v = floor_at(std::abs(t.cn) / std::max(clamp, std::abs(t.dn)), clamp);
                break;
            }
            case BuiltinGuess::recip_abs_cn: v = reciprocal(std::abs(jacobi_elliptic(s, b.m).cn), clamp); break;
            case BuiltinGuess::constant:
            case BuiltinGuess::random_uniform: break;
        }
        values[k] = v;
    }
    return out;
}

GridField materialize_expression(const ExpressionSpec& e, double clamp, const Mesh& mesh) {
    const ExprNode ast = parse_expression(e.source);
    GridField out(mesh);
    auto values = out.values();
    const int nx = mesh.n_x();
    for (int j = 1; j <= mesh.n_y(); ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int s = (j - 1) * nx + i;
            const ExprEnv env{static_cast<double>(s), static_cast<double>(i), static_cast<double>(j),
                              mesh.x_center(i), mesh.y_center(j), static_cast<double>(nx)};
            double v = eval_expression(ast, env);
            if (!std::isfinite(v) || std::abs(v) < clamp) {
                v = clamp;
            }
            values[static_cast<std::size_t>(s - 1)] = v;
        }
    }
    return out;
}

}  // namespace

std::string to_string(BuiltinGuess g) {
    for (const auto& [value, name] : kNames) {
        if (value == g) return name;
    }
    return "unknown";
}

BuiltinGuess builtin_from_string(const std::string& name) {
    for (const auto& [value, text] : kNames) {
        if (name == text) return value;
    }
    throw InvalidArgument("unknown builtin guess '" + name + "'");
}

std::string describe(const GuessSpec& spec) {
    std::ostringstream out;
    if (const auto* e = std::get_if<ExpressionSpec>(&spec.kind)) {
        out << "expr: " << e->source;
        return out.str();
    }
    const auto& b = std::get<BuiltinSpec>(spec.kind);
    out << to_string(b.name);
    switch (b.name) {
        case BuiltinGuess::abs_cd:
        case BuiltinGuess::recip_abs_cn: out << "(m=" << b.m << ")"; break;
        case BuiltinGuess::constant: out << "(" << b.kappa << ")"; break;
        case BuiltinGuess::random_uniform: out << "(" << b.lo << ", " << b.hi << ", seed=" << b.seed << ")"; break;
        default: break;
    }
    return out.str();
}

GridField materialize_guess(const GuessSpec& spec, const Mesh& mesh) {
    if (!std::isfinite(spec.clamp_min) || spec.clamp_min < 0.0) {
        throw InvalidArgument("clamp_min must be finite and non-negative");
    }
    if (const auto* e = std::get_if<ExpressionSpec>(&spec.kind)) {
        return materialize_expression(*e, spec.clamp_min, mesh);
    }
    return materialize_builtin(std::get<BuiltinSpec>(spec.kind), spec.clamp_min, mesh);
}

}  // namespace fvspike
