#include <algorithm>
#include <cmath>
#include <sstream>

#include "fvspike/solver.hpp"

namespace fvspike {

namespace {

double sum_squares(std::span<const double> v, double scale) noexcept {
    double acc = 0.0;
    for (const double x : v) {
        const double y = x / scale;
        acc += y * y;
    }
    return acc;
}

// Armijo test on 0.5 ||F||^2, evaluated with both residuals divided by a common scale so that
// residuals beyond sqrt(DBL_MAX) (large iterates at high q) still compare.
bool sufficient_decrease(std::span<const double> f0, std::span<const double> f1, double c, double alpha) {
    const double scale = std::max(norm_inf(f0), norm_inf(f1));
    if (!std::isfinite(scale)) return false;
    if (scale == 0.0) return true;
    return sum_squares(f1, scale) <= (1.0 - 2.0 * c * alpha) * sum_squares(f0, scale);
}

bool all_finite(std::span<const double> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string first_non_finite(const GridField& x) {
    const auto v = x.values();
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k])) {
            const CellIndex c = x.mesh().inverse_index(static_cast<int>(k + 1));
            std::ostringstream msg;
            msg << "non-finite iterate at s=" << k + 1 << " (i=" << c.i << ", j=" << c.j << "): " << v[k];
            return msg.str();
        }
    }
    return {};
}

void finish(SolveReport& report) {
    const auto v = report.solution.values();
    report.final_residual = report.residual_history.empty() ? 0.0 : report.residual_history.back();
    report.positive = std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
    if (v.empty()) {
        return;
    }
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double sum = 0.0;
    for (const double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    report.constant_solution = (*hi - *lo) < 1e-8 * std::max(1.0, std::abs(mean));
}

}  // namespace

double norm_inf(std::span<const double> v) noexcept {
    double best = 0.0;
    for (const double x : v) {
        const double a = std::abs(x);
        if (a > best || std::isnan(a)) best = a;
    }
    return best;
}

void NewtonConfig::validate() const {
    if (!(tol_residual > 0.0) || !(tol_step > 0.0)) {
        throw InvalidArgument("Newton tolerances must be positive");
    }
    if (max_iterations < 1) {
        throw InvalidArgument("max_iterations must be >= 1");
    }
    if (damping) {
        const auto& a = *damping;
        if (!(a.c > 0.0 && a.c < 1.0) || !(a.shrink > 0.0 && a.shrink < 1.0) || !(a.min_step > 0.0 && a.min_step <= 1.0)) {
            throw InvalidArgument("Armijo damping needs c, shrink in (0, 1) and min_step in (0, 1]");
        }
        if (!(a.max_step > 0.0)) {
            throw InvalidArgument("Armijo max_step must be positive");
        }
    }
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::step_stalled: return "step_stalled";
        case Termination::max_iterations: return "max_iterations";
        case Termination::singular_jacobian: return "singular_jacobian";
        case Termination::non_finite: return "non_finite";
    }
    return "unknown";
}

SolveReport newton_solve(const Mesh& mesh, const SolverParams& params, const GridField& x0,
                         const NewtonConfig& config) {
    params.validate();
    config.validate();
    require_same_mesh(mesh, x0);

    SolveReport report{.solution = x0};
    GridField& x = report.solution;

    if (const std::string bad = first_non_finite(x); !bad.empty()) {
        report.termination = Termination::non_finite;
        report.message = "initial guess: " + bad;
        finish(report);
        return report;
    }

    GridField f = residual(mesh, params, x);
    const std::size_t n = x.size();
    std::vector<double> rhs(n);

    for (int step = 0;; ++step) {
        const double r = norm_inf(f.values());
        report.residual_history.push_back(r);
        report.iterations = static_cast<int>(report.residual_history.size());
        if (r <= config.tol_residual) {
            report.termination = Termination::converged;
            report.converged = true;
            break;
        }
        if (step > 0 && report.last_step <= config.tol_step) {
            report.termination = Termination::step_stalled;
            break;
        }
        if (step >= config.max_iterations) {
            report.termination = Termination::max_iterations;
            break;
        }

        std::vector<double> dx;
        try {
            const StencilMatrix jac = jacobian(mesh, params, x);
            const auto fv = f.values();
            for (std::size_t k = 0; k < n; ++k) rhs[k] = -fv[k];
            dx = linear_solve(jac, rhs);
        } catch (const SingularMatrixError& e) {
            report.termination = Termination::singular_jacobian;
            report.message = e.what();
            break;
        } catch (const MathDomainError& e) {
            report.termination = Termination::singular_jacobian;
            report.message = e.what();
            break;
        }

        double alpha = 1.0;
        GridField trial = x;
        GridField f_trial = f;
        auto take = [&](double a) {
            const auto xv = x.values();
            auto tv = trial.values();
            for (std::size_t k = 0; k < n; ++k) tv[k] = xv[k] + a * dx[k];
            f_trial = residual(mesh, params, trial);
        };

        if (!config.damping) {
            take(alpha);
        } else {
            const ArmijoDamping& arm = *config.damping;
            const double dx_norm = norm_inf(dx);
            if (dx_norm > arm.max_step) alpha = std::max(arm.max_step / dx_norm, arm.min_step);
            for (;;) {
                take(alpha);
                if (all_finite(trial.values()) && sufficient_decrease(f.values(), f_trial.values(), arm.c, alpha)) {
                    break;
                }
                const double next = alpha * arm.shrink;
                if (next < arm.min_step) {
                    alpha = arm.min_step;
                    take(alpha);
                    ++report.floor_events;
                    break;
                }
                alpha = next;
            }
        }

        report.step_history.push_back(alpha);
        report.last_step = alpha * norm_inf(dx);
        x = std::move(trial);
        f = std::move(f_trial);

        if (const std::string bad = first_non_finite(x); !bad.empty()) {
            report.termination = Termination::non_finite;
            report.message = bad;
            report.residual_history.push_back(norm_inf(f.values()));
            report.iterations = static_cast<int>(report.residual_history.size());
            break;
        }
    }

    finish(report);
    return report;
}

}  // namespace fvspike
