#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvspike/error.hpp"
#include "fvspike/mesh.hpp"
#include "fvspike/system.hpp"

namespace fvspike {

/// Raised by the banded factorisation when a pivot falls below 1e-14 times its row norm.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t row, const std::string& message) : Error(message), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// LU factorisation with partial pivoting of a five-band grid matrix, treated as a band
/// matrix with lower and upper bandwidth n_x (fill-in reaches 2 n_x above the diagonal).
class BandedLU {
public:
    explicit BandedLU(const StencilMatrix& matrix);

    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] std::size_t dimension() const noexcept { return n_; }

private:
    [[nodiscard]] double& at(std::size_t row, std::size_t col) noexcept {
        return band_[row * width_ + (col + lower_ - row)];
    }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const noexcept {
        return band_[row * width_ + (col + lower_ - row)];
    }

    std::size_t n_;
    std::size_t lower_;
    std::size_t width_;
    std::vector<double> band_;
    std::vector<std::size_t> pivots_;
};

/// Solves matrix * x = rhs. Throws SingularMatrixError or DimensionMismatch.
[[nodiscard]] std::vector<double> linear_solve(const StencilMatrix& matrix, std::span<const double> rhs);

struct ArmijoDamping {
    double c = 1e-4;             ///< sufficient-decrease constant in (0, 1)
    double shrink = 0.5;         ///< step reduction factor in (0, 1)
    double min_step = 0x1p-30;   ///< step length floor
    /// Cap on ||alpha dX||_inf for the first trial; infinity leaves alpha = 1 as the first trial.
    double max_step = std::numeric_limits<double>::infinity();
};

struct NewtonConfig {
    double tol_residual = 1e-10;
    double tol_step = 1e-12;
    int max_iterations = 200;
    std::optional<ArmijoDamping> damping = ArmijoDamping{};  ///< nullopt: full Newton steps

    void validate() const;
};

enum class Termination {
    converged,       ///< ||F||_inf <= tol_residual
    step_stalled,    ///< ||alpha dX||_inf <= tol_step with the residual still above tolerance
    max_iterations,
    singular_jacobian,
    non_finite,
};

[[nodiscard]] std::string to_string(Termination t);

struct SolveReport {
    bool converged = false;
    /// Iterates examined: the initial guess counts as the first, so an exact root reports 1.
    int iterations = 0;
    std::vector<double> residual_history{};  ///< ||F(X_k)||_inf, k = 0, 1, ...
    std::vector<double> step_history{};    ///< accepted alpha for each Newton step
    double final_residual = 0.0;
    double last_step = 0.0;                ///< ||alpha dX||_inf of the final step (0 if none)
    int floor_events = 0;                  ///< steps taken at min_step without sufficient decrease
    bool positive = false;                 ///< all components > 0
    bool constant_solution = false;        ///< max - min < 1e-8 max(1, |mean|)
    Termination termination = Termination::max_iterations;
    std::string message{};                ///< detail for singular / non-finite terminations
    GridField solution;                    ///< last iterate
};

/// Damped Newton iteration X <- X + alpha dX with J(X) dX = -F(X).
///
/// Runs until ||F||_inf <= tol_residual, the step falls below tol_step, the iteration cap is
/// reached, or the linear solve fails. Numerical failures are reported, not thrown; only
/// precondition violations throw.
[[nodiscard]] SolveReport newton_solve(const Mesh& mesh, const SolverParams& params, const GridField& x0,
                                       const NewtonConfig& config);

[[nodiscard]] double norm_inf(std::span<const double> v) noexcept;

}  // namespace fvspike
