#pragma once

#include "axswirl/fields.hpp"
#include "axswirl/mms.hpp"
#include "axswirl/projection.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axswirl {

struct InitialSpec {
    enum class Kind { zero, rigid_rotation, decaying_swirl, taylor_vortex_swirl, file };
    Kind kind = Kind::zero;
    double amplitude = 1.0;
    std::string path;  // Kind::file
};

struct ForcingSpec {
    enum class Kind { zero, manufactured, swirl_profile };
    Kind kind = Kind::zero;
    /// manufactured: closed form whose forcing is applied.
    SolutionKind solution = SolutionKind::taylor_vortex_swirl;
    double amplitude = 1.0;
};

/// Time window (t_start, t_end), viscosity, step and projection settings.
struct SimConfig {
    int n_rho = 32;
    int n_z = 32;
    double rho_max = 2.0;
    double z_min = 0.0;
    double z_max = 2.0;
    double nu = 0.05;
    double t_start = 0.0;
    double t_end = 0.1;
    double dt = 1e-3;
    int checkpoint_stride = 1;
    InitialSpec initial;
    ForcingSpec forcing;
    ProjectionOptions projection;
    double divergence_tolerance = 1e-8;

    /// Throws ConfigurationError on t_end <= t_start, dt <= 0, nu <= 0, ...
    void validate() const;
    GridHandle make_grid() const;
    SolutionParams solution_params(double amplitude) const;
};

/// CFL violation; carries a step size that would pass.
class StepRejected : public std::runtime_error {
public:
    StepRejected(const std::string& what, double suggested_dt)
        : std::runtime_error(what), suggested_dt_(suggested_dt) {}
    double suggested_dt() const noexcept { return suggested_dt_; }

private:
    double suggested_dt_;
};

/// Non-finite values appeared during a step.
class BlowUpDetected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ForcingProvider = std::function<ForcingFields(double t)>;

ForcingProvider make_forcing_provider(const SimConfig& cfg, const GridHandle& grid);
VelocityState make_initial_state(const SimConfig& cfg, const GridHandle& grid);

/// Kinetic energy 1/2 integral |u|^2 dx.
double kinetic_energy(const VelocityState& v);
/// ||div u|| * min spacing / ||u|| over all three components.
double checkpoint_divergence(const VelocityState& v);

/// Explicit two-stage Runge-Kutta (Heun) for the momentum equations, each
/// stage followed by the projection.
class Solver {
public:
    Solver(SimConfig cfg, GridHandle grid);
    Solver(SimConfig cfg, GridHandle grid, ForcingProvider forcing);

    /// Throws StepRejected when max|u| dt/h > 1/2, nu dt/h^2 > 1/4 or
    /// nu dt (8/d_rho^2 + 4/d_z^2) > 2 (the axis cell), and BlowUpDetected on
    /// non-finite output.
    VelocityState step(const VelocityState& state, double dt) const;
    VelocityState step(const VelocityState& state) const { return step(state, config_.dt); }
    ProjectionResult project(const VelocityState& u_star) const { return projector_.project(u_star); }

    const SimConfig& config() const noexcept { return config_; }
    const GridHandle& grid() const noexcept { return grid_; }
    const ForcingProvider& forcing() const noexcept { return forcing_; }

private:
    SimConfig config_;
    GridHandle grid_;
    ForcingProvider forcing_;
    Projector projector_;
};

struct Trajectory {
    enum class Status { completed, blow_up, step_rejected };

    SimConfig config;
    std::vector<VelocityState> checkpoints;
    Status status = Status::completed;
    std::string message;
    double dt_used = 0.0;
    int steps_taken = 0;

    bool truncated() const noexcept { return status != Status::completed; }
};

std::string to_string(Trajectory::Status status);

/// Called for each checkpoint with its forcing, in time order.
using CheckpointHook = std::function<void(const VelocityState&, const ForcingFields&)>;

/// Advances from the initial data to t_end with a uniform step no larger than
/// cfg.dt; checkpoints every stride steps plus the first and last state.
/// Deterministic for a given configuration. Failures truncate the trajectory.
Trajectory run(const SimConfig& cfg, const CheckpointHook& hook = {});
Trajectory run(const SimConfig& cfg, const VelocityState& initial, const CheckpointHook& hook = {});

} // namespace axswirl
