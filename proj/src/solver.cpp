#include "axswirl/solver.hpp"

#include "axswirl/checkpoint_io.hpp"
#include "axswirl/errors.hpp"
#include "axswirl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace axswirl {

void SimConfig::validate() const {
    if (!(nu > 0.0)) throw ConfigurationError("nu must be positive");
    if (!(t_end > t_start)) throw ConfigurationError("t_end must exceed t_start");
    if (!(dt > 0.0)) throw ConfigurationError("dt must be positive");
    if (checkpoint_stride < 1) throw ConfigurationError("checkpoint_stride must be >= 1");
    if (!(divergence_tolerance > 0.0)) throw ConfigurationError("divergence tolerance must be positive");
    if (projection.max_iterations < 1) throw ConfigurationError("max_iterations must be >= 1");
    if (!(projection.tolerance > 0.0)) throw ConfigurationError("projection tolerance must be positive");
    (void)make_grid();
}

GridHandle SimConfig::make_grid() const { return build_grid(n_rho, n_z, rho_max, z_min, z_max); }

SolutionParams SimConfig::solution_params(double amplitude) const {
    return {amplitude, nu, rho_max, z_max - z_min};
}

ForcingProvider make_forcing_provider(const SimConfig& cfg, const GridHandle& grid) {
    switch (cfg.forcing.kind) {
    case ForcingSpec::Kind::zero: {
        const ForcingFields zero = ForcingFields::zeros(grid);
        return [zero](double) { return zero; };
    }
    case ForcingSpec::Kind::manufactured: {
        const ManufacturedSolution sol =
            make_solution(cfg.forcing.solution, cfg.solution_params(cfg.forcing.amplitude));
        const double nu = cfg.nu;
        return [sol, nu, grid](double t) { return forcing_for(sol, nu, grid, t); };
    }
    case ForcingSpec::Kind::swirl_profile: {
        ForcingFields f = ForcingFields::zeros(grid);
        const double amp = cfg.forcing.amplitude;
        const double r2 = cfg.rho_max * cfg.rho_max;
        f.h_phi = ScalarSample::from_function(grid, [amp, r2](double rho, double) {
            const double w = 1.0 - rho * rho / r2;
            return amp * rho * w * w;
        });
        return [f](double) { return f; };
    }
    }
    throw ConfigurationError("unknown forcing kind");
}

VelocityState make_initial_state(const SimConfig& cfg, const GridHandle& grid) {
    const double amp = cfg.initial.amplitude;
    switch (cfg.initial.kind) {
    case InitialSpec::Kind::zero:
        return VelocityState::zeros(grid, cfg.t_start);
    case InitialSpec::Kind::rigid_rotation:
        return sample_state(make_solution(SolutionKind::rigid_rotation, cfg.solution_params(amp)),
                            grid, cfg.t_start);
    case InitialSpec::Kind::decaying_swirl:
        return sample_state(make_solution(SolutionKind::decaying_swirl, cfg.solution_params(amp)),
                            grid, cfg.t_start);
    case InitialSpec::Kind::taylor_vortex_swirl:
        return sample_state(
            make_solution(SolutionKind::taylor_vortex_swirl, cfg.solution_params(amp)), grid,
            cfg.t_start);
    case InitialSpec::Kind::file: {
        VelocityState s = read_checkpoint(cfg.initial.path);
        if (!s.grid()->same_shape(*grid))
            throw ConfigurationError("initial checkpoint grid does not match the configured grid");
        VelocityState out = VelocityState::zeros(grid, cfg.t_start);
        out.u_rho = ScalarSample(grid, std::vector<double>(s.u_rho.values().begin(), s.u_rho.values().end()));
        out.u_phi = ScalarSample(grid, std::vector<double>(s.u_phi.values().begin(), s.u_phi.values().end()));
        out.u_z = ScalarSample(grid, std::vector<double>(s.u_z.values().begin(), s.u_z.values().end()));
        out.pressure = ScalarSample(grid, std::vector<double>(s.pressure.values().begin(), s.pressure.values().end()));
        return out;
    }
    }
    throw ConfigurationError("unknown initial data kind");
}

double kinetic_energy(const VelocityState& v) {
    return 0.5 * integrate(hadamard(v.u_rho, v.u_rho) + hadamard(v.u_phi, v.u_phi) +
                           hadamard(v.u_z, v.u_z));
}

double checkpoint_divergence(const VelocityState& v) {
    const ScalarSample div = divergence(v, WallMode::no_slip);
    const double div_norm = std::sqrt(integrate(hadamard(div, div)));
    const double u_norm = std::sqrt(2.0 * kinetic_energy(v));
    if (u_norm == 0.0) return div_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return div_norm * v.grid()->min_spacing() / u_norm;
}

Solver::Solver(SimConfig cfg, GridHandle grid)
    : Solver(cfg, grid, make_forcing_provider(cfg, grid)) {}

Solver::Solver(SimConfig cfg, GridHandle grid, ForcingProvider forcing)
    : config_(std::move(cfg)), grid_(std::move(grid)), forcing_(std::move(forcing)),
      projector_(grid_, config_.projection) {}

namespace {

VelocityState axpy(const VelocityState& base, double scale, const Tendency& t) {
    VelocityState out = base;
    out.u_rho += scale * t.d_rho;
    out.u_phi += scale * t.d_phi;
    out.u_z += scale * t.d_z;
    return out;
}

VelocityState average(const VelocityState& a, const VelocityState& b) {
    VelocityState out = a;
    out.u_rho = 0.5 * (a.u_rho + b.u_rho);
    out.u_phi = 0.5 * (a.u_phi + b.u_phi);
    out.u_z = 0.5 * (a.u_z + b.u_z);
    return out;
}

} // namespace

VelocityState Solver::step(const VelocityState& state, double dt) const {
    const double h = grid_->min_spacing();
    const double umax =
        std::max({state.u_rho.max_abs(), state.u_phi.max_abs(), state.u_z.max_abs()});
    if (!std::isfinite(umax)) throw BlowUpDetected("non-finite velocity at t = " + std::to_string(state.time));
    const double nu = config_.nu;
    const double advective = umax * dt / h;
    const double diffusive = nu * dt / (h * h);
    // Gershgorin bound of the swirl viscous operator, attained at the axis
    // cell where 1/rho^2 = 4/d_rho^2; Heun needs nu dt * stiffness <= 2.
    const double stiffness = 8.0 / (grid_->d_rho * grid_->d_rho) + 4.0 / (grid_->d_z * grid_->d_z);
    if (advective > 0.5 || diffusive > 0.25 || nu * dt * stiffness > 2.0) {
        double limit = std::min(0.25 * h * h / nu, 2.0 / (nu * stiffness));
        if (umax > 0.0) limit = std::min(limit, 0.5 * h / umax);
        std::ostringstream msg;
        msg << "CFL violation at t = " << state.time << ": max|u| dt/h = " << advective
            << ", nu dt/h^2 = " << diffusive << ", axis viscous number = " << nu * dt * stiffness / 2.0;
        throw StepRejected(msg.str(), 0.9 * limit);
    }

    const double t0 = state.time;
    auto checked = [t0](VelocityState s) {
        if (!s.all_finite()) throw BlowUpDetected("non-finite values after step from t = " + std::to_string(t0));
        return s;
    };
    const Tendency k1 = momentum_rhs(state, forcing_(t0), nu, WallMode::no_slip, false);
    VelocityState stage = projector_.project(checked(axpy(state, dt, k1))).state;
    stage.time = t0 + dt;

    const Tendency k2 = momentum_rhs(checked(stage), forcing_(t0 + dt), nu, WallMode::no_slip, false);
    ProjectionResult next = projector_.project(checked(average(state, axpy(stage, dt, k2))));
    next.state.pressure = (2.0 / dt) * next.phi;
    next.state.time = t0 + dt;
    if (!next.state.all_finite())
        throw BlowUpDetected("non-finite values after step from t = " + std::to_string(t0));
    return next.state;
}

std::string to_string(Trajectory::Status status) {
    switch (status) {
    case Trajectory::Status::completed: return "completed";
    case Trajectory::Status::blow_up: return "blow_up";
    case Trajectory::Status::step_rejected: return "step_rejected";
    }
    return "unknown";
}

Trajectory run(const SimConfig& cfg, const CheckpointHook& hook) {
    cfg.validate();
    const GridHandle grid = cfg.make_grid();
    return run(cfg, make_initial_state(cfg, grid), hook);
}

Trajectory run(const SimConfig& cfg, const VelocityState& initial, const CheckpointHook& hook) {
    cfg.validate();
    const GridHandle grid = initial.grid();
    Solver solver(cfg, grid);

    Trajectory traj;
    traj.config = cfg;
    const double span = cfg.t_end - cfg.t_start;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / cfg.dt - 1e-9)));
    const double dt = span / steps;
    traj.dt_used = dt;

    auto record = [&](const VelocityState& s) {
        traj.checkpoints.push_back(s);
        if (hook) hook(s, solver.forcing()(s.time));
    };

    VelocityState state = solver.project(initial).state;
    state.pressure = initial.pressure;
    state.time = cfg.t_start;
    if (!state.all_finite()) {
        traj.status = Trajectory::Status::blow_up;
        traj.message = "non-finite initial data";
        return traj;
    }
    record(state);

    for (int n = 1; n <= steps; ++n) {
        try {
            state = solver.step(state, dt);
        } catch (const StepRejected& e) {
            traj.status = Trajectory::Status::step_rejected;
            std::ostringstream msg;
            msg << e.what() << "; suggested dt = " << e.suggested_dt();
            traj.message = msg.str();
            break;
        } catch (const BlowUpDetected& e) {
            traj.status = Trajectory::Status::blow_up;
            traj.message = e.what();
            break;
        }
        state.time = cfg.t_start + n * dt;
        traj.steps_taken = n;
        if (n % cfg.checkpoint_stride == 0 || n == steps) record(state);
    }
    if (traj.truncated() && traj.checkpoints.back().time != state.time) record(state);
    return traj;
}

} // namespace axswirl
