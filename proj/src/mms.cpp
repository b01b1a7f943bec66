#include "axswirl/mms.hpp"

#include "axswirl/errors.hpp"
#include "axswirl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace axswirl {

double Polynomial::operator()(double x) const noexcept {
    double r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::derivative() const {
    Polynomial d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * static_cast<double>(i));
    return d;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (coeffs.empty() || other.coeffs.empty()) return {};
    Polynomial out;
    out.coeffs.assign(coeffs.size() + other.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * other.coeffs[j];
    return out;
}

Polynomial Polynomial::pow(int n) const {
    Polynomial out{{1.0}};
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

RadialProfile polynomial_profile(const Polynomial& p) {
    const Polynomial d1 = p.derivative();
    const Polynomial d2 = d1.derivative();
    return [p, d1, d2](double rho) { return std::array<double, 3>{p(rho), d1(rho), d2(rho)}; };
}

Jet FieldExpression::jet(double rho, double z, double t) const {
    Jet out;
    for (const Term& term : terms) {
        const auto [f, f1, f2] = term.radial(rho);
        double a = 1.0, a1 = 0.0, a2 = 0.0;
        const double kz = term.wavenumber * z;
        const double k = term.wavenumber;
        switch (term.axial) {
        case Axial::constant: break;
        case Axial::cosine:
            a = std::cos(kz); a1 = -k * std::sin(kz); a2 = -k * k * std::cos(kz);
            break;
        case Axial::sine:
            a = std::sin(kz); a1 = k * std::cos(kz); a2 = -k * k * std::sin(kz);
            break;
        }
        const double time = term.amplitude * std::exp(-term.rate * t);
        out.v += f * a * time;
        out.dr += f1 * a * time;
        out.drr += f2 * a * time;
        out.dz += f * a1 * time;
        out.dzz += f * a2 * time;
        out.dt += -term.rate * f * a * time;
    }
    return out;
}

std::string to_string(SolutionKind kind) {
    switch (kind) {
    case SolutionKind::rigid_rotation: return "rigid_rotation";
    case SolutionKind::decaying_swirl: return "decaying_swirl";
    case SolutionKind::taylor_vortex_swirl: return "taylor_vortex_swirl";
    }
    return "unknown";
}

SolutionKind solution_kind_from_string(const std::string& name) {
    if (name == "rigid_rotation") return SolutionKind::rigid_rotation;
    if (name == "decaying_swirl") return SolutionKind::decaying_swirl;
    if (name == "taylor_vortex_swirl") return SolutionKind::taylor_vortex_swirl;
    throw ConfigurationError("unknown manufactured solution kind '" + name + "'");
}

namespace {

using Axial = FieldExpression::Axial;

// 1 - rho^2/R^2
Polynomial wall_factor(double rho_max) { return Polynomial{{1.0, 0.0, -1.0 / (rho_max * rho_max)}}; }

} // namespace

ManufacturedSolution make_solution(SolutionKind kind, const SolutionParams& params) {
    if (!(params.rho_max > 0.0) || !(params.z_length > 0.0) || !(params.nu > 0.0))
        throw ConfigurationError("manufactured solution: rho_max, z_length and nu must be positive");
    ManufacturedSolution sol;
    sol.kind = kind;
    sol.params = params;
    const double amp = params.amplitude;
    const double big_r = params.rho_max;

    switch (kind) {
    case SolutionKind::rigid_rotation: {
        // u_phi = W rho, p = W^2 rho^2 / 2: centrifugal force balanced by the
        // pressure gradient, linear swirl annihilated by the viscous operator.
        sol.steady = true;
        sol.u_phi.terms.push_back({polynomial_profile(Polynomial{{0.0, 1.0}}), Axial::constant, 0, amp, 0});
        sol.pressure.terms.push_back(
            {polynomial_profile(Polynomial{{0.0, 0.0, 0.5}}), Axial::constant, 0, amp * amp, 0});
        break;
    }
    case SolutionKind::decaying_swirl: {
        // u_phi = A exp(-nu lambda^2 t) J1(lambda rho), J1(lambda R) = 0, and
        // p' = u_phi^2/rho via d/dx (J0^2 + J1^2)/2 = -J1^2/x.
        const double lambda = kBesselJ1FirstZero / big_r;
        const double rate = params.nu * lambda * lambda;
        RadialProfile swirl = [lambda](double rho) {
            const double x = lambda * rho;
            const double j1 = std::cyl_bessel_j(1.0, x);
            const double j0 = std::cyl_bessel_j(0.0, x);
            const double j1p = j0 - j1 / x;
            const double j1pp = -j1p / x - (1.0 - 1.0 / (x * x)) * j1;
            return std::array<double, 3>{j1, lambda * j1p, lambda * lambda * j1pp};
        };
        RadialProfile pressure = [lambda](double rho) {
            const double x = lambda * rho;
            const double j1 = std::cyl_bessel_j(1.0, x);
            const double j0 = std::cyl_bessel_j(0.0, x);
            const double j1p = j0 - j1 / x;
            const double value = -0.5 * (j0 * j0 + j1 * j1);
            const double d1 = j1 * j1 / rho;
            const double d2 = 2.0 * j1 * j1p * lambda / rho - j1 * j1 / (rho * rho);
            return std::array<double, 3>{value, d1, d2};
        };
        sol.u_phi.terms.push_back({swirl, Axial::constant, 0, amp, rate});
        sol.pressure.terms.push_back({pressure, Axial::constant, 0, amp * amp, 2.0 * rate});
        break;
    }
    case SolutionKind::taylor_vortex_swirl: {
        // Stream function psi = A rho^2 (1-s)^4 sin(kz), s = rho^2/R^2:
        //   u_rho = -(1/rho) psi_z = -A k rho (1-s)^4 cos(kz)
        //   u_z   =  (1/rho) psi_rho = 2A (1-s)^3 (1-5s) sin(kz)
        // swirl u_phi = A rho (1-s)^3 (1 + cos(kz)/2). Everything vanishes to
        // third order at rho = R.
        const double k = 2.0 * std::numbers::pi / params.z_length;
        const double rate = params.nu * (k * k + std::pow(kBesselJ1FirstZero / big_r, 2));
        const Polynomial w = wall_factor(big_r);
        const Polynomial rho{{0.0, 1.0}};
        const Polynomial one_minus_5s{{1.0, 0.0, -5.0 / (big_r * big_r)}};
        sol.u_rho.terms.push_back({polynomial_profile(rho * w.pow(4)), Axial::cosine, k, -amp * k, rate});
        sol.u_z.terms.push_back({polynomial_profile(w.pow(3) * one_minus_5s), Axial::sine, k, 2.0 * amp, rate});
        sol.u_phi.terms.push_back({polynomial_profile(rho * w.pow(3)), Axial::constant, 0, amp, rate});
        sol.u_phi.terms.push_back({polynomial_profile(rho * w.pow(3)), Axial::cosine, k, 0.5 * amp, rate});
        sol.pressure.terms.push_back({polynomial_profile(w.pow(2)), Axial::cosine, k, 0.25 * amp * amp, 2.0 * rate});
        break;
    }
    }
    return sol;
}

VelocityState sample_state(const ManufacturedSolution& sol, const GridHandle& grid, double t) {
    VelocityState s = VelocityState::zeros(grid, t);
    for (int k = 0; k < grid->n_z; ++k) {
        for (int j = 0; j < grid->n_rho; ++j) {
            const double r = grid->rho(j), z = grid->z(k);
            s.u_rho(j, k) = sol.u_rho(r, z, t);
            s.u_phi(j, k) = sol.u_phi(r, z, t);
            s.u_z(j, k) = sol.u_z(r, z, t);
            s.pressure(j, k) = sol.pressure(r, z, t);
        }
    }
    return s;
}

std::array<double, 3> forcing_at(const ManufacturedSolution& sol, double nu, double rho, double z,
                                 double t) {
    const Jet ur = sol.u_rho.jet(rho, z, t);
    const Jet up = sol.u_phi.jet(rho, z, t);
    const Jet uz = sol.u_z.jet(rho, z, t);
    const Jet p = sol.pressure.jet(rho, z, t);
    const double r2 = rho * rho;
    const double h_rho = ur.dt + ur.v * ur.dr + uz.v * ur.dz - up.v * up.v / rho + p.dr -
                         nu * (ur.drr + ur.dr / rho + ur.dzz - ur.v / r2);
    const double h_phi = up.dt + ur.v * up.dr + uz.v * up.dz + up.v * ur.v / rho -
                         nu * (up.drr + up.dr / rho + up.dzz - up.v / r2);
    const double h_z = uz.dt + ur.v * uz.dr + uz.v * uz.dz + p.dz -
                       nu * (uz.drr + uz.dr / rho + uz.dzz);
    return {h_rho, h_phi, h_z};
}

ForcingFields forcing_for(const ManufacturedSolution& sol, double nu, const GridHandle& grid,
                          double t) {
    ForcingFields f = ForcingFields::zeros(grid);
    for (int k = 0; k < grid->n_z; ++k) {
        for (int j = 0; j < grid->n_rho; ++j) {
            const auto h = forcing_at(sol, nu, grid->rho(j), grid->z(k), t);
            f.h_rho(j, k) = h[0];
            f.h_phi(j, k) = h[1];
            f.h_z(j, k) = h[2];
        }
    }
    return f;
}

VorticityFields exact_vorticity(const ManufacturedSolution& sol, const GridHandle& grid, double t) {
    VorticityFields w = VorticityFields::zeros(grid);
    for (int k = 0; k < grid->n_z; ++k) {
        for (int j = 0; j < grid->n_rho; ++j) {
            const double r = grid->rho(j), z = grid->z(k);
            const Jet ur = sol.u_rho.jet(r, z, t);
            const Jet up = sol.u_phi.jet(r, z, t);
            const Jet uz = sol.u_z.jet(r, z, t);
            w.w_rho(j, k) = -up.dz;
            w.w_phi(j, k) = ur.dz - uz.dr;
            w.w_z(j, k) = up.dr + up.v / r;
        }
    }
    return w;
}

Tendency exact_time_derivative(const ManufacturedSolution& sol, const GridHandle& grid, double t) {
    Tendency d{ScalarSample(grid), ScalarSample(grid), ScalarSample(grid)};
    for (int k = 0; k < grid->n_z; ++k) {
        for (int j = 0; j < grid->n_rho; ++j) {
            const double r = grid->rho(j), z = grid->z(k);
            d.d_rho(j, k) = sol.u_rho.jet(r, z, t).dt;
            d.d_phi(j, k) = sol.u_phi.jet(r, z, t).dt;
            d.d_z(j, k) = sol.u_z.jet(r, z, t).dt;
        }
    }
    return d;
}

double exact_divergence(const ManufacturedSolution& sol, double rho, double z, double t) {
    const Jet ur = sol.u_rho.jet(rho, z, t);
    const Jet uz = sol.u_z.jet(rho, z, t);
    return ur.dr + ur.v / rho + uz.dz;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) out.push_back(std::log2(errors[i] / errors[i + 1]));
    return out;
}

namespace {

double l2(const ScalarSample& f) { return std::sqrt(integrate(hadamard(f, f))); }

void require_levels(const std::vector<int>& levels) {
    if (levels.size() < 3) throw ConfigurationError("convergence study needs at least 3 levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] != 2 * levels[i - 1])
            throw ConfigurationError("convergence levels must double the resolution");
}

void finish(ConvergenceReport& report) {
    // Fill per-field orders and the gate summary.
    std::vector<std::string> fields;
    for (const auto& row : report.rows)
        if (std::find(fields.begin(), fields.end(), row.field) == fields.end()) fields.push_back(row.field);
    for (const auto& field : fields) {
        ConvergenceRow* prev = nullptr;
        for (auto& row : report.rows) {
            if (row.field != field) continue;
            if (prev && prev->error > 0.0 && row.error > 0.0) row.order = std::log2(prev->error / row.error);
            prev = &row;
        }
    }
    report.min_order = std::numeric_limits<double>::infinity();
    double last = std::numeric_limits<double>::infinity();
    for (const auto& row : report.rows) {
        if (row.field != report.gated_field) continue;
        if (!(row.error < last)) report.monotone = false;
        last = row.error;
        if (row.order) report.min_order = std::min(report.min_order, *row.order);
    }
}

} // namespace

ConvergenceReport solver_convergence(SolutionKind kind, const std::vector<int>& levels,
                                     const SolverStudyOptions& options) {
    require_levels(levels);
    if (kind == SolutionKind::rigid_rotation)
        throw ConfigurationError("solver study: rigid_rotation does not vanish at the no-slip wall");
    ConvergenceReport report;
    report.study = "solver:" + to_string(kind);
    report.gated_field = "velocity";
    for (int n : levels) {
        SimConfig cfg;
        cfg.n_rho = n;
        cfg.n_z = options.n_z ? *options.n_z
                              : std::max(2, static_cast<int>(std::lround(n * options.z_length / cfg.rho_max)));
        cfg.z_min = 0.0;
        cfg.z_max = options.z_length;
        cfg.nu = options.nu;
        cfg.t_start = 0.0;
        cfg.t_end = options.t_end;
        const GridHandle grid = cfg.make_grid();
        const double h = grid->min_spacing();
        cfg.checkpoint_stride = 1 << 30;
        const ManufacturedSolution sol = make_solution(kind, cfg.solution_params(options.amplitude));
        const VelocityState initial = sample_state(sol, grid, cfg.t_start);
        const double umax = std::max({initial.u_rho.max_abs(), initial.u_phi.max_abs(), initial.u_z.max_abs()});
        cfg.dt = options.viscous_cfl * h * h / options.nu;
        if (umax > 0.0) cfg.dt = std::min(cfg.dt, 0.4 * h / umax);
        cfg.forcing.kind = ForcingSpec::Kind::manufactured;
        cfg.forcing.solution = kind;
        cfg.forcing.amplitude = options.amplitude;

        const Trajectory traj = run(cfg, initial);
        if (traj.truncated()) throw SolverError("convergence run failed: " + traj.message);
        const VelocityState& num = traj.checkpoints.back();
        const VelocityState exact = sample_state(sol, grid, num.time);
        const ScalarSample er = num.u_rho - exact.u_rho;
        const ScalarSample ep = num.u_phi - exact.u_phi;
        const ScalarSample ez = num.u_z - exact.u_z;
        const double ref = std::sqrt(integrate(hadamard(exact.u_rho, exact.u_rho) +
                                               hadamard(exact.u_phi, exact.u_phi) +
                                               hadamard(exact.u_z, exact.u_z)));
        const double scale = ref > 0.0 ? ref : 1.0;
        report.rows.push_back({n, "u_rho", l2(er) / scale, std::nullopt});
        report.rows.push_back({n, "u_phi", l2(ep) / scale, std::nullopt});
        report.rows.push_back({n, "u_z", l2(ez) / scale, std::nullopt});
        report.rows.push_back(
            {n, "velocity",
             std::sqrt(integrate(hadamard(er, er) + hadamard(ep, ep) + hadamard(ez, ez))) / scale,
             std::nullopt});
    }
    finish(report);
    return report;
}

ConvergenceReport operator_convergence(SolutionKind kind, const std::vector<int>& levels,
                                       const SolutionParams& params) {
    require_levels(levels);
    ConvergenceReport report;
    report.study = "operators:" + to_string(kind);
    report.gated_field = "curl";
    const ManufacturedSolution sol = make_solution(kind, params);
    const double t = 0.0;
    for (int n : levels) {
        const int nz = std::max(2, static_cast<int>(std::lround(n * params.z_length / params.rho_max)));
        const GridHandle grid = build_grid(n, nz, params.rho_max, 0.0, params.z_length);
        const VelocityState v = sample_state(sol, grid, t);
        const VorticityFields w = curl_axisym(v, WallMode::extrapolate);
        const VorticityFields we = exact_vorticity(sol, grid, t);
        const ScalarSample er = w.w_rho - we.w_rho;
        const ScalarSample ep = w.w_phi - we.w_phi;
        const ScalarSample ez = w.w_z - we.w_z;
        const ScalarSample div = divergence(v, WallMode::extrapolate);
        report.rows.push_back({n, "w_rho", l2(er), std::nullopt});
        report.rows.push_back({n, "w_phi", l2(ep), std::nullopt});
        report.rows.push_back({n, "w_z", l2(ez), std::nullopt});
        report.rows.push_back(
            {n, "curl", std::sqrt(integrate(hadamard(er, er) + hadamard(ep, ep) + hadamard(ez, ez))),
             std::nullopt});
        report.rows.push_back({n, "divergence", l2(div), std::nullopt});
    }
    finish(report);
    return report;
}

ScalarSample lopsided_axial_vorticity(const VelocityState& v) {
    // Forward difference of rho u_phi: first order by construction.
    PaddedField up(v.u_phi, Parity::odd, WallMode::extrapolate);
    const CylGrid& g = *v.grid();
    ScalarSample out(v.grid());
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j)
            out(j, k) = (up.rho(j + 1) * up.at(j + 1, k) - up.rho(j) * up.at(j, k)) / (g.d_rho * g.rho(j));
    return out;
}

ConvergenceReport negative_control_convergence(const std::vector<int>& levels,
                                               const SolutionParams& params) {
    require_levels(levels);
    ConvergenceReport report;
    report.study = "negative_control";
    report.gated_field = "w_z_lopsided";
    const ManufacturedSolution sol = make_solution(SolutionKind::taylor_vortex_swirl, params);
    for (int n : levels) {
        const int nz = std::max(2, static_cast<int>(std::lround(n * params.z_length / params.rho_max)));
        const GridHandle grid = build_grid(n, nz, params.rho_max, 0.0, params.z_length);
        const VelocityState v = sample_state(sol, grid, 0.0);
        const ScalarSample err = lopsided_axial_vorticity(v) - exact_vorticity(sol, grid, 0.0).w_z;
        report.rows.push_back({n, "w_z_lopsided", l2(err), std::nullopt});
    }
    finish(report);
    return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "level,field,error,order\n";
    for (const auto& row : report.rows) {
        out << row.level << ',' << row.field << ',' << row.error << ',';
        if (row.order) out << *row.order;
        out << '\n';
    }
    return out.str();
}

} // namespace axswirl
