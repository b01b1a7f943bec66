#pragma once

#include "axswirl/fields.hpp"
#include "axswirl/operators.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axswirl {

/// Polynomial in rho with exact derivatives.
struct Polynomial {
    std::vector<double> coeffs;  // coeffs[i] * rho^i

    double operator()(double x) const noexcept;
    Polynomial derivative() const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial pow(int n) const;
};

/// Value and first two derivatives of a radial profile.
using RadialProfile = std::function<std::array<double, 3>(double rho)>;

RadialProfile polynomial_profile(const Polynomial& p);

/// Point values and the derivatives the momentum equations need.
struct Jet {
    double v = 0, dr = 0, dz = 0, drr = 0, dzz = 0, dt = 0;
};

/// Sum of separable terms radial(rho) * axial(z) * amplitude * exp(-rate t).
struct FieldExpression {
    enum class Axial { constant, cosine, sine };
    struct Term {
        RadialProfile radial;
        Axial axial = Axial::constant;
        double wavenumber = 0.0;
        double amplitude = 1.0;
        double rate = 0.0;
    };
    std::vector<Term> terms;

    Jet jet(double rho, double z, double t) const;
    double operator()(double rho, double z, double t) const { return jet(rho, z, t).v; }
};

enum class SolutionKind { rigid_rotation, decaying_swirl, taylor_vortex_swirl };

std::string to_string(SolutionKind kind);
/// Throws ConfigurationError for unknown names.
SolutionKind solution_kind_from_string(const std::string& name);

struct SolutionParams {
    double amplitude = 1.0;
    double nu = 0.05;          // viscosity the time decay is tuned to
    double rho_max = 2.0;
    double z_length = 2.0;     // period in z
};

/// Closed-form axisymmetric field. Meridional parts derive from a stream
/// function, so the continuity equation holds identically; u_rho and u_phi
/// are odd in rho, u_z and p even.
struct ManufacturedSolution {
    SolutionKind kind = SolutionKind::rigid_rotation;
    SolutionParams params;
    FieldExpression u_rho, u_phi, u_z, pressure;
    bool steady = false;
};

ManufacturedSolution make_solution(SolutionKind kind, const SolutionParams& params = {});

/// First zero of J1.
inline constexpr double kBesselJ1FirstZero = 3.8317059702075125;

VelocityState sample_state(const ManufacturedSolution& sol, const GridHandle& grid, double t);

/// Body force h that makes the closed form an exact solution of the momentum
/// equations with viscosity nu (pressure gradient included in the balance).
std::array<double, 3> forcing_at(const ManufacturedSolution& sol, double nu, double rho, double z,
                                 double t);
ForcingFields forcing_for(const ManufacturedSolution& sol, double nu, const GridHandle& grid,
                          double t);

/// Exact vorticity and time derivatives, sampled.
VorticityFields exact_vorticity(const ManufacturedSolution& sol, const GridHandle& grid, double t);
Tendency exact_time_derivative(const ManufacturedSolution& sol, const GridHandle& grid, double t);
/// Analytic d_rho u_rho + u_rho/rho + d_z u_z at a point.
double exact_divergence(const ManufacturedSolution& sol, double rho, double z, double t);

/// log2(e_i / e_{i+1}) for successive doublings.
std::vector<double> observed_orders(const std::vector<double>& errors);

struct ConvergenceRow {
    int level = 0;  // n_rho
    std::string field;
    double error = 0.0;
    std::optional<double> order;  // against the previous level
};

struct ConvergenceReport {
    std::string study;
    std::vector<ConvergenceRow> rows;
    bool monotone = true;  // errors strictly decreasing for the gated field
    double min_order = 0.0;  // minimum observed order of the gated field
    std::string gated_field;
};

struct SolverStudyOptions {
    double nu = 0.05;
    double t_end = 0.5;
    double viscous_cfl = 0.15;  // nu dt / h^2
    double amplitude = 1.0;
    double z_length = 2.0;
    /// n_z = n_rho * z_length / rho_max unless set.
    std::optional<int> n_z;
};

/// Runs the solver from the sampled closed form to t_end on each level
/// (n_rho doubling, dt = viscous_cfl * h^2 / nu, capped by the advective
/// limit of the initial data) and compares with the exact
/// solution in the weighted L2 norm. Gated field: "velocity" (all components).
/// rigid_rotation is rejected (ConfigurationError): it does not satisfy the
/// no-slip wall.
ConvergenceReport solver_convergence(SolutionKind kind, const std::vector<int>& levels,
                                     const SolverStudyOptions& options = {});

/// Curl and divergence of the sampled closed form against the exact curl;
/// extrapolated wall ghosts. Gated field: "curl".
ConvergenceReport operator_convergence(SolutionKind kind, const std::vector<int>& levels,
                                       const SolutionParams& params = {});

/// Negative control: omega_z from a one-sided (first-order) stencil.
ScalarSample lopsided_axial_vorticity(const VelocityState& v);
ConvergenceReport negative_control_convergence(const std::vector<int>& levels,
                                               const SolutionParams& params = {});

/// Writes "level,field,error,order" rows (17 significant digits).
std::string convergence_csv(const ConvergenceReport& report);

} // namespace axswirl
