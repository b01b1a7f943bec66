#pragma once

#include "axswirl/fields.hpp"

#include <memory>

namespace axswirl {

enum class PoissonMethod { cholesky, conjugate_gradient };

struct ProjectionOptions {
    PoissonMethod method = PoissonMethod::cholesky;
    double tolerance = 1e-10;  // relative residual, conjugate_gradient only
    int max_iterations = 20000;
};

struct ProjectionResult {
    VelocityState state;
    ScalarSample phi;  // u = u* - grad(phi)
    int iterations = 0;
    double relative_divergence = 0.0;
};

/// Divergence of (u_rho, u_z) with no-slip ghosts scaled to a dimensionless
/// residual: ||div u|| * min spacing / ||u_ref||. Zero when u_ref vanishes.
double relative_divergence(const VelocityState& v, const VelocityState& reference);

/// Discrete orthogonal projection onto fields with zero (no-slip) centred
/// divergence. The gradient is the negative adjoint of the divergence in the
/// 2*pi*rho-weighted inner product, so the projection is idempotent,
/// annihilates discrete gradients and never increases kinetic energy. The
/// factorisation is built once per grid.
class Projector {
public:
    explicit Projector(GridHandle grid, ProjectionOptions options = {});
    ~Projector();
    Projector(Projector&&) noexcept;
    Projector& operator=(Projector&&) noexcept;

    /// Throws SolverError (with the iteration count) when CG does not converge.
    ProjectionResult project(const VelocityState& u_star) const;

    /// -adjoint(div) applied to phi: the discrete gradient used by project().
    VelocityState gradient(const ScalarSample& phi) const;

    const GridHandle& grid() const noexcept { return grid_; }
    const ProjectionOptions& options() const noexcept { return options_; }

private:
    struct Impl;
    GridHandle grid_;
    ProjectionOptions options_;
    std::unique_ptr<Impl> impl_;
};

} // namespace axswirl
