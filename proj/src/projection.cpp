#include "axswirl/projection.hpp"

#include "axswirl/errors.hpp"
#include "axswirl/operators.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace axswirl {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Centred divergence with no-slip ghosts as an n x 2n matrix acting on
// [u_rho; u_z]. Must agree with divergence(v, WallMode::no_slip).
SpMat divergence_matrix(const CylGrid& g) {
    const int n = static_cast<int>(g.size());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(n) * 4);
    for (int k = 0; k < g.n_z; ++k) {
        const int kp = (k + 1) % g.n_z;
        const int km = (k - 1 + g.n_z) % g.n_z;
        for (int j = 0; j < g.n_rho; ++j) {
            const int row = static_cast<int>(g.index(j, k));
            const double scale = 1.0 / (2.0 * g.d_rho * g.rho(j));
            if (j + 1 < g.n_rho) {
                t.emplace_back(row, static_cast<int>(g.index(j + 1, k)), g.rho(j + 1) * scale);
            } else {
                t.emplace_back(row, static_cast<int>(g.index(j, k)), -g.rho(j + 1) * scale);
            }
            if (j >= 1) {
                t.emplace_back(row, static_cast<int>(g.index(j - 1, k)), -g.rho(j - 1) * scale);
            } else {
                t.emplace_back(row, static_cast<int>(g.index(0, k)), -g.rho(0) * scale);
            }
            t.emplace_back(row, n + static_cast<int>(g.index(j, kp)), 1.0 / (2.0 * g.d_z));
            t.emplace_back(row, n + static_cast<int>(g.index(j, km)), -1.0 / (2.0 * g.d_z));
        }
    }
    SpMat d(n, 2 * n);
    d.setFromTriplets(t.begin(), t.end());
    return d;
}

Vec to_vec(std::span<const double> s) {
    return Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
}

} // namespace

struct Projector::Impl {
    SpMat div;          // D
    SpMat adjoint;      // D* = Wv^-1 D^T W
    Vec weight;         // rho_j per cell
    SpMat normal;       // W D Wv^-1 D^T W, symmetric positive definite
    Eigen::SimplicialLDLT<SpMat> cholesky;
};

Projector::Projector(GridHandle grid, ProjectionOptions options)
    : grid_(std::move(grid)), options_(options), impl_(std::make_unique<Impl>()) {
    const CylGrid& g = *grid_;
    const int n = static_cast<int>(g.size());
    impl_->div = divergence_matrix(g);
    impl_->weight.resize(n);
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j) impl_->weight[g.index(j, k)] = g.rho(j);

    Vec inv_sqrt_v(2 * n);
    Vec inv_v(2 * n);
    for (int i = 0; i < n; ++i) {
        inv_v[i] = inv_v[n + i] = 1.0 / impl_->weight[i];
        inv_sqrt_v[i] = inv_sqrt_v[n + i] = 1.0 / std::sqrt(impl_->weight[i]);
    }
    const SpMat c = impl_->weight.asDiagonal() * impl_->div * inv_sqrt_v.asDiagonal();
    impl_->normal = c * SpMat(c.transpose());
    impl_->adjoint = inv_v.asDiagonal() * SpMat(impl_->div.transpose()) * impl_->weight.asDiagonal();

    if (options_.method == PoissonMethod::cholesky) {
        impl_->cholesky.compute(impl_->normal);
        if (impl_->cholesky.info() != Eigen::Success)
            throw SolverError("projection: Cholesky factorisation failed");
    }
}

Projector::~Projector() = default;
Projector::Projector(Projector&&) noexcept = default;
Projector& Projector::operator=(Projector&&) noexcept = default;

VelocityState Projector::gradient(const ScalarSample& phi) const {
    const int n = static_cast<int>(grid_->size());
    const Vec g = -(impl_->adjoint * to_vec(phi.values()));
    VelocityState out = VelocityState::zeros(grid_);
    for (int i = 0; i < n; ++i) {
        out.u_rho[i] = g[i];
        out.u_z[i] = g[n + i];
    }
    return out;
}

ProjectionResult Projector::project(const VelocityState& u_star) const {
    const int n = static_cast<int>(grid_->size());
    Vec u(2 * n);
    u.head(n) = to_vec(u_star.u_rho.values());
    u.tail(n) = to_vec(u_star.u_z.values());

    const Vec rhs = -(impl_->weight.asDiagonal() * (impl_->div * u));
    Vec phi = Vec::Zero(n);
    int iterations = 0;
    if (rhs.squaredNorm() > 0.0) {
        if (options_.method == PoissonMethod::cholesky) {
            phi = impl_->cholesky.solve(rhs);
            iterations = 1;
        } else {
            Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg;
            cg.setTolerance(options_.tolerance);
            cg.setMaxIterations(options_.max_iterations);
            cg.compute(impl_->normal);
            phi = cg.solve(rhs);
            iterations = static_cast<int>(cg.iterations());
            if (cg.info() != Eigen::Success)
                throw SolverError("projection: conjugate gradient did not converge after " +
                                      std::to_string(iterations) + " iterations",
                                  iterations);
        }
    }
    const Vec corrected = u + impl_->adjoint * phi;

    ProjectionResult result{u_star, ScalarSample(grid_), iterations, 0.0};
    for (int i = 0; i < n; ++i) {
        result.state.u_rho[i] = corrected[i];
        result.state.u_z[i] = corrected[n + i];
        result.phi[i] = phi[i];
    }
    result.relative_divergence = relative_divergence(result.state, u_star);
    return result;
}

double relative_divergence(const VelocityState& v, const VelocityState& reference) {
    const ScalarSample div = divergence(v, WallMode::no_slip);
    const double div_norm = std::sqrt(integrate(hadamard(div, div)));
    const double ref = std::sqrt(integrate(hadamard(reference.u_rho, reference.u_rho) +
                                           hadamard(reference.u_z, reference.u_z)));
    if (ref == 0.0) return div_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return div_norm * v.grid()->min_spacing() / ref;
}

} // namespace axswirl
