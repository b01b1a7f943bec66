#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axswirl/errors.hpp"
#include "axswirl/mms.hpp"
#include "axswirl/operators.hpp"
#include "axswirl/projection.hpp"
#include "axswirl/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace axswirl;

namespace {
constexpr double pi = std::numbers::pi;

// smooth random field vanishing at the wall, with the axis parities
VelocityState smooth_random_state(const GridHandle& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double R = g->rho_max, k = 2.0 * pi / g->z_length();
    double c[9];
    for (double& x : c) x = d(rng);
    VelocityState v = VelocityState::zeros(g);
    auto bump = [R](double r) { return 1.0 - r * r / (R * R); };
    v.u_rho = ScalarSample::from_function(g, [&](double r, double z) {
        return r * bump(r) * (c[0] + c[1] * std::sin(k * z) + c[2] * std::cos(2 * k * z));
    });
    v.u_phi = ScalarSample::from_function(g, [&](double r, double z) {
        return r * bump(r) * (c[3] + c[4] * std::cos(k * z));
    });
    v.u_z = ScalarSample::from_function(g, [&](double r, double z) {
        return bump(r) * (c[5] + c[6] * r * r * std::cos(k * z) + c[7] * std::sin(3 * k * z)) + c[8];
    });
    return v;
}

double max_diff(const ScalarSample& a, const ScalarSample& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double state_scale(const VelocityState& v) {
    return std::max({v.u_rho.max_abs(), v.u_phi.max_abs(), v.u_z.max_abs(), 1e-300});
}

double state_diff(const VelocityState& a, const VelocityState& b) {
    return std::max({max_diff(a.u_rho, b.u_rho), max_diff(a.u_phi, b.u_phi), max_diff(a.u_z, b.u_z)});
}
} // namespace

TEST_CASE("projection output is divergence free") {
    std::mt19937 rng(1);
    const GridHandle g = build_grid(24, 20, 2.0, 0.0, 2.0);
    const Projector P(g);
    for (int trial = 0; trial < 5; ++trial) {
        const VelocityState u = smooth_random_state(g, rng);
        const ProjectionResult r = P.project(u);
        CHECK(r.relative_divergence <= 1e-8);
        CHECK(relative_divergence(r.state, u) <= 1e-8);
        CHECK(divergence(r.state).max_abs() <= 1e-9 * state_scale(u) / g->min_spacing());
    }
}

TEST_CASE("projection is idempotent") {
    std::mt19937 rng(2);
    const GridHandle g = build_grid(20, 16, 2.0, 0.0, 2.0);
    const Projector P(g);
    for (int trial = 0; trial < 5; ++trial) {
        const VelocityState once = P.project(smooth_random_state(g, rng)).state;
        const VelocityState twice = P.project(once).state;
        CHECK(state_diff(once, twice) <= 1e-12 * state_scale(once));
    }
}

TEST_CASE("projection annihilates discrete gradients") {
    std::mt19937 rng(3);
    std::normal_distribution<double> d;
    const GridHandle g = build_grid(20, 16, 2.0, 0.0, 2.0);
    const Projector P(g);
    for (int trial = 0; trial < 3; ++trial) {
        ScalarSample psi = ScalarSample::from_function(g, [&](double r, double z) {
            return std::cos(r) * std::sin(pi * z) + 0.3 * r * r;
        });
        if (trial == 2)
            for (auto& v : psi.values()) v = d(rng);
        const VelocityState grad = P.gradient(psi);
        const VelocityState out = P.project(grad).state;
        CHECK(state_scale(out) <= 1e-8 * state_scale(grad));
    }
}

TEST_CASE("discrete gradient is the negative adjoint of the divergence") {
    std::mt19937 rng(4);
    std::normal_distribution<double> d;
    const GridHandle g = build_grid(12, 10, 2.0, 0.0, 1.0);
    const Projector P(g);
    for (int trial = 0; trial < 5; ++trial) {
        VelocityState v = VelocityState::zeros(g);
        ScalarSample psi(g);
        for (auto& x : v.u_rho.values()) x = d(rng);
        for (auto& x : v.u_z.values()) x = d(rng);
        for (auto& x : psi.values()) x = d(rng);
        const VelocityState grad = P.gradient(psi);
        const double lhs = integrate(hadamard(divergence(v), psi));
        const double rhs = -integrate(hadamard(v.u_rho, grad.u_rho) + hadamard(v.u_z, grad.u_z));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("projection never increases kinetic energy and leaves swirl alone") {
    std::mt19937 rng(5);
    const GridHandle g = build_grid(16, 16, 2.0, 0.0, 2.0);
    const Projector P(g);
    for (int trial = 0; trial < 5; ++trial) {
        const VelocityState u = smooth_random_state(g, rng);
        const VelocityState p = P.project(u).state;
        CHECK(kinetic_energy(p) <= kinetic_energy(u) * (1.0 + 1e-14));
        CHECK(max_diff(p.u_phi, u.u_phi) == 0.0);
    }
    // z-independent meridional fields cannot be divergence free with a wall: they project to zero
    VelocityState radial = VelocityState::zeros(g);
    radial.u_rho = ScalarSample::from_function(g, [](double r, double) { return r * (4.0 - r * r); });
    CHECK(state_scale(P.project(radial).state) <= 1e-10);
}

TEST_CASE("already divergence-free manufactured fields are nearly fixed points") {
    const ManufacturedSolution sol = make_solution(SolutionKind::taylor_vortex_swirl);
    double prev = 0.0;
    for (int n : {16, 32, 64}) {
        const GridHandle g = build_grid(n, n, 2.0, 0.0, 2.0);
        const VelocityState u = sample_state(sol, g, 0.0);
        const VelocityState p = Projector(g).project(u).state;
        const ScalarSample dr = p.u_rho - u.u_rho, dz = p.u_z - u.u_z;
        // weighted L2: the axis cell alone converges more slowly in max norm
        const double change = std::sqrt(integrate(hadamard(dr, dr) + hadamard(dz, dz)) / (2.0 * kinetic_energy(u)));
        if (prev > 0.0) CHECK(std::log2(prev / change) >= 1.9);
        prev = change;
    }
}

TEST_CASE("conjugate gradient agrees with the factorisation and reports failure") {
    std::mt19937 rng(6);
    const GridHandle g = build_grid(16, 12, 2.0, 0.0, 2.0);
    const VelocityState u = smooth_random_state(g, rng);
    const ProjectionResult direct = Projector(g).project(u);
    const ProjectionResult cg = Projector(g, {PoissonMethod::conjugate_gradient, 1e-12, 20000}).project(u);
    CHECK(cg.iterations > 0);
    CHECK(state_diff(direct.state, cg.state) <= 1e-8 * state_scale(u));
    CHECK(cg.relative_divergence <= 1e-8);

    try {
        Projector(g, {PoissonMethod::conjugate_gradient, 1e-14, 2}).project(u);
        FAIL("expected non-convergence");
    } catch (const SolverError& e) {
        CHECK(e.iterations() == 2);
    }
}
