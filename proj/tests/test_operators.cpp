#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axswirl/errors.hpp"
#include "axswirl/mms.hpp"
#include "axswirl/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace axswirl;

namespace {
constexpr double pi = std::numbers::pi;

ScalarSample sample(const GridHandle& g, double (*fn)(double, double)) {
    return ScalarSample::from_function(g, fn);
}

double max_abs_over(const ScalarSample& f, int j_lo, int j_hi, int k_lo, int k_hi) {
    double m = 0.0;
    for (int k = k_lo; k < k_hi; ++k)
        for (int j = j_lo; j < j_hi; ++j) m = std::max(m, std::abs(f(j, k)));
    return m;
}

double max_abs_diff(const ScalarSample& f, double value) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v - value));
    return m;
}

ScalarSample smooth_random(const GridHandle& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double c1 = d(rng), c2 = d(rng), c3 = d(rng);
    const double k = 2.0 * pi / g->z_length();
    return ScalarSample::from_function(g, [=](double r, double z) {
        return c1 * std::cos(r) + c2 * r * r * std::sin(k * z) + c3 * std::cos(2 * k * z);
    });
}
} // namespace

TEST_CASE("divergence of u_rho = rho is 2") {
    const GridHandle g = build_grid(16, 8, 2.0, 0.0, 1.0);
    VelocityState v = VelocityState::zeros(g);
    v.u_rho = sample(g, [](double r, double) { return r; });
    CHECK(max_abs_diff(divergence(v, WallMode::extrapolate), 2.0) <= 1e-12);
    // the no-slip ghost only touches the wall column
    const ScalarSample d = divergence(v, WallMode::no_slip);
    for (int k = 0; k < g->n_z; ++k)
        for (int j = 0; j < g->n_rho - 1; ++j) CHECK(std::abs(d(j, k) - 2.0) <= 1e-12);
}

TEST_CASE("divergence of u_rho = 1/rho vanishes away from the wall") {
    const GridHandle g = build_grid(16, 8, 2.0, 0.0, 1.0);
    VelocityState v = VelocityState::zeros(g);
    v.u_rho = sample(g, [](double r, double) { return 1.0 / r; });
    CHECK(max_abs_over(divergence(v, WallMode::extrapolate), 0, g->n_rho - 1, 0, g->n_z) <= 1e-12);
}

TEST_CASE("curl of rigid rotation and of an axial shear") {
    const GridHandle g = build_grid(16, 8, 2.0, 0.0, 1.0);
    VelocityState v = VelocityState::zeros(g);
    v.u_phi = sample(g, [](double r, double) { return r; });
    const VorticityFields w = curl_axisym(v, WallMode::extrapolate);
    CHECK(max_abs_diff(w.w_z, 2.0) <= 1e-12);
    CHECK(max_abs_diff(w.w_rho, 0.0) == 0.0);
    CHECK(max_abs_diff(w.w_phi, 0.0) == 0.0);

    VelocityState s = VelocityState::zeros(g);
    s.u_phi = sample(g, [](double, double z) { return z; });
    const VorticityFields ws = curl_axisym(s, WallMode::extrapolate);
    // z is periodic, so the shear is only linear away from the seam
    for (int k = 1; k < g->n_z - 1; ++k)
        for (int j = 0; j < g->n_rho; ++j) CHECK(ws.w_rho(j, k) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("momentum_rhs on rest and on rigid rotation") {
    const GridHandle g = build_grid(16, 8, 2.0, 0.0, 1.0);
    const ForcingFields f = ForcingFields::zeros(g);
    const Tendency rest = momentum_rhs(VelocityState::zeros(g), f, 0.1);
    CHECK(rest.d_rho.max_abs() == 0.0);
    CHECK(rest.d_phi.max_abs() == 0.0);
    CHECK(rest.d_z.max_abs() == 0.0);

    VelocityState v = VelocityState::zeros(g);
    v.u_phi = sample(g, [](double r, double) { return r; });
    const Tendency t = momentum_rhs(v, f, 0.1, WallMode::extrapolate);
    CHECK(t.d_phi.max_abs() <= 1e-12);
    CHECK(t.d_z.max_abs() <= 1e-12);
    for (int k = 0; k < g->n_z; ++k)
        for (int j = 0; j < g->n_rho; ++j) CHECK(t.d_rho(j, k) == doctest::Approx(g->rho(j)).epsilon(1e-12));
}

TEST_CASE("vorticity transport residual contracts") {
    const GridHandle g = build_grid(12, 8, 2.0, 0.0, 1.0);
    const ForcingFields f = ForcingFields::zeros(g);
    const VorticityFields zero = VorticityFields::zeros(g);
    const VorticityFields r0 = vorticity_transport_residual(VelocityState::zeros(g), zero, zero, f, 0.1);
    CHECK(r0.w_rho.max_abs() == 0.0);
    CHECK(r0.w_phi.max_abs() == 0.0);
    CHECK(r0.w_z.max_abs() == 0.0);
    CHECK_THROWS_AS(vorticity_transport_residual(VelocityState::zeros(g), zero, std::nullopt, f, 0.1),
                    ContractViolation);

    VelocityState v = VelocityState::zeros(g);
    v.u_phi = sample(g, [](double r, double) { return r; });
    const VorticityFields w = curl_axisym(v, WallMode::extrapolate);
    const VorticityFields r = vorticity_transport_residual(v, w, zero, f, 0.1, WallMode::extrapolate);
    CHECK(r.w_phi.max_abs() <= 1e-12);
    CHECK(r.w_rho.max_abs() <= 1e-12);
    CHECK(r.w_z.max_abs() <= 1e-12);
}

TEST_CASE("vorticity transport residual shrinks under refinement on a manufactured trajectory") {
    const ManufacturedSolution sol = make_solution(SolutionKind::taylor_vortex_swirl, {0.5, 0.05, 2.0, 2.0});
    double prev = 0.0;
    for (int n : {16, 32, 64}) {
        const GridHandle g = build_grid(n, n, 2.0, 0.0, 2.0);
        const double t = 0.1;
        const VelocityState v = sample_state(sol, g, t);
        const VorticityFields w = exact_vorticity(sol, g, t);
        const double dt = 1e-6;
        const VorticityFields wp = exact_vorticity(sol, g, t + dt);
        const VorticityFields wm = exact_vorticity(sol, g, t - dt);
        VorticityFields dw{(1.0 / (2 * dt)) * (wp.w_rho - wm.w_rho), (1.0 / (2 * dt)) * (wp.w_phi - wm.w_phi),
                           (1.0 / (2 * dt)) * (wp.w_z - wm.w_z)};
        const ForcingFields f = forcing_for(sol, 0.05, g, t);
        const VorticityFields r = vorticity_transport_residual(v, w, dw, f, 0.05);
        // interior cells; the wall ghost of the vorticity is one-sided
        const double err = std::max({max_abs_over(r.w_rho, 0, n - 2, 0, n), max_abs_over(r.w_phi, 0, n - 2, 0, n),
                                     max_abs_over(r.w_z, 0, n - 2, 0, n)});
        if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.0);
        prev = err;
    }
}

TEST_CASE("discrete div curl vanishes") {
    const ManufacturedSolution sol = make_solution(SolutionKind::taylor_vortex_swirl, {1.0, 0.05, 2.0, 2.0});
    for (int n : {16, 32, 64}) {
        const GridHandle g = build_grid(n, n, 2.0, 0.0, 2.0);
        const VorticityFields w = curl_axisym(sample_state(sol, g, 0.0), WallMode::extrapolate);
        const ScalarSample div = rho_flux_derivative(PaddedField(w.w_rho, Parity::odd, WallMode::extrapolate)) +
                                 d_z(PaddedField(w.w_z, Parity::even, WallMode::extrapolate));
        // the centred stencils commute, so the identity holds to rounding
        CHECK(div.max_abs() <= 1e-12);
    }
}

TEST_CASE("linear sub-operators are linear") {
    std::mt19937 rng(5);
    const GridHandle g = build_grid(10, 8, 2.0, 0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const ScalarSample a = smooth_random(g, rng), b = smooth_random(g, rng);
        const double s = 0.7, t = -1.3;
        const ScalarSample comb = s * a + t * b;
        for (Parity p : {Parity::odd, Parity::even})
            for (WallMode w : {WallMode::no_slip, WallMode::extrapolate}) {
                const ScalarSample lhs = cyl_laplacian(PaddedField(comb, p, w));
                const ScalarSample rhs = s * cyl_laplacian(PaddedField(a, p, w)) + t * cyl_laplacian(PaddedField(b, p, w));
                CHECK(max_abs_diff(lhs - rhs, 0.0) <= 1e-10);
                const ScalarSample dl = d_rho(PaddedField(comb, p, w));
                const ScalarSample dr = s * d_rho(PaddedField(a, p, w)) + t * d_rho(PaddedField(b, p, w));
                CHECK(max_abs_diff(dl - dr, 0.0) <= 1e-12);
            }
        VelocityState va = VelocityState::zeros(g), vb = VelocityState::zeros(g), vc = VelocityState::zeros(g);
        va.u_rho = a; va.u_z = b;
        vb.u_rho = b; vb.u_z = a;
        vc.u_rho = s * a + t * b; vc.u_z = s * b + t * a;
        CHECK(max_abs_diff(divergence(vc) - (s * divergence(va) + t * divergence(vb)), 0.0) <= 1e-12);
    }
}

TEST_CASE("cylindrical Laplacian is symmetric and negative semi-definite") {
    std::mt19937 rng(9);
    std::normal_distribution<double> d;
    const GridHandle g = build_grid(9, 6, 2.0, 0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarSample f(g), h(g);
        for (auto& v : f.values()) v = d(rng);
        for (auto& v : h.values()) v = d(rng);
        for (Parity p : {Parity::odd, Parity::even}) {
            const ScalarSample lf = cyl_laplacian(PaddedField(f, p, WallMode::no_slip));
            const ScalarSample lh = cyl_laplacian(PaddedField(h, p, WallMode::no_slip));
            const double fh = integrate(hadamard(f, lh));
            const double hf = integrate(hadamard(h, lf));
            CHECK(fh == doctest::Approx(hf).epsilon(1e-11));
            CHECK(integrate(hadamard(f, lf)) <= 0.0);
        }
    }
}

TEST_CASE("operators commute with the reflection z -> -z") {
    // cell centres of a grid symmetric about z = 0 map k -> n_z - 1 - k
    const GridHandle g = build_grid(10, 12, 2.0, -1.0, 1.0);
    const ManufacturedSolution sol = make_solution(SolutionKind::taylor_vortex_swirl, {1.0, 0.05, 2.0, 2.0});
    const VelocityState v = sample_state(sol, g, 0.0);
    VelocityState r = v;
    for (int k = 0; k < g->n_z; ++k)
        for (int j = 0; j < g->n_rho; ++j) {
            const int kr = g->n_z - 1 - k;
            r.u_rho(j, k) = v.u_rho(j, kr);
            r.u_phi(j, k) = v.u_phi(j, kr);
            r.u_z(j, k) = -v.u_z(j, kr);
        }
    const ScalarSample dv = divergence(v), dr = divergence(r);
    const VorticityFields wv = curl_axisym(v), wr = curl_axisym(r);
    for (int k = 0; k < g->n_z; ++k)
        for (int j = 0; j < g->n_rho; ++j) {
            const int kr = g->n_z - 1 - k;
            CHECK(dr(j, k) == doctest::Approx(dv(j, kr)).epsilon(1e-12));
            // omega_phi is a pseudo-vector component: it flips sign
            CHECK(wr.w_phi(j, k) == doctest::Approx(-wv.w_phi(j, kr)).epsilon(1e-12));
            CHECK(wr.w_z(j, k) == doctest::Approx(wv.w_z(j, kr)).epsilon(1e-12));
        }
}

TEST_CASE("velocity gradient norm of rigid rotation") {
    const GridHandle g = build_grid(16, 8, 2.0, 0.0, 1.0);
    VelocityState v = VelocityState::zeros(g);
    v.u_phi = sample(g, [](double r, double) { return r; });
    CHECK(velocity_gradient_l2_sq(v, WallMode::extrapolate) == doctest::Approx(2.0 * 4.0 * pi).epsilon(1e-12));
}

TEST_CASE("face gradient energy of linear profiles") {
    const GridHandle g = build_grid(8, 4, 2.0, 0.0, 1.0);
    // f = z-independent constant: no gradient anywhere, ghosts included when extrapolated
    CHECK(face_gradient_energy(PaddedField(ScalarSample(g, 3.0), Parity::even, WallMode::extrapolate)) == 0.0);
    // f = rho: |grad f|^2 = 1 on every interior face, axis face has zero weight
    const ScalarSample f = sample(g, [](double r, double) { return r; });
    const double e = face_gradient_energy(PaddedField(f, Parity::odd, WallMode::extrapolate));
    double faces = 0.0;
    for (int j = 0; j < g->n_rho; ++j) faces += (j + 1) * g->d_rho;
    CHECK(e == doctest::Approx(2.0 * pi * faces * g->d_rho * g->z_length()).epsilon(1e-12));
}
