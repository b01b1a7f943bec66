#include "axswirl/operators.hpp"

#include "axswirl/errors.hpp"

#include <cmath>
#include <numbers>

namespace axswirl {

VelocityState VelocityState::zeros(const GridHandle& grid, double time) {
    return {ScalarSample(grid), ScalarSample(grid), ScalarSample(grid), ScalarSample(grid), time};
}

bool VelocityState::all_finite() const noexcept {
    return u_rho.all_finite() && u_phi.all_finite() && u_z.all_finite() && pressure.all_finite();
}

VorticityFields VorticityFields::zeros(const GridHandle& grid) {
    return {ScalarSample(grid), ScalarSample(grid), ScalarSample(grid)};
}

ForcingFields ForcingFields::zeros(const GridHandle& grid) {
    return {ScalarSample(grid), ScalarSample(grid), ScalarSample(grid), std::nullopt};
}

PaddedField::PaddedField(const ScalarSample& f, Parity parity, WallMode wall)
    : grid_(f.grid()), stride_(f.grid()->n_rho + 2),
      data_(static_cast<std::size_t>(stride_) * f.grid()->n_z) {
    const int n = grid_->n_rho;
    const double sign = parity == Parity::odd ? -1.0 : 1.0;
    for (int k = 0; k < grid_->n_z; ++k) {
        double* row = data_.data() + static_cast<std::size_t>(k) * stride_;
        for (int j = 0; j < n; ++j) row[j + 1] = f(j, k);
        row[0] = sign * f(0, k);
        if (wall == WallMode::no_slip) {
            row[n + 1] = -f(n - 1, k);
        } else if (n >= 3) {
            row[n + 1] = 3.0 * f(n - 1, k) - 3.0 * f(n - 2, k) + f(n - 3, k);
        } else {
            row[n + 1] = 2.0 * f(n - 1, k) - f(n - 2, k);
        }
    }
}

PaddedField PaddedField::times_rho_power(int power) const {
    PaddedField out = *this;
    for (int k = 0; k < grid_->n_z; ++k)
        for (int j = -1; j <= grid_->n_rho; ++j)
            out.data_[static_cast<std::size_t>(k) * stride_ + (j + 1)] *= std::pow(rho(j), power);
    return out;
}

ScalarSample d_rho(const PaddedField& f) {
    const CylGrid& g = f.grid();
    ScalarSample out(f.handle());
    const double inv = 1.0 / (2.0 * g.d_rho);
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j) out(j, k) = (f.at(j + 1, k) - f.at(j - 1, k)) * inv;
    return out;
}

ScalarSample d_z(const PaddedField& f) {
    const CylGrid& g = f.grid();
    ScalarSample out(f.handle());
    const double inv = 1.0 / (2.0 * g.d_z);
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j) out(j, k) = (f.at(j, k + 1) - f.at(j, k - 1)) * inv;
    return out;
}

ScalarSample rho_flux_derivative(const PaddedField& f) {
    const CylGrid& g = f.grid();
    ScalarSample out(f.handle());
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j)
            out(j, k) = (f.rho(j + 1) * f.at(j + 1, k) - f.rho(j - 1) * f.at(j - 1, k)) /
                        (2.0 * g.d_rho * f.rho(j));
    return out;
}

ScalarSample cyl_laplacian(const PaddedField& f) {
    const CylGrid& g = f.grid();
    ScalarSample out(f.handle());
    const double idr2 = 1.0 / (g.d_rho * g.d_rho);
    const double idz2 = 1.0 / (g.d_z * g.d_z);
    for (int k = 0; k < g.n_z; ++k) {
        for (int j = 0; j < g.n_rho; ++j) {
            const double rp = (j + 1) * g.d_rho;
            const double rm = j * g.d_rho;
            const double c = f.at(j, k);
            const double radial =
                (rp * (f.at(j + 1, k) - c) - rm * (c - f.at(j - 1, k))) * idr2 / f.rho(j);
            const double axial = (f.at(j, k + 1) - 2.0 * c + f.at(j, k - 1)) * idz2;
            out(j, k) = radial + axial;
        }
    }
    return out;
}

double face_gradient_energy(const PaddedField& f, double weight_power) {
    const CylGrid& g = f.grid();
    const double area = 2.0 * std::numbers::pi * g.d_rho * g.d_z;
    double total = 0.0;
    for (int k = 0; k < g.n_z; ++k) {
        for (int j = 0; j < g.n_rho; ++j) {
            const double rface = (j + 1) * g.d_rho;
            const double dr = (f.at(j + 1, k) - f.at(j, k)) / g.d_rho;
            const double dz = (f.at(j, k + 1) - f.at(j, k)) / g.d_z;
            total += area * (std::pow(rface, 1.0 + weight_power) * dr * dr +
                             std::pow(g.rho(j), 1.0 + weight_power) * dz * dz);
        }
    }
    return total;
}

ScalarSample divergence(const VelocityState& v, WallMode wall) {
    PaddedField ur(v.u_rho, Parity::odd, wall);
    PaddedField uz(v.u_z, Parity::even, wall);
    return rho_flux_derivative(ur) + d_z(uz);
}

VorticityFields curl_axisym(const VelocityState& v, WallMode wall) {
    PaddedField ur(v.u_rho, Parity::odd, wall);
    PaddedField up(v.u_phi, Parity::odd, wall);
    PaddedField uz(v.u_z, Parity::even, wall);
    return {-1.0 * d_z(up), d_z(ur) - d_rho(uz), rho_flux_derivative(up)};
}

VorticityFields curl_of(const ForcingFields& f) {
    VelocityState as_velocity{f.h_rho, f.h_phi, f.h_z, ScalarSample(f.h_rho.grid()), 0.0};
    return curl_axisym(as_velocity, WallMode::extrapolate);
}

namespace {

ScalarSample advect(const ScalarSample& ur, const ScalarSample& uz, const PaddedField& f) {
    return hadamard(ur, d_rho(f)) + hadamard(uz, d_z(f));
}

ScalarSample over_rho_power(const ScalarSample& f, int power) {
    const CylGrid& g = *f.grid();
    ScalarSample out(f.grid());
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j) out(j, k) = f(j, k) / std::pow(g.rho(j), power);
    return out;
}

} // namespace

Tendency momentum_rhs(const VelocityState& v, const ForcingFields& f, double nu, WallMode wall,
                      bool include_pressure) {
    if (!(nu > 0.0)) throw ContractViolation("momentum_rhs: nu must be positive");
    PaddedField ur(v.u_rho, Parity::odd, wall);
    PaddedField up(v.u_phi, Parity::odd, wall);
    PaddedField uz(v.u_z, Parity::even, wall);

    Tendency t{ScalarSample(v.grid()), ScalarSample(v.grid()), ScalarSample(v.grid())};
    const ScalarSample swirl_sq_over_rho = over_rho_power(hadamard(v.u_phi, v.u_phi), 1);
    const ScalarSample swirl_radial_over_rho = over_rho_power(hadamard(v.u_phi, v.u_rho), 1);

    t.d_rho = swirl_sq_over_rho - advect(v.u_rho, v.u_z, ur) + f.h_rho +
              nu * (cyl_laplacian(ur) - over_rho_power(v.u_rho, 2));
    t.d_phi = f.h_phi - advect(v.u_rho, v.u_z, up) - swirl_radial_over_rho +
              nu * (cyl_laplacian(up) - over_rho_power(v.u_phi, 2));
    t.d_z = f.h_z - advect(v.u_rho, v.u_z, uz) + nu * cyl_laplacian(uz);

    if (include_pressure) {
        PaddedField p(v.pressure, Parity::even, WallMode::extrapolate);
        t.d_rho -= d_rho(p);
        t.d_z -= d_z(p);
    }
    return t;
}

VorticityFields vorticity_transport_residual(const VelocityState& v, const VorticityFields& w,
                                             const std::optional<VorticityFields>& dw_dt,
                                             const ForcingFields& f, double nu, WallMode wall) {
    if (!dw_dt) throw ContractViolation("vorticity_transport_residual: missing d(omega)/dt");
    const VorticityFields g = f.g ? *f.g : curl_of(f);

    PaddedField ur(v.u_rho, Parity::odd, wall);
    PaddedField up(v.u_phi, Parity::odd, wall);
    PaddedField uz(v.u_z, Parity::even, wall);
    PaddedField wr(w.w_rho, Parity::odd, WallMode::extrapolate);
    PaddedField wp(w.w_phi, Parity::odd, WallMode::extrapolate);
    PaddedField wz(w.w_z, Parity::even, WallMode::extrapolate);

    VorticityFields r = VorticityFields::zeros(v.grid());
    r.w_rho = dw_dt->w_rho + advect(v.u_rho, v.u_z, wr) - hadamard(d_rho(ur), w.w_rho) -
              hadamard(d_z(ur), w.w_z) - g.w_rho -
              nu * (cyl_laplacian(wr) - over_rho_power(w.w_rho, 2));
    r.w_phi = dw_dt->w_phi + advect(v.u_rho, v.u_z, wp) -
              over_rho_power(hadamard(v.u_rho, w.w_phi), 1) +
              2.0 * over_rho_power(hadamard(v.u_phi, w.w_rho), 1) - g.w_phi -
              nu * (cyl_laplacian(wp) - over_rho_power(w.w_phi, 2));
    r.w_z = dw_dt->w_z + advect(v.u_rho, v.u_z, wz) - hadamard(d_rho(uz), w.w_rho) -
            hadamard(d_z(uz), w.w_z) - g.w_z - nu * cyl_laplacian(wz);
    return r;
}

double velocity_gradient_l2_sq(const VelocityState& v, WallMode wall) {
    PaddedField ur(v.u_rho, Parity::odd, wall);
    PaddedField up(v.u_phi, Parity::odd, wall);
    PaddedField uz(v.u_z, Parity::even, wall);
    auto sq = [](const ScalarSample& a) { return hadamard(a, a); };
    ScalarSample total = sq(d_rho(ur)) + sq(d_z(ur)) + sq(d_rho(up)) + sq(d_z(up)) +
                         sq(d_rho(uz)) + sq(d_z(uz)) +
                         over_rho_power(sq(v.u_rho) + sq(v.u_phi), 2);
    return integrate(total);
}

} // namespace axswirl
