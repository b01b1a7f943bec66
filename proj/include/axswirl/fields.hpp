#pragma once

#include "axswirl/grid.hpp"

#include <optional>

namespace axswirl {

/// Axisymmetric velocity (u_rho, u_phi, u_z) and pressure at one time level.
struct VelocityState {
    ScalarSample u_rho;
    ScalarSample u_phi;
    ScalarSample u_z;
    ScalarSample pressure;
    double time = 0.0;

    static VelocityState zeros(const GridHandle& grid, double time = 0.0);
    const GridHandle& grid() const noexcept { return u_rho.grid(); }
    bool all_finite() const noexcept;
};

/// (omega_rho, omega_phi, omega_z); also used for the curl g of a forcing.
struct VorticityFields {
    ScalarSample w_rho;
    ScalarSample w_phi;
    ScalarSample w_z;

    static VorticityFields zeros(const GridHandle& grid);
};

/// Body force h and, when available, its curl g.
struct ForcingFields {
    ScalarSample h_rho;
    ScalarSample h_phi;
    ScalarSample h_z;
    std::optional<VorticityFields> g;

    static ForcingFields zeros(const GridHandle& grid);
};

} // namespace axswirl
