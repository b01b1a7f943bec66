#pragma once

#include "axswirl/fields.hpp"

#include <array>
#include <optional>
#include <vector>

namespace axswirl {

/// Reflection behaviour of a component across the axis: f(-rho) = +-f(rho).
enum class Parity { even, odd };

/// Ghost value outside rho = rho_max.
///   no_slip     - the field vanishes on the wall face (ghost = -interior);
///   extrapolate - quadratic extrapolation, for fields without a wall condition.
enum class WallMode { no_slip, extrapolate };

/// Cell-centred field with one ghost column on each rho side: column 0 is the
/// mirror image across the axis, column n_rho + 1 the wall ghost. z wraps.
class PaddedField {
public:
    PaddedField(const ScalarSample& f, Parity parity, WallMode wall);

    const CylGrid& grid() const noexcept { return *grid_; }
    const GridHandle& handle() const noexcept { return grid_; }
    /// j in [-1, n_rho], any integer k (periodic).
    double at(int j, int k) const noexcept {
        const int n = grid_->n_z;
        const int kk = ((k % n) + n) % n;
        return data_[static_cast<std::size_t>(kk) * stride_ + (j + 1)];
    }
    /// Signed radius of a node; the axis ghost sits at -d_rho/2.
    double rho(int j) const noexcept { return (j + 0.5) * grid_->d_rho; }

    template <class Fn>
    PaddedField map(Fn&& fn) const {
        PaddedField out = *this;
        for (double& v : out.data_) v = fn(v);
        return out;
    }
    /// Pointwise combination of two padded fields on the same grid, ghosts included.
    template <class Fn>
    PaddedField zip(const PaddedField& other, Fn&& fn) const {
        PaddedField out = *this;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = fn(data_[i], other.data_[i]);
        return out;
    }
    /// Multiplies every node (ghosts included) by rho^power using signed radii.
    PaddedField times_rho_power(int power) const;
    /// Multiplies every node by fn(signed rho).
    template <class Fn>
    PaddedField scale_by_radius(Fn&& fn) const {
        PaddedField out = *this;
        for (int k = 0; k < grid_->n_z; ++k)
            for (int j = -1; j <= grid_->n_rho; ++j)
                out.data_[static_cast<std::size_t>(k) * stride_ + (j + 1)] *= fn(rho(j));
        return out;
    }

private:
    GridHandle grid_;
    int stride_;
    std::vector<double> data_;
};

/// Centred d/drho.
ScalarSample d_rho(const PaddedField& f);
/// Centred d/dz.
ScalarSample d_z(const PaddedField& f);
/// (1/rho) d/drho (rho f), centred.
ScalarSample rho_flux_derivative(const PaddedField& f);
/// (1/rho) d/drho (rho df/drho) + d2f/dz2, compact flux form with zero flux
/// through rho = 0.
ScalarSample cyl_laplacian(const PaddedField& f);

/// integral |grad f|^2 rho^weight_power dx from face differences. The axis
/// face carries zero weight; the wall face uses the ghost.
double face_gradient_energy(const PaddedField& f, double weight_power = 0.0);

/// d_rho u_rho + u_rho/rho + d_z u_z, axis parity u_rho odd.
ScalarSample divergence(const VelocityState& v, WallMode wall = WallMode::no_slip);

/// omega_rho = -d_z u_phi, omega_phi = d_z u_rho - d_rho u_z,
/// omega_z = (1/rho) d_rho (rho u_phi).
VorticityFields curl_axisym(const VelocityState& v, WallMode wall = WallMode::no_slip);

/// Curl of a forcing field (extrapolated wall ghosts).
VorticityFields curl_of(const ForcingFields& f);

struct Tendency {
    ScalarSample d_rho;
    ScalarSample d_phi;
    ScalarSample d_z;
};

/// Time derivative of (u_rho, u_phi, u_z) from the cylindrical momentum
/// equations: advection, the u_phi^2/rho and u_phi u_rho/rho terms, the
/// pressure gradient, forcing and the viscous operators with their -u/rho^2
/// corrections. Requires nu > 0.
Tendency momentum_rhs(const VelocityState& v, const ForcingFields& f, double nu,
                      WallMode wall = WallMode::no_slip, bool include_pressure = true);

/// Residual (lhs - rhs) of the three vorticity transport equations. dw_dt must
/// be supplied (difference of consecutive states); a missing value is a
/// ContractViolation. g defaults to the curl of f.h when f.g is empty.
VorticityFields vorticity_transport_residual(const VelocityState& v, const VorticityFields& w,
                                             const std::optional<VorticityFields>& dw_dt,
                                             const ForcingFields& f, double nu,
                                             WallMode wall = WallMode::no_slip);

/// |grad u|^2 in cylindrical components, integrated.
double velocity_gradient_l2_sq(const VelocityState& v, WallMode wall = WallMode::no_slip);

} // namespace axswirl
