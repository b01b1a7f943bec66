#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace axswirl {

/// Cell-centred cylindrical (rho, z) mesh. Nodes sit half a cell off the
/// axis, rho_j = (j + 1/2) d_rho, so every 1/rho weight is finite. z is
/// periodic on [z_min, z_max).
struct CylGrid {
    int n_rho = 0;
    int n_z = 0;
    double rho_max = 2.0;
    double z_min = 0.0;
    double z_max = 1.0;
    double d_rho = 0.0;
    double d_z = 0.0;
    std::vector<double> rho_centers;

    std::size_t size() const noexcept { return static_cast<std::size_t>(n_rho) * n_z; }
    // rho-fastest storage
    std::size_t index(int j, int k) const noexcept {
        return static_cast<std::size_t>(k) * n_rho + j;
    }
    double rho(int j) const noexcept { return (j + 0.5) * d_rho; }
    double z(int k) const noexcept { return z_min + (k + 0.5) * d_z; }
    double z_length() const noexcept { return z_max - z_min; }
    /// Midpoint quadrature weight 2*pi*rho_j*d_rho*d_z.
    double cell_weight(int j) const noexcept;
    /// Smallest spacing; the CFL limits are stated against it.
    double min_spacing() const noexcept { return d_rho < d_z ? d_rho : d_z; }
    double volume() const noexcept;

    bool same_shape(const CylGrid& other) const noexcept;
};

using GridHandle = std::shared_ptr<const CylGrid>;

/// Throws ConfigurationError unless n_rho >= 2, n_z >= 2, rho_max > 0 and
/// z_max > z_min.
GridHandle build_grid(int n_rho, int n_z, double rho_max, double z_min, double z_max);

/// Real-valued field sampled at the cell centres of a grid.
class ScalarSample {
public:
    ScalarSample() = default;
    explicit ScalarSample(GridHandle grid, double fill = 0.0);
    ScalarSample(GridHandle grid, std::vector<double> values);

    /// Samples fn(rho, z) at every cell centre.
    static ScalarSample from_function(GridHandle grid,
                                      const std::function<double(double, double)>& fn);

    const GridHandle& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator()(int j, int k) const noexcept { return values_[grid_->index(j, k)]; }
    double& operator()(int j, int k) noexcept { return values_[grid_->index(j, k)]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    bool all_finite() const noexcept;
    double max_abs() const noexcept;

    ScalarSample& operator+=(const ScalarSample& other);
    ScalarSample& operator-=(const ScalarSample& other);
    ScalarSample& operator*=(double s) noexcept;

    template <class Fn>
    ScalarSample map(Fn&& fn) const {
        ScalarSample out(grid_);
        for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = fn(values_[i]);
        return out;
    }

private:
    GridHandle grid_;
    std::vector<double> values_;
};

ScalarSample operator+(ScalarSample a, const ScalarSample& b);
ScalarSample operator-(ScalarSample a, const ScalarSample& b);
ScalarSample operator*(double s, ScalarSample a);
/// Pointwise product.
ScalarSample hadamard(const ScalarSample& a, const ScalarSample& b);

/// Midpoint rule sum of f_jk * 2*pi*rho_j*d_rho*d_z. Throws NumericError on
/// non-finite samples.
double integrate(const ScalarSample& f);

/// (integral |f rho^gamma|^q dx)^(1/q). Throws NumericError if q < 1.
double weighted_lq_norm(const ScalarSample& f, double q, double gamma);

/// One step of the running space-time integral
///   int (int |f rho^gamma|^a dx)^(b/a) dt,
/// advanced by a right-endpoint rectangle of width dt. For b = infinity the
/// value is the running supremum of the spatial norm instead. a may be
/// infinite (spatial max). Throws ContractViolation on negative entries of
/// f_neg or negative dt.
double serrin_accumulate(double prev, const ScalarSample& f_neg, double a, double b,
                         double gamma, double dt);

} // namespace axswirl
