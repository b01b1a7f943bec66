#include "axswirl/grid.hpp"

#include "axswirl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace axswirl {

double CylGrid::cell_weight(int j) const noexcept {
    return 2.0 * std::numbers::pi * rho_centers[j] * d_rho * d_z;
}

double CylGrid::volume() const noexcept {
    return std::numbers::pi * rho_max * rho_max * z_length();
}

bool CylGrid::same_shape(const CylGrid& other) const noexcept {
    return n_rho == other.n_rho && n_z == other.n_z && rho_max == other.rho_max &&
           z_min == other.z_min && z_max == other.z_max;
}

GridHandle build_grid(int n_rho, int n_z, double rho_max, double z_min, double z_max) {
    if (n_rho < 2) throw ConfigurationError("n_rho must be >= 2, got " + std::to_string(n_rho));
    if (n_z < 2) throw ConfigurationError("n_z must be >= 2, got " + std::to_string(n_z));
    if (!(rho_max > 0.0) || !std::isfinite(rho_max))
        throw ConfigurationError("rho_max must be positive and finite");
    if (!(z_max > z_min) || !std::isfinite(z_max) || !std::isfinite(z_min))
        throw ConfigurationError("z_max must exceed z_min");

    auto g = std::make_shared<CylGrid>();
    g->n_rho = n_rho;
    g->n_z = n_z;
    g->rho_max = rho_max;
    g->z_min = z_min;
    g->z_max = z_max;
    g->d_rho = rho_max / n_rho;
    g->d_z = (z_max - z_min) / n_z;
    g->rho_centers.resize(n_rho);
    for (int j = 0; j < n_rho; ++j) g->rho_centers[j] = (j + 0.5) * g->d_rho;
    return g;
}

ScalarSample::ScalarSample(GridHandle grid, double fill)
    : grid_(std::move(grid)), values_(grid_ ? grid_->size() : 0, fill) {}

ScalarSample::ScalarSample(GridHandle grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_ || values_.size() != grid_->size())
        throw ContractViolation("ScalarSample: value count does not match grid");
}

ScalarSample ScalarSample::from_function(GridHandle grid,
                                         const std::function<double(double, double)>& fn) {
    ScalarSample out(grid);
    for (int k = 0; k < grid->n_z; ++k)
        for (int j = 0; j < grid->n_rho; ++j) out(j, k) = fn(grid->rho(j), grid->z(k));
    return out;
}

bool ScalarSample::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarSample::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) {
        if (std::isnan(v)) return v;
        m = std::max(m, std::abs(v));
    }
    return m;
}

static void require_same_grid(const ScalarSample& a, const ScalarSample& b) {
    if (a.grid() != b.grid() && !(a.grid() && b.grid() && a.grid()->same_shape(*b.grid())))
        throw ContractViolation("samples live on different grids");
}

ScalarSample& ScalarSample::operator+=(const ScalarSample& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

ScalarSample& ScalarSample::operator-=(const ScalarSample& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

ScalarSample& ScalarSample::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarSample operator+(ScalarSample a, const ScalarSample& b) { return a += b; }
ScalarSample operator-(ScalarSample a, const ScalarSample& b) { return a -= b; }
ScalarSample operator*(double s, ScalarSample a) { return a *= s; }

ScalarSample hadamard(const ScalarSample& a, const ScalarSample& b) {
    require_same_grid(a, b);
    ScalarSample out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double integrate(const ScalarSample& f) {
    const CylGrid& g = *f.grid();
    double total = 0.0;
    for (int k = 0; k < g.n_z; ++k) {
        for (int j = 0; j < g.n_rho; ++j) {
            const double v = f(j, k);
            if (!std::isfinite(v))
                throw NumericError("integrate: non-finite sample at (" + std::to_string(j) + ", " +
                                   std::to_string(k) + ")");
            total += v * g.cell_weight(j);
        }
    }
    return total;
}

double weighted_lq_norm(const ScalarSample& f, double q, double gamma) {
    if (!(q >= 1.0)) throw NumericError("weighted_lq_norm: q must be >= 1");
    const CylGrid& g = *f.grid();
    ScalarSample integrand(f.grid());
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j)
            integrand(j, k) = std::pow(std::abs(f(j, k) * std::pow(g.rho(j), gamma)), q);
    return std::pow(integrate(integrand), 1.0 / q);
}

double serrin_accumulate(double prev, const ScalarSample& f_neg, double a, double b,
                         double gamma, double dt) {
    if (dt < 0.0) throw ContractViolation("serrin_accumulate: dt must be non-negative");
    for (double v : f_neg.values())
        if (v < 0.0) throw ContractViolation("serrin_accumulate: negative entry in negative part");

    double spatial = 0.0;
    if (std::isinf(a)) {
        const CylGrid& g = *f_neg.grid();
        for (int k = 0; k < g.n_z; ++k)
            for (int j = 0; j < g.n_rho; ++j)
                spatial = std::max(spatial, f_neg(j, k) * std::pow(g.rho(j), gamma));
    } else {
        spatial = weighted_lq_norm(f_neg, a, gamma);
    }
    if (std::isinf(b)) return std::max(prev, spatial);
    return prev + dt * std::pow(spatial, b);
}

} // namespace axswirl
