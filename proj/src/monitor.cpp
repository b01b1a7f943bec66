#include "axswirl/monitor.hpp"

#include "axswirl/errors.hpp"
#include "axswirl/operators.hpp"
#include "axswirl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace axswirl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Pointwise field from a function of (value index, rho).
template <class Fn>
ScalarSample cellwise(const GridHandle& grid, Fn&& fn) {
    ScalarSample out(grid);
    const CylGrid& g = *grid;
    for (int k = 0; k < g.n_z; ++k)
        for (int j = 0; j < g.n_rho; ++j) {
            const std::size_t i = g.index(j, k);
            out[i] = fn(i, g.rho(j));
        }
    return out;
}

template <class Fn>
double integral(const GridHandle& grid, Fn&& fn) {
    return integrate(cellwise(grid, std::forward<Fn>(fn)));
}

double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double avg(double a, double b) { return 0.5 * (a + b); }

double relative_residual(std::initializer_list<double> lhs_terms, double rhs) {
    double lhs = 0.0, scale = std::abs(rhs);
    for (double t : lhs_terms) {
        lhs += t;
        scale += std::abs(t);
    }
    return scale > 0.0 ? (lhs - rhs) / scale : 0.0;
}

double step_dt(const VelocityState& prev, const VelocityState& next) {
    const double dt = next.time - prev.time;
    if (!(dt > 0.0)) throw ContractViolation("budget needs consecutive checkpoints with increasing time");
    return dt;
}

// int |grad u_phi^{q/2}|^2
double swirl_dissipation(const VelocityState& v, int q) {
    const PaddedField u(v.u_phi, Parity::odd, WallMode::no_slip);
    return face_gradient_energy(u.map([q](double x) { return ipow(x, q / 2); }));
}

// Single-checkpoint quantities of the Step-1 budget.
struct SwirlTerms {
    double y = 0.0;         // int u^q
    double h_q = 0.0;       // int |h|^q
    double d_q = 0.0;       // int |grad u^{q/2}|^2
    double s_q = 0.0;       // int u^q / rho^2
    double a_signed = 0.0;  // int u_rho u^q / rho
    double a_neg = 0.0;     // int u_rho^- u^q / rho
    double forcing = 0.0;   // int h u^{q-1}
    double d = 0.0;
};

SwirlTerms swirl_terms(const VelocityState& v, const ForcingFields& f, const MonitorConfig& m) {
    const GridHandle& g = v.grid();
    const int q = m.q;
    const auto& u = v.u_phi;
    const auto& ur = v.u_rho;
    const auto& h = f.h_phi;
    SwirlTerms t;
    t.y = integral(g, [&](std::size_t i, double) { return ipow(u[i], q); });
    t.h_q = integral(g, [&](std::size_t i, double) { return std::pow(std::abs(h[i]), q); });
    t.d_q = swirl_dissipation(v, q);
    t.s_q = integral(g, [&](std::size_t i, double r) { return ipow(u[i], q) / (r * r); });
    t.a_signed = integral(g, [&](std::size_t i, double r) { return ur[i] * ipow(u[i], q) / r; });
    t.a_neg = integral(g, [&](std::size_t i, double r) { return negative_part(ur[i]) * ipow(u[i], q) / r; });
    t.forcing = integral(g, [&](std::size_t i, double) { return h[i] * ipow(u[i], q - 1); });
    t.d = d_of_t(v, m);
    return t;
}

// Single-checkpoint quantities of the Step-2 budget at one epsilon.
struct VorticityTerms {
    double energy = 0.0;       // 1/2 int w^2 / rho^{2-eps}
    double g_energy = 0.0;     // int |grad (w / rho^{1-eps})|^2 rho^{-eps}
    double grad_w = 0.0;       // int |grad w|^2 / rho^{2-eps}
    double dz_w = 0.0;         // int (d_z w)^2 / rho^{2-eps}
    double source = 0.0;       // int u^4 / rho^{4-eps}
    double radial = 0.0;       // int |u_rho| w^2 / rho^{3-eps}
    double radial_signed = 0.0;// int u_rho w^2 / rho^{3-eps}
    double w4 = 0.0;           // int w^2 / rho^{4-eps}
    double stretch = 0.0;      // 2 int (u/rho) w_rho w / rho^{2-eps}, w_rho = -d_z u; lhs of the identity
    double forcing = 0.0;      // int g w / rho^{2-eps}
    double forcing_abs = 0.0;  // int |g||w| / rho^{2-eps}
};

VorticityTerms vorticity_terms(const VelocityState& v, const ForcingFields& f, const MonitorConfig& m,
                               double eps) {
    const GridHandle& g = v.grid();
    const ScalarSample w = curl_axisym(v, WallMode::no_slip).w_phi;
    const ScalarSample gphi = f.g ? f.g->w_phi : curl_of(f).w_phi;
    const PaddedField wp(w, Parity::odd, WallMode::extrapolate);
    const PaddedField up(v.u_phi, Parity::odd, WallMode::no_slip);
    const ScalarSample dzw = d_z(wp);
    const ScalarSample dzu = d_z(up);
    const auto& u = v.u_phi;
    const auto& ur = v.u_rho;
    (void)m;

    VorticityTerms t;
    t.energy = 0.5 * integral(g, [&](std::size_t i, double r) { return w[i] * w[i] / std::pow(r, 2.0 - eps); });
    const PaddedField scaled =
        wp.scale_by_radius([eps](double r) { return std::pow(std::abs(r), eps - 1.0); });
    t.g_energy = face_gradient_energy(scaled, -eps);
    t.grad_w = face_gradient_energy(wp, eps - 2.0);
    t.dz_w = integral(g, [&](std::size_t i, double r) { return dzw[i] * dzw[i] / std::pow(r, 2.0 - eps); });
    t.source = integral(g, [&](std::size_t i, double r) { return ipow(u[i], 4) / std::pow(r, 4.0 - eps); });
    t.radial = integral(g, [&](std::size_t i, double r) {
        return std::abs(ur[i]) * w[i] * w[i] / std::pow(r, 3.0 - eps);
    });
    t.radial_signed = integral(g, [&](std::size_t i, double r) {
        return ur[i] * w[i] * w[i] / std::pow(r, 3.0 - eps);
    });
    t.w4 = integral(g, [&](std::size_t i, double r) { return w[i] * w[i] / std::pow(r, 4.0 - eps); });
    t.stretch = 2.0 * integral(g, [&](std::size_t i, double r) {
        return (u[i] / r) * (-dzu[i]) * w[i] / std::pow(r, 2.0 - eps);
    });
    t.forcing = integral(g, [&](std::size_t i, double r) { return gphi[i] * w[i] / std::pow(r, 2.0 - eps); });
    t.forcing_abs = integral(g, [&](std::size_t i, double r) {
        return std::abs(gphi[i] * w[i]) / std::pow(r, 2.0 - eps);
    });
    return t;
}

// Single-checkpoint quantities of the Step-3 budget.
struct QuarticTerms {
    double q2 = 0.0;        // int u^4 / rho^2
    double q4 = 0.0;        // int u^4 / rho^4
    double radial = 0.0;    // int u_rho u^4 / rho^3
    double radial_neg = 0.0;// int u_rho^- u^4 / rho^3
    double grad = 0.0;      // int |grad u|^2 u^2 / rho^2
    double g4 = 0.0;        // int |grad (u^2/rho)|^2
    double forcing = 0.0;   // int h u^3 / rho^2
    double young = 0.0;     // 27/(4 nu^3) int rho^4 h^4
};

QuarticTerms quartic_terms(const VelocityState& v, const ForcingFields& f, double nu) {
    const GridHandle& g = v.grid();
    const auto& u = v.u_phi;
    const auto& ur = v.u_rho;
    const auto& h = f.h_phi;
    const PaddedField up(u, Parity::odd, WallMode::no_slip);
    const ScalarSample dr = d_rho(up);
    const ScalarSample dz = d_z(up);
    QuarticTerms t;
    t.q2 = integral(g, [&](std::size_t i, double r) { return ipow(u[i], 4) / (r * r); });
    t.q4 = integral(g, [&](std::size_t i, double r) { return ipow(u[i], 4) / ipow(r, 4); });
    t.radial = integral(g, [&](std::size_t i, double r) { return ur[i] * ipow(u[i], 4) / ipow(r, 3); });
    t.radial_neg = integral(g, [&](std::size_t i, double r) {
        return negative_part(ur[i]) * ipow(u[i], 4) / ipow(r, 3);
    });
    t.grad = integral(g, [&](std::size_t i, double r) {
        return (dr[i] * dr[i] + dz[i] * dz[i]) * u[i] * u[i] / (r * r);
    });
    // u^2/rho is odd across the axis; signed radii keep the ghost consistent
    const PaddedField sq = up.map([](double x) { return x * x; }).times_rho_power(-1);
    t.g4 = face_gradient_energy(sq);
    t.forcing = integral(g, [&](std::size_t i, double r) { return h[i] * ipow(u[i], 3) / (r * r); });
    t.young = 27.0 / (4.0 * nu * nu * nu) *
              integral(g, [&](std::size_t i, double r) { return ipow(r, 4) * ipow(h[i], 4); });
    return t;
}

std::string trend_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return "constant";
    bool inc = true, dec = true, flat = true;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double scale = std::max(std::abs(xs[i]), std::abs(xs[i - 1]));
        const double d = xs[i] - xs[i - 1];
        if (std::abs(d) > 1e-14 * scale) flat = false;
        if (d < -1e-14 * scale) inc = false;
        if (d > 1e-14 * scale) dec = false;
    }
    if (flat) return "constant";
    if (inc) return "increasing";
    if (dec) return "decreasing";
    return "non-monotone";
}

IndicatorSeries series_of(const std::vector<DiagnosticsRecord>& records, double DiagnosticsRecord::*field) {
    IndicatorSeries s;
    std::vector<double> xs;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double x = records[i].*field;
        if (!std::isfinite(x)) {
            s.finite = false;
            break;
        }
        xs.push_back(x);
        s.max_value = i == 0 ? x : std::max(s.max_value, x);
        s.last_value = x;
        if (i > 0) s.time_integral += 0.5 * (x + records[i - 1].*field) * (records[i].time - records[i - 1].time);
    }
    s.trend = trend_of(xs);
    return s;
}

} // namespace

void MonitorConfig::validate() const {
    if (q < 2 || q % 2 != 0) throw ConfigurationError("monitor.q: must be an even integer >= 2");
    double prev = 1.0;
    for (double e : epsilon_list) {
        if (!(e >= 0.0 && e < 1.0)) throw ConfigurationError("monitor.epsilon_list: entries must lie in [0, 1)");
        if (!(e < prev)) throw ConfigurationError("monitor.epsilon_list: entries must be strictly decreasing");
        prev = e;
    }
    if (!(nu > 0.0)) throw ConfigurationError("physics.nu: must be > 0");
    if (!(c_grow > 0.0)) throw ConfigurationError("monitor.c_grow: must be > 0");
    if (c_sob && !(*c_sob > 0.0)) throw ConfigurationError("monitor.c_sob: must be > 0");
    if (!(c3 >= 0.0)) throw ConfigurationError("monitor.c3: must be >= 0");
    if (!(young_eps1 > 0.0) || !(young_eps2 > 0.0))
        throw ConfigurationError("monitor.young_eps: must be > 0");
}

double relative_margin(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? (rhs - lhs) / scale : 0.0;
}

SubCheck holder_check(const ScalarSample& f, const ScalarSample& g, double p) {
    if (!(p > 1.0)) throw ContractViolation("Hoelder exponent must exceed 1");
    const double pc = p / (p - 1.0);
    const double lhs = integrate(hadamard(f, g).map([](double x) { return std::abs(x); }));
    const double nf = integrate(f.map([p](double x) { return std::pow(std::abs(x), p); }));
    const double ng = integrate(g.map([pc](double x) { return std::pow(std::abs(x), pc); }));
    const double rhs = std::pow(nf, 1.0 / p) * std::pow(ng, 1.0 / pc);
    return {"holder", lhs, rhs, relative_margin(lhs, rhs)};
}

double d_of_t(const VelocityState& v, const MonitorConfig& m) {
    const ExponentSet& e = m.exponents;
    const auto& ur = v.u_rho;
    const double mass = integral(v.grid(), [&](std::size_t i, double r) {
        const double n = negative_part(ur[i]);
        return n > 0.0 ? std::pow(n, e.alpha) * std::pow(r, e.beta) : 0.0;
    });
    return static_cast<double>(m.q) + m.c_grow * (mass > 0.0 ? std::pow(mass, e.theta) : 0.0);
}

double transport_cancellation(const VelocityState& v, int q) {
    const PaddedField fq =
        PaddedField(v.u_phi, Parity::odd, WallMode::no_slip).map([q](double x) { return ipow(x, q); });
    const ScalarSample dr = d_rho(fq);
    const ScalarSample dz = d_z(fq);
    return integral(v.grid(), [&](std::size_t i, double) { return v.u_rho[i] * dr[i] + v.u_z[i] * dz[i]; });
}

double transport_cancellation_scale(const VelocityState& v, int q) {
    const PaddedField fq =
        PaddedField(v.u_phi, Parity::odd, WallMode::no_slip).map([q](double x) { return ipow(x, q); });
    const ScalarSample dr = d_rho(fq);
    const ScalarSample dz = d_z(fq);
    const double umax = std::max({v.u_rho.max_abs(), v.u_phi.max_abs(), v.u_z.max_abs()});
    return umax * integral(v.grid(), [&](std::size_t i, double) { return std::abs(dr[i]) + std::abs(dz[i]); });
}

std::vector<SubCheck> holder_young_subchecks(const VelocityState& v, const ForcingFields& f,
                                             const MonitorConfig& m) {
    const GridHandle& g = v.grid();
    const ExponentSet& e = m.exponents;
    const int q = m.q;
    const double p = e.p_hold;
    const double s = e.s;
    const double pc = p / (p - 1.0);
    const double e1 = m.young_eps1;
    const double e2 = m.young_eps2;
    const double nu = m.nu;
    const auto& u = v.u_phi;
    const auto& ur = v.u_rho;
    const auto& h = f.h_phi;

    const SwirlTerms t = swirl_terms(v, f, m);
    const double x = integral(g, [&](std::size_t i, double r) {
        const double n = negative_part(ur[i]);
        return n > 0.0 ? std::pow(n, pc) * ipow(u[i], q) * std::pow(r, (2.0 - p) / (p - 1.0)) : 0.0;
    });
    const double mass = integral(g, [&](std::size_t i, double r) {
        const double n = negative_part(ur[i]);
        return n > 0.0 ? std::pow(n, e.alpha) * std::pow(r, e.beta) : 0.0;
    });
    const double z3 = integral(g, [&](std::size_t i, double) { return ipow(u[i], 3 * q); });
    const double mid = integral(g, [&](std::size_t i, double) {
        return std::pow(std::abs(u[i]), q * s / (s - 2.0));
    });
    const double young_forcing_lhs =
        integral(g, [&](std::size_t i, double) { return std::abs(h[i]) * std::pow(std::abs(u[i]), q - 1); });

    std::vector<SubCheck> out;
    auto add = [&](std::string name, double lhs, double rhs) {
        out.push_back({std::move(name), lhs, rhs, relative_margin(lhs, rhs)});
    };
    add("young_forcing", young_forcing_lhs,
        std::pow((q - 1.0) / q, q - 1.0) / q * t.h_q + t.y);
    const double holder_p_rhs = std::pow(x, 1.0 / pc) * std::pow(t.s_q, 1.0 / p);
    add("holder_p", t.a_neg, holder_p_rhs);
    add("young_p", holder_p_rhs, (1.0 / pc) * std::pow(e1, 1.0 / (1.0 - p)) * x + (e1 / p) * t.s_q);
    const double mid_norm = std::pow(mid, (s - 2.0) / s);
    add("holder_s", x, std::pow(mass, 2.0 / s) * mid_norm);
    const double interp = std::pow(t.y, (s - 3.0) / s) * std::pow(z3, 1.0 / s);
    add("holder_inner", mid_norm, interp);
    const double young_s_lhs = std::pow(mass, 2.0 / s) * interp;
    add("young_s", young_s_lhs,
        (3.0 / s) * e2 * std::cbrt(z3) +
            ((s - 3.0) / s) * std::pow(e2, 3.0 / (3.0 - s)) * std::pow(mass, 2.0 / (s - 3.0)) * t.y);
    const double k1 = (1.0 / pc) * std::pow(e1, 1.0 / (1.0 - p));
    add("chain_u", t.a_neg,
        k1 * (3.0 / s) * e2 * std::cbrt(z3) +
            k1 * ((s - 3.0) / s) * std::pow(e2, 3.0 / (3.0 - s)) * std::pow(mass, 2.0 / (s - 3.0)) * t.y +
            (e1 / p) * t.s_q);

    const ScalarSample w = curl_axisym(v, WallMode::no_slip).w_phi;
    const ScalarSample dzw = d_z(PaddedField(w, Parity::odd, WallMode::extrapolate));
    for (double eps : m.epsilon_list) {
        std::ostringstream name;
        name << "young_step2_eps_" << eps;
        const double lhs = integral(g, [&](std::size_t i, double r) {
            return u[i] * u[i] * std::abs(dzw[i]) / std::pow(r, 3.0 - eps);
        });
        const double a = integral(g, [&](std::size_t i, double r) { return dzw[i] * dzw[i] / std::pow(r, 2.0 - eps); });
        const double b = integral(g, [&](std::size_t i, double r) { return ipow(u[i], 4) / std::pow(r, 4.0 - eps); });
        add(name.str(), lhs, 0.5 * nu * a + b / (2.0 * nu));
    }
    const double s3_lhs =
        integral(g, [&](std::size_t i, double r) { return std::abs(h[i] * ipow(u[i], 3)) / (r * r); });
    const double q4 = integral(g, [&](std::size_t i, double r) { return ipow(u[i], 4) / ipow(r, 4); });
    const double h4 = integral(g, [&](std::size_t i, double r) { return ipow(r, 4) * ipow(h[i], 4); });
    add("young_step3", s3_lhs, 0.25 * nu * q4 + 27.0 / (4.0 * nu * nu * nu) * h4);
    return out;
}

SwirlBudget swirl_lq_budget(const VelocityState& prev, const VelocityState& next,
                            const ForcingFields& f_prev, const ForcingFields& f_next,
                            const MonitorConfig& m) {
    const double dt = step_dt(prev, next);
    const double q = m.q;
    const double nu = m.nu;
    const SwirlTerms a = swirl_terms(prev, f_prev, m);
    const SwirlTerms b = swirl_terms(next, f_next, m);
    const double dy = (b.y - a.y) / dt;

    SwirlBudget out;
    out.identity_p_residual = relative_residual(
        {dy / q, avg(a.a_signed, b.a_signed), nu * (q - 1.0) / (0.25 * q * q) * avg(a.d_q, b.d_q),
         nu * avg(a.s_q, b.s_q)},
        avg(a.forcing, b.forcing));
    out.margin_r = (q * avg(a.a_neg, b.a_neg) + q * avg(a.y, b.y) + avg(a.h_q, b.h_q)) -
                   (dy + nu * 4.0 * (q - 1.0) / q * avg(a.d_q, b.d_q) + nu * q * avg(a.s_q, b.s_q));
    out.margin_w = (avg(a.h_q, b.h_q) + avg(a.d * a.y, b.d * b.y)) -
                   (dy + nu * 2.0 * (q - 1.0) / q * avg(a.d_q, b.d_q) + 0.5 * nu * q * avg(a.s_q, b.s_q));
    return out;
}

VorticityBudget weighted_vorticity_budget(const VelocityState& prev, const VelocityState& next,
                                          const ForcingFields& f_prev, const ForcingFields& f_next,
                                          const MonitorConfig& m, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw ContractViolation("epsilon must lie in [0, 1)");
    const double dt = step_dt(prev, next);
    const double nu = m.nu;
    const VorticityTerms a = vorticity_terms(prev, f_prev, m, eps);
    const VorticityTerms b = vorticity_terms(next, f_next, m, eps);
    const double de = (b.energy - a.energy) / dt;
    const double lin = nu * 0.5 * eps * (eps - 2.0) * avg(a.w4, b.w4);
    const double common = avg(a.source, b.source) / (2.0 * nu) + 0.5 * eps * avg(a.radial, b.radial) + lin;

    VorticityBudget out;
    out.epsilon = eps;
    out.margin_aa = (0.5 * nu * avg(a.dz_w, b.dz_w) + common + avg(a.forcing_abs, b.forcing_abs)) -
                    (de + nu * avg(a.g_energy, b.g_energy));
    out.margin_ab = (common + m.c3) - (de + 0.25 * nu * avg(a.g_energy, b.g_energy));
    out.c3_required = avg(a.forcing_abs, b.forcing_abs) - 0.25 * nu * avg(a.g_energy, b.g_energy);
    out.identity_z_residual =
        eps > 0.0 ? relative_residual({de, nu * avg(a.grad_w, b.grad_w), avg(a.stretch, b.stretch),
                                       -0.5 * eps * avg(a.radial_signed, b.radial_signed),
                                       -nu * (0.5 * (2.0 - eps) * (2.0 - eps) - 1.0) * avg(a.w4, b.w4)},
                                      avg(a.forcing, b.forcing))
                  : kNaN;
    return out;
}

QuarticBudget quartic_swirl_budget(const VelocityState& prev, const VelocityState& next,
                                   const ForcingFields& f_prev, const ForcingFields& f_next,
                                   const MonitorConfig& m) {
    const double dt = step_dt(prev, next);
    const double nu = m.nu;
    const QuarticTerms a = quartic_terms(prev, f_prev, nu);
    const QuarticTerms b = quartic_terms(next, f_next, nu);
    const double dq = 0.25 * (b.q2 - a.q2) / dt;

    QuarticBudget out;
    out.young_constant_term = avg(a.young, b.young);
    out.identity_ad_residual = relative_residual(
        {dq, 1.5 * avg(a.radial, b.radial), 3.0 * nu * avg(a.grad, b.grad)}, avg(a.forcing, b.forcing));
    out.margin_ae = (1.5 * avg(a.radial_neg, b.radial_neg) + out.young_constant_term) -
                    (dq + 0.75 * nu * avg(a.g4, b.g4) + 0.5 * nu * avg(a.q4, b.q4));
    return out;
}

double calibrate_sobolev(const GridHandle& grid, int q) {
    const double R = grid->rho_max;
    const double k = 2.0 * std::numbers::pi / grid->z_length();
    double best = 0.0;
    for (int m : {1, 2, 3})
        for (auto [l, c] : {std::pair{0, 0.0}, std::pair{1, 0.5}, std::pair{2, 0.5}}) {
            VelocityState v = VelocityState::zeros(grid);
            v.u_phi = ScalarSample::from_function(grid, [&](double r, double z) {
                const double s = r * r / (R * R);
                return r * ipow(1.0 - s, m) * (1.0 + c * std::cos(l * k * (z - grid->z_min)));
            });
            const double z3 = integral(grid, [&](std::size_t i, double) { return ipow(v.u_phi[i], 3 * q); });
            const double dq = swirl_dissipation(v, q);
            if (dq > 0.0) best = std::max(best, std::cbrt(z3) / dq);
        }
    return best;
}

std::vector<double> gronwall_envelope(const std::vector<DiagnosticsRecord>& records,
                                      const MonitorConfig& m) {
    (void)m;
    std::vector<double> env;
    if (records.empty()) return env;
    double hsup = 0.0;
    for (const auto& r : records) hsup = std::max(hsup, r.forcing_q_power);
    const double t0 = records.front().time;
    const double y0 = records.front().swirl_q_power;
    double int_d = 0.0;
    env.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) int_d += 0.5 * (records[i].d_t + records[i - 1].d_t) * (records[i].time - records[i - 1].time);
        const double factor = std::exp(int_d);
        env.push_back(factor * y0 + (records[i].time - t0) * hsup * factor);
    }
    return env;
}

BlowupReport blowup_indicator(const std::vector<DiagnosticsRecord>& records, bool truncated) {
    BlowupReport r;
    r.truncated = truncated;
    if (records.empty()) return r;
    r.window_start = records.front().time;
    r.window_end = records.back().time;
    r.functional = series_of(records, &DiagnosticsRecord::step4_functional);
    r.vort_l2 = series_of(records, &DiagnosticsRecord::vort_l2);
    r.grad_u_l2 = series_of(records, &DiagnosticsRecord::grad_u_l2);
    return r;
}

Monitor::Monitor(MonitorConfig config, GridHandle grid) : config_(std::move(config)), grid_(std::move(grid)) {
    config_.validate();
    if (!config_.c_sob) config_.c_sob = calibrate_sobolev(grid_, config_.q);
}

const DiagnosticsRecord& Monitor::observe(const VelocityState& v, const ForcingFields& f) {
    const MonitorConfig& m = config_;
    const GridHandle& g = v.grid();
    const int q = m.q;
    DiagnosticsRecord r;
    r.time = v.time;

    const SwirlTerms st = swirl_terms(v, f, m);
    r.swirl_q_power = st.y;
    r.swirl_q_norm = std::pow(st.y, 1.0 / q);
    r.forcing_q_power = st.h_q;
    r.d_t = st.d;
    r.diss_swirl_q = st.d_q;
    r.swirl_q_over_rho2 = st.s_q;
    r.kinetic_energy = kinetic_energy(v);
    r.divergence_residual = checkpoint_divergence(v);

    const VorticityFields w = curl_axisym(v, WallMode::no_slip);
    const auto& u = v.u_phi;
    r.weighted_vort_energy = integral(g, [&](std::size_t i, double rho) { return w.w_phi[i] * w.w_phi[i] / (rho * rho); });
    r.quartic_rho2 = integral(g, [&](std::size_t i, double rho) { return ipow(u[i], 4) / (rho * rho); });
    r.quartic_rho4 = integral(g, [&](std::size_t i, double rho) { return ipow(u[i], 4) / ipow(rho, 4); });
    r.diss_vort = face_gradient_energy(PaddedField(w.w_phi, Parity::odd, WallMode::extrapolate).times_rho_power(-1));
    r.diss_quartic = face_gradient_energy(
        PaddedField(u, Parity::odd, WallMode::no_slip).map([](double x) { return x * x; }).times_rho_power(-1));
    r.grad_u_l2 = std::sqrt(velocity_gradient_l2_sq(v));
    r.vort_l2 = std::sqrt(integrate(hadamard(w.w_rho, w.w_rho) + hadamard(w.w_phi, w.w_phi) +
                                    hadamard(w.w_z, w.w_z)));
    r.step4_functional = r.quartic_rho2 / (2.0 * m.nu * m.nu) + 0.5 * r.weighted_vort_energy;
    r.transport_cancellation = transport_cancellation(v, q);
    const double tscale = transport_cancellation_scale(v, q);
    r.transport_relative = tscale > 0.0 ? std::abs(r.transport_cancellation) / tscale : 0.0;
    const double z3 = integral(g, [&](std::size_t i, double) { return ipow(u[i], 3 * q); });
    r.sobolev_margin = relative_margin(std::cbrt(z3), *m.c_sob * st.d_q);
    r.subchecks = holder_young_subchecks(v, f, m);

    ScalarSample neg = v.u_rho.map([](double x) { return negative_part(x); });
    if (prev_state_) {
        const double dt = v.time - prev_state_->time;
        r.has_previous = true;
        r.dt = dt;
        r.serrin_running = serrin_accumulate(records_.back().serrin_running, neg, m.exponents.a,
                                             m.exponents.b, m.exponents.gamma, dt);
        r.swirl = swirl_lq_budget(*prev_state_, v, *prev_forcing_, f, m);
        for (double eps : m.epsilon_list)
            r.vorticity.push_back(weighted_vorticity_budget(*prev_state_, v, *prev_forcing_, f, m, eps));
        r.quartic = quartic_swirl_budget(*prev_state_, v, *prev_forcing_, f, m);
        const auto it = std::find_if(r.vorticity.begin(), r.vorticity.end(),
                                     [](const VorticityBudget& b) { return b.epsilon == 0.0; });
        r.margin_step4 = 2.0 / (m.nu * m.nu) * r.quartic.margin_ae + (it != r.vorticity.end() ? it->margin_ab : kNaN);
    } else {
        r.dt = kNaN;
        r.serrin_running = 0.0;
        r.swirl = {kNaN, kNaN, kNaN};
        for (double eps : m.epsilon_list) r.vorticity.push_back({eps, kNaN, kNaN, kNaN, kNaN});
        r.quartic = {kNaN, kNaN, kNaN};
        r.margin_step4 = kNaN;
    }
    prev_state_ = v;
    prev_forcing_ = f;
    records_.push_back(std::move(r));
    return records_.back();
}

void Monitor::finalize() {
    const std::vector<double> env = gronwall_envelope(records_, config_);
    for (std::size_t i = 0; i < records_.size(); ++i) records_[i].gronwall_envelope = env[i];
}

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::report_only: return "REPORT-ONLY";
    }
    return "?";
}

std::vector<CheckResult> evaluate_checks(const std::vector<DiagnosticsRecord>& records,
                                         const MonitorConfig& m, double h) {
    std::vector<CheckResult> out;
    if (records.empty()) return out;
    const MonitorTolerances& tol = m.tol;
    auto asserted = [&](std::string name, double worst, double tolerance, bool ok) {
        out.push_back({std::move(name), worst, tolerance, ok ? CheckStatus::pass : CheckStatus::fail});
    };
    auto reported = [&](std::string name, double worst) {
        out.push_back({std::move(name), worst, kNaN, CheckStatus::report_only});
    };
    auto min_over = [&](auto&& get) {
        double w = std::numeric_limits<double>::infinity();
        for (const auto& r : records)
            if (r.has_previous) w = std::min(w, get(r));
        return w;
    };
    auto max_abs_over = [&](auto&& get) {
        double w = 0.0;
        for (const auto& r : records)
            if (r.has_previous) w = std::max(w, std::abs(get(r)));
        return w;
    };

    // Hoelder / Young sub-steps, every checkpoint
    for (std::size_t c = 0; c < records.front().subchecks.size(); ++c) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& r : records) worst = std::min(worst, r.subchecks[c].margin);
        asserted("subcheck_" + records.front().subchecks[c].name, worst, -tol.holder, worst >= -tol.holder);
    }

    double d_min = std::numeric_limits<double>::infinity();
    for (const auto& r : records) d_min = std::min(d_min, r.d_t - m.q);
    asserted("d_of_t_at_least_q", d_min, 0.0, d_min >= 0.0);

    bool serrin_ok = true;
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].serrin_running < records[i - 1].serrin_running) serrin_ok = false;
    asserted("serrin_nondecreasing", records.back().serrin_running, 0.0, serrin_ok);

    double div_max = 0.0;
    for (const auto& r : records) div_max = std::max(div_max, r.divergence_residual);
    asserted("divergence_invariant", div_max, tol.divergence, div_max <= tol.divergence);

    double tr_max = 0.0;
    for (const auto& r : records) tr_max = std::max(tr_max, r.transport_relative);
    const double tr_band = tol.identity_coeff * h * h;
    asserted("transport_cancellation", tr_max, tr_band, tr_max <= tr_band);

    if (records.size() > 1) {
        double dt_max = 0.0;
        for (const auto& r : records)
            if (r.has_previous) dt_max = std::max(dt_max, r.dt);
        const double band = tol.identity_coeff * (dt_max + h * h);
        const double p_res = max_abs_over([](const DiagnosticsRecord& r) { return r.swirl.identity_p_residual; });
        asserted("identity_swirl_lq", p_res, band, p_res <= band);
        const double ad_res = max_abs_over([](const DiagnosticsRecord& r) { return r.quartic.identity_ad_residual; });
        asserted("identity_quartic_swirl", ad_res, band, ad_res <= band);

        const double w_min = min_over([](const DiagnosticsRecord& r) { return r.swirl.margin_w; });
        bool dominated = true;
        double env_worst = std::numeric_limits<double>::infinity();
        for (const auto& r : records) {
            const double slack = relative_margin(r.swirl_q_power * (1.0 - tol.gronwall), r.gronwall_envelope);
            env_worst = std::min(env_worst, slack);
            if (r.gronwall_envelope < r.swirl_q_power * (1.0 - tol.gronwall)) dominated = false;
        }
        if (w_min >= 0.0)
            asserted("gronwall_dominance", env_worst, 0.0, dominated);
        else
            reported("gronwall_dominance", env_worst);

        reported("swirl_growth_margin", w_min);
        reported("swirl_young_margin", min_over([](const DiagnosticsRecord& r) { return r.swirl.margin_r; }));
        for (std::size_t e = 0; e < m.epsilon_list.size(); ++e) {
            std::ostringstream tag;
            tag << m.epsilon_list[e];
            reported("vorticity_margin_eps_" + tag.str(),
                     min_over([e](const DiagnosticsRecord& r) { return r.vorticity[e].margin_ab; }));
            reported("vorticity_margin_constant_free_eps_" + tag.str(),
                     min_over([e](const DiagnosticsRecord& r) { return r.vorticity[e].margin_aa; }));
            if (m.epsilon_list[e] > 0.0)
                reported("identity_vorticity_eps_" + tag.str(),
                         max_abs_over([e](const DiagnosticsRecord& r) { return r.vorticity[e].identity_z_residual; }));
        }
        reported("c3_required", -min_over([](const DiagnosticsRecord& r) {
                     double worst = std::numeric_limits<double>::infinity();
                     for (const auto& b : r.vorticity) worst = std::min(worst, -b.c3_required);
                     return worst;
                 }));
        reported("quartic_swirl_margin", min_over([](const DiagnosticsRecord& r) { return r.quartic.margin_ae; }));
        reported("step4_margin", min_over([](const DiagnosticsRecord& r) { return r.margin_step4; }));
    }
    double sob = std::numeric_limits<double>::infinity();
    for (const auto& r : records) sob = std::min(sob, r.sobolev_margin);
    reported("sobolev_margin", sob);
    return out;
}

} // namespace axswirl
