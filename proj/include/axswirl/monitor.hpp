#pragma once

#include "axswirl/exponents.hpp"
#include "axswirl/fields.hpp"

#include <optional>
#include <string>
#include <vector>

namespace axswirl {

struct MonitorTolerances {
    double holder = 1e-12;         // relative, discrete Hoelder/Young sub-steps
    double identity_coeff = 50.0;  // identity residual band C * (dt + h^2), relative
    double divergence = 1e-8;      // checkpoint divergence residual
    double gronwall = 1e-6;        // envelope >= Y (1 - tol)
};

struct MonitorConfig {
    int q = 4;  // even, >= 2
    std::vector<double> epsilon_list{0.5, 0.25, 0.1, 0.0};
    ExponentSet exponents = derive_exponents(6.0, 4.0, 0.0);
    double nu = 0.05;
    double c_grow = 1.0;
    /// Sobolev constant for ||u||_{3q}^q <= c int |grad u^{q/2}|^2;
    /// calibrated on a probe family when empty.
    std::optional<double> c_sob;
    double c3 = 0.0;          // constant closing the Step-2 forcing estimate
    double young_eps1 = 1.0;  // free parameters of the two Young steps
    double young_eps2 = 1.0;
    MonitorTolerances tol;

    /// Throws ConfigurationError: q odd or < 2, eps outside [0,1) or not
    /// decreasing, non-positive nu / c_grow.
    void validate() const;
};

/// One inequality evaluated on a single checkpoint. margin is relative:
/// (rhs - lhs) / max(|lhs|, |rhs|), 0 when both vanish.
struct SubCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

double relative_margin(double lhs, double rhs);

/// int |f g| <= (int |f|^p)^(1/p) (int |g|^p')^(1/p'), p' = p/(p-1).
SubCheck holder_check(const ScalarSample& f, const ScalarSample& g, double p);

struct SwirlBudget {
    double margin_w = 0.0;            // growth inequality with d(t), absolute
    double margin_r = 0.0;            // before the Hoelder chain, absolute
    double identity_p_residual = 0.0; // relative
};

struct VorticityBudget {
    double epsilon = 0.0;
    double margin_ab = 0.0;           // uses c3
    double margin_aa = 0.0;           // constant free, forcing term kept
    double identity_z_residual = 0.0; // relative, eps > 0 only (NaN at 0)
    double c3_required = 0.0;         // forcing term minus the absorbed dissipation
};

struct QuarticBudget {
    double margin_ae = 0.0;
    double identity_ad_residual = 0.0;  // relative
    double young_constant_term = 0.0;   // 27/(4 nu^3) int rho^4 h_phi^4
};

/// d(t) = q + c_grow (int (u_rho^-)^alpha rho^beta dx)^theta.
double d_of_t(const VelocityState& v, const MonitorConfig& m);

/// int u_rho d_rho(u_phi^q) + u_z d_z(u_phi^q) dx; vanishes for
/// divergence-free fields in the continuum.
double transport_cancellation(const VelocityState& v, int q);
/// max|u| int |d_rho(u_phi^q)| + |d_z(u_phi^q)| dx, an upper bound of the
/// integral above used for relative scaling. Stays O(1) for swirl-only flow.
double transport_cancellation_scale(const VelocityState& v, int q);

/// Every Hoelder/Young step used to bound int u_rho^- u_phi^q / rho, plus the
/// Young steps for the forcing terms; exact inequalities for quadrature sums.
std::vector<SubCheck> holder_young_subchecks(const VelocityState& v, const ForcingFields& f,
                                             const MonitorConfig& m);

SwirlBudget swirl_lq_budget(const VelocityState& prev, const VelocityState& next,
                            const ForcingFields& f_prev, const ForcingFields& f_next,
                            const MonitorConfig& m);

VorticityBudget weighted_vorticity_budget(const VelocityState& prev, const VelocityState& next,
                                          const ForcingFields& f_prev, const ForcingFields& f_next,
                                          const MonitorConfig& m, double eps);

QuarticBudget quartic_swirl_budget(const VelocityState& prev, const VelocityState& next,
                                   const ForcingFields& f_prev, const ForcingFields& f_next,
                                   const MonitorConfig& m);

/// max over probe fields of ||u||_{3q}^q / int |grad u^{q/2}|^2.
double calibrate_sobolev(const GridHandle& grid, int q);

struct DiagnosticsRecord {
    double time = 0.0;
    bool has_previous = false;

    double swirl_q_norm = 0.0;
    double swirl_q_power = 0.0;    // ||u_phi||_q^q
    double forcing_q_power = 0.0;  // ||h_phi||_q^q
    double d_t = 0.0;
    double serrin_running = 0.0;
    double gronwall_envelope = 0.0;

    double kinetic_energy = 0.0;
    double divergence_residual = 0.0;
    double weighted_vort_energy = 0.0;  // int omega_phi^2 / rho^2
    double quartic_rho2 = 0.0;          // int u_phi^4 / rho^2
    double quartic_rho4 = 0.0;          // int u_phi^4 / rho^4
    double diss_swirl_q = 0.0;          // int |grad u_phi^{q/2}|^2
    double swirl_q_over_rho2 = 0.0;     // int u_phi^q / rho^2
    double diss_vort = 0.0;             // int |grad (omega_phi/rho)|^2
    double diss_quartic = 0.0;          // int |grad (u_phi^2/rho)|^2
    double grad_u_l2 = 0.0;
    double vort_l2 = 0.0;
    double step4_functional = 0.0;      // u^4/rho^2 /(2 nu^2) + omega_phi^2/rho^2 / 2
    double transport_cancellation = 0.0;
    double transport_relative = 0.0;
    double sobolev_margin = 0.0;

    // pair quantities; NaN on the first checkpoint
    SwirlBudget swirl;
    std::vector<VorticityBudget> vorticity;  // one per epsilon_list entry
    QuarticBudget quartic;
    double margin_step4 = 0.0;
    double dt = 0.0;

    std::vector<SubCheck> subchecks;
};

/// exp(int d) ||u_phi(t_start)||_q^q + (t - t_start) sup_s ||h_phi(s)||_q^q exp(int d),
/// with int d by the trapezoid rule over the checkpoints.
std::vector<double> gronwall_envelope(const std::vector<DiagnosticsRecord>& records,
                                      const MonitorConfig& m);

struct IndicatorSeries {
    double max_value = 0.0;
    double last_value = 0.0;
    double time_integral = 0.0;
    bool finite = true;
    std::string trend;  // increasing, decreasing, constant, non-monotone
};

struct BlowupReport {
    double window_start = 0.0;
    double window_end = 0.0;
    bool truncated = false;
    IndicatorSeries functional;  // Step-4 functional F(t)
    IndicatorSeries vort_l2;
    IndicatorSeries grad_u_l2;
};

BlowupReport blowup_indicator(const std::vector<DiagnosticsRecord>& records, bool truncated = false);

/// Collates records in time order; keeps the previous checkpoint for the
/// pair budgets.
class Monitor {
public:
    Monitor(MonitorConfig config, GridHandle grid);

    const DiagnosticsRecord& observe(const VelocityState& state, const ForcingFields& forcing);
    /// Fills the Groenwall envelope column.
    void finalize();

    const std::vector<DiagnosticsRecord>& records() const noexcept { return records_; }
    const MonitorConfig& config() const noexcept { return config_; }
    double c_sob() const noexcept { return *config_.c_sob; }

private:
    MonitorConfig config_;
    GridHandle grid_;
    std::optional<VelocityState> prev_state_;
    std::optional<ForcingFields> prev_forcing_;
    std::vector<DiagnosticsRecord> records_;
};

enum class CheckStatus { pass, fail, report_only };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    double worst = 0.0;      // worst margin / residual over the run
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::report_only;
};

/// Asserted: Hoelder/Young sub-steps, d(t) >= q, Serrin accumulator
/// monotonicity, divergence invariant, constant-free identities within
/// C (dt + h^2), Groenwall dominance when all growth margins are >= 0.
/// Report-only: every margin that depends on c_grow, c_sob or c3.
std::vector<CheckResult> evaluate_checks(const std::vector<DiagnosticsRecord>& records,
                                         const MonitorConfig& m, double grid_spacing);

} // namespace axswirl
