// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "axswirl/checkpoint_io.hpp"
#include "axswirl/errors.hpp"
#include "axswirl/exponents.hpp"
#include "axswirl/mms.hpp"
#include "axswirl/monitor.hpp"
#include "axswirl/operators.hpp"
#include "axswirl/projection.hpp"
#include "axswirl/scenario.hpp"
#include "axswirl/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace axswirl;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string sci(double x) { return fmt("%.3e", x); }

double l2(const ScalarSample& f) { return std::sqrt(integrate(hadamard(f, f))); }

double velocity_l2(const VelocityState& v) {
    return std::sqrt(integrate(hadamard(v.u_rho, v.u_rho) + hadamard(v.u_phi, v.u_phi) + hadamard(v.u_z, v.u_z)));
}

SimConfig swirl_run_config(int n, int steps, double viscous_cfl = 0.1) {
    SimConfig cfg;
    cfg.n_rho = cfg.n_z = n;
    const double h = cfg.rho_max / n;
    cfg.dt = viscous_cfl * h * h / cfg.nu;
    cfg.t_end = steps * cfg.dt;
    cfg.initial.kind = InitialSpec::Kind::taylor_vortex_swirl;
    return cfg;
}

std::vector<DiagnosticsRecord> monitor_trajectory(const Trajectory& t, MonitorConfig m) {
    m.nu = t.config.nu;
    const GridHandle g = t.checkpoints.front().grid();
    Monitor mon(m, g);
    const Solver solver(t.config, g);
    for (const auto& s : t.checkpoints) mon.observe(s, solver.forcing()(s.time));
    mon.finalize();
    return mon.records();
}

// 1 -------------------------------------------------------------------------
Outcome exponent_identities() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ua(1.5001, 100.0), ub(1.0001, 100.0), u01(0.0, 1.0);
    double worst_alpha = 0.0, worst_theta = 0.0, worst_weight = 0.0, worst_eq = 0.0;
    int tested = 0, equalities = 0;
    while (tested < 100000) {
        const double a = ua(rng), b = ub(rng);
        if (!(3.0 / a + 2.0 / b < 2.0)) continue;
        const double bound = 1.0 - 3.0 / a - 2.0 / b;
        const bool equality = tested % 4 == 0;
        const double gamma = equality ? bound : bound - 3.0 * u01(rng);
        const ExponentSet e = derive_exponents(a, b, gamma);
        const double p = e.p_hold, s = e.s;
        worst_alpha = std::max(worst_alpha, std::abs(s * p / (2.0 * (p - 1.0)) - a) / a);
        worst_theta = std::max(worst_theta, std::abs(2.0 / (s - 3.0) - b / a));
        const double weight = (2.0 - p) * s / (2.0 * (p - 1.0));
        const double scale = std::max(1.0, std::abs(a * gamma));
        worst_weight = std::max(worst_weight, (a * gamma - weight) / scale);
        if (equality && std::abs(3.0 / a + 2.0 / b + gamma - 1.0) <= 1e-15) {
            worst_eq = std::max(worst_eq, std::abs(weight - a * gamma) / scale);
            ++equalities;
        }
        ++tested;
    }
    // b = infinity branch
    double worst_inf = 0.0;
    std::uniform_real_distribution<double> ua2(1.6, 100.0), ud(0.001, 0.999);
    for (int i = 0; i < 20000; ++i) {
        const double a = ua2(rng);
        const double delta = ud(rng) * (2.0 * a - 3.0) / a;
        const double gamma = 1.0 - delta - 3.0 / a;
        const ExponentSet e = derive_exponents(a, INFINITY, gamma);
        const double p = e.p_hold, s = e.s;
        const double weight = (2.0 - p) * s / (2.0 * (p - 1.0));
        worst_inf = std::max({worst_inf, std::abs(s * p / (2.0 * (p - 1.0)) - a) / a,
                              std::abs(weight - a * gamma) / std::max(1.0, std::abs(a * gamma))});
        if (!(p > 1.0 && s > 3.0)) worst_inf = INFINITY;
    }
    const bool pass = worst_alpha <= 1e-9 && worst_theta <= 1e-9 && worst_weight <= 1e-9 && worst_eq <= 1e-9 &&
                      worst_inf <= 1e-9 && equalities > 0;
    return {pass, std::to_string(tested) + " triples: alpha " + sci(worst_alpha) + ", theta " + sci(worst_theta) +
                      ", weight " + sci(worst_weight) + ", equality " + sci(worst_eq) + " (" +
                      std::to_string(equalities) + "), b=inf " + sci(worst_inf)};
}

// 2 -------------------------------------------------------------------------
Outcome pair_conjugacy() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ua(1.5001, 100.0), ub(1.0001, 100.0), u01(0.0, 1.0);
    double worst = 0.0;
    int sets = 0;
    while (sets < 20000) {
        const double a = ua(rng);
        const bool inf = sets % 5 == 0;
        const double b = inf ? INFINITY : ub(rng);
        double gamma;
        if (inf) {
            if (!(a > 1.5)) continue;
            gamma = 1.0 - u01(rng) * (2.0 * a - 3.0) / a * 0.998 - 0.001 * (2.0 * a - 3.0) / a - 3.0 / a;
        } else {
            if (!(3.0 / a + 2.0 / b < 2.0)) continue;
            gamma = 1.0 - 3.0 / a - 2.0 / b - u01(rng);
        }
        for (const auto& p : holder_young_pairs(derive_exponents(a, b, gamma)))
            worst = std::max(worst, std::abs(1.0 / p.first + 1.0 / p.second - 1.0));
        ++sets;
    }
    return {worst <= 1e-12, std::to_string(sets) + " exponent sets, max |1/p+1/p'-1| = " + sci(worst)};
}

// 3 -------------------------------------------------------------------------
Outcome quadrature() {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> un(2, 200);
    std::uniform_real_distribution<double> ur(0.1, 5.0);
    double worst_volume = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double R = ur(rng), L = ur(rng);
        const GridHandle g = build_grid(un(rng), un(rng), R, -0.5 * L, 0.5 * L);
        const double vol = integrate(ScalarSample::from_function(g, [](double, double) { return 1.0; }));
        worst_volume = std::max(worst_volume, std::abs(vol - kPi * R * R * L) / (kPi * R * R * L));
    }
    const GridHandle unit = build_grid(17, 9, 2.0, 0.0, 2.0);
    const double vol4 = integrate(ScalarSample::from_function(unit, [](double, double) { return 1.0; }));
    worst_volume = std::max(worst_volume, std::abs(vol4 - 8.0 * kPi) / (8.0 * kPi));

    std::vector<double> errs;
    for (int n : {8, 16, 32, 64}) {
        const GridHandle g = build_grid(n, n, 2.0, 0.0, 2.0);
        const double v = integrate(ScalarSample::from_function(g, [](double r, double) { return r; }));
        errs.push_back(std::abs(v - 2.0 * kPi * 8.0 * 2.0 / 3.0));
    }
    const auto orders = observed_orders(errs);
    const double lo = *std::min_element(orders.begin(), orders.end());
    const double hi = *std::max_element(orders.begin(), orders.end());
    return {worst_volume <= 1e-12 && lo >= 1.9 && hi <= 2.1,
            "volume rel err " + sci(worst_volume) + " over 201 grids; int rho orders " + fmt("%.4f", lo) + ".." +
                fmt("%.4f", hi)};
}

// 4 -------------------------------------------------------------------------
Outcome operators() {
    const GridHandle g = build_grid(24, 16, 2.0, 0.0, 2.0);
    VelocityState rigid = VelocityState::zeros(g);
    rigid.u_phi = ScalarSample::from_function(g, [](double r, double) { return r; });
    const double wz = (curl_axisym(rigid, WallMode::extrapolate).w_z -
                       ScalarSample::from_function(g, [](double, double) { return 2.0; }))
                          .max_abs();
    VelocityState radial = VelocityState::zeros(g);
    radial.u_rho = ScalarSample::from_function(g, [](double r, double) { return r; });
    const double dv = (divergence(radial, WallMode::extrapolate) -
                       ScalarSample::from_function(g, [](double, double) { return 2.0; }))
                          .max_abs();

    double curl_order = INFINITY, div_order = INFINITY;
    for (SolutionKind kind : {SolutionKind::decaying_swirl, SolutionKind::taylor_vortex_swirl}) {
        const ConvergenceReport r = operator_convergence(kind, {32, 64, 128});
        if (!r.monotone) curl_order = -INFINITY;
        curl_order = std::min(curl_order, r.min_order);
        for (const auto& row : r.rows)
            if (row.field == "divergence" && row.order) div_order = std::min(div_order, *row.order);
    }
    return {wz <= 1e-12 && dv <= 1e-12 && curl_order >= 1.9 && div_order >= 1.9,
            "omega_z err " + sci(wz) + ", div err " + sci(dv) + ", curl order " + fmt("%.3f", curl_order) +
                ", div order " + fmt("%.3f", div_order)};
}

// 5 -------------------------------------------------------------------------
Outcome projection() {
    const GridHandle g = build_grid(32, 32, 2.0, 0.0, 2.0);
    const Projector proj(g);
    std::mt19937 rng(5);
    std::normal_distribution<double> d;
    double worst_div = 0.0, worst_idem = 0.0, worst_grad = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        VelocityState u = VelocityState::zeros(g);
        for (ScalarSample* f : {&u.u_rho, &u.u_phi, &u.u_z})
            for (auto& v : f->values()) v = d(rng);
        const ProjectionResult p1 = proj.project(u);
        worst_div = std::max(worst_div, p1.relative_divergence);
        const ProjectionResult p2 = proj.project(p1.state);
        VelocityState diff = p2.state;
        diff.u_rho = diff.u_rho - p1.state.u_rho;
        diff.u_phi = diff.u_phi - p1.state.u_phi;
        diff.u_z = diff.u_z - p1.state.u_z;
        worst_idem = std::max(worst_idem, velocity_l2(diff) / velocity_l2(p1.state));

        ScalarSample phi(g);
        for (auto& v : phi.values()) v = d(rng);
        const VelocityState grad = proj.gradient(phi);
        worst_grad = std::max(worst_grad, velocity_l2(proj.project(grad).state) / velocity_l2(grad));
    }
    return {worst_div <= 1e-8 && worst_idem <= 1e-12 && worst_grad <= 1e-8,
            "relative divergence " + sci(worst_div) + ", idempotence " + sci(worst_idem) + ", gradient residue " +
                sci(worst_grad)};
}

// 6 -------------------------------------------------------------------------
Outcome energy_audit() {
    const SimConfig cfg = swirl_run_config(32, 200);
    const Trajectory t = run(cfg);
    if (t.status != Trajectory::Status::completed || t.checkpoints.size() != 201)
        return {false, "run did not complete: " + t.message};
    double worst = -INFINITY;
    for (std::size_t i = 1; i < t.checkpoints.size(); ++i) {
        const double e0 = kinetic_energy(t.checkpoints[i - 1]), e1 = kinetic_energy(t.checkpoints[i]);
        worst = std::max(worst, (e1 - e0) / e0);
    }
    return {worst <= 1e-10, "200 steps, max relative per-step energy change " + sci(worst) + ", E(T)/E(0) = " +
                                fmt("%.6f", kinetic_energy(t.checkpoints.back()) / kinetic_energy(t.checkpoints.front()))};
}

// 7 -------------------------------------------------------------------------
Outcome mms() {
    const ConvergenceReport r = solver_convergence(SolutionKind::decaying_swirl, {32, 64, 128});
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : r.rows)
        if (row.field == r.gated_field && row.order) {
            lo = std::min(lo, *row.order);
            hi = std::max(hi, *row.order);
        }
    const ConvergenceReport neg = negative_control_convergence({32, 64, 128});
    const bool detected = neg.min_order < 1.9;
    const bool first_order = neg.min_order >= 0.8 && neg.min_order <= 1.2;
    return {r.monotone && lo >= 1.8 && hi <= 2.2 && detected && first_order,
            "decaying_swirl orders " + fmt("%.3f", lo) + ".." + fmt("%.3f", hi) + "; negative control order " +
                fmt("%.3f", neg.min_order) + (detected ? " (rejected)" : " (not rejected)")};
}

// 8 -------------------------------------------------------------------------
// One constant must bound |T| <= C h^2 on every level: C_n = |T_n| / h_n^2 may
// not grow under refinement.
Outcome transport() {
    std::vector<double> cs, values, rel;
    for (int n : {32, 64, 128}) {
        const GridHandle g = build_grid(n, n, 2.0, 0.0, 2.0);
        const VelocityState s = sample_state(make_solution(SolutionKind::taylor_vortex_swirl), g, 0.0);
        const VelocityState p = Projector(g).project(s).state;
        const double h = g->min_spacing();
        const double v = std::abs(transport_cancellation(p, 4));
        values.push_back(v);
        rel.push_back(v / transport_cancellation_scale(p, 4));
        cs.push_back(v / (h * h));
    }
    const bool rounding = *std::max_element(rel.begin(), rel.end()) <= 1e-12;
    const bool bounded = cs[1] <= 1.1 * cs[0] && cs[2] <= 1.1 * cs[1];
    return {rounding || bounded, "|T| = " + sci(values[0]) + ", " + sci(values[1]) + ", " + sci(values[2]) +
                                     "; C_n = " + sci(cs[0]) + ", " + sci(cs[1]) + ", " + sci(cs[2]) +
                                     (rounding ? " (rounding level)" : "") + "; relative " + sci(rel[2])};
}

// 9 -------------------------------------------------------------------------
Outcome subchecks() {
    std::vector<SimConfig> cfgs;
    cfgs.push_back(swirl_run_config(24, 40));
    SimConfig forced = swirl_run_config(24, 40);
    forced.forcing.kind = ForcingSpec::Kind::manufactured;
    cfgs.push_back(forced);
    SimConfig profile = swirl_run_config(20, 60);
    profile.forcing.kind = ForcingSpec::Kind::swirl_profile;
    profile.forcing.amplitude = 2.0;
    cfgs.push_back(profile);
    SimConfig decay = swirl_run_config(20, 30);
    decay.initial.kind = InitialSpec::Kind::decaying_swirl;
    cfgs.push_back(decay);

    double worst = INFINITY;
    std::string worst_name;
    std::size_t checkpoints = 0, checks = 0;
    for (int variant = 0; variant < 2; ++variant) {
        MonitorConfig m;
        if (variant == 1) {
            m.exponents = derive_exponents(10.0, 5.0, 0.2);
            m.young_eps1 = 0.3;
            m.young_eps2 = 2.5;
        }
        for (const SimConfig& cfg : cfgs) {
            const Trajectory t = run(cfg);
            if (t.truncated()) return {false, "trajectory truncated: " + t.message};
            for (const auto& r : monitor_trajectory(t, m)) {
                ++checkpoints;
                for (const auto& c : r.subchecks) {
                    ++checks;
                    if (c.margin < worst) {
                        worst = c.margin;
                        worst_name = c.name;
                    }
                }
            }
        }
    }
    return {worst >= -1e-12, std::to_string(checks) + " sub-checks on " + std::to_string(checkpoints) +
                                 " checkpoints, worst relative margin " + sci(worst) + " (" + worst_name + ")"};
}

// 10 ------------------------------------------------------------------------
Outcome d_contract() {
    SimConfig cfg = swirl_run_config(20, 40);
    cfg.initial.kind = InitialSpec::Kind::decaying_swirl;
    cfg.forcing.kind = ForcingSpec::Kind::swirl_profile;
    MonitorConfig m;
    bool exact = true;
    std::size_t checked = 0;
    for (const auto& r : monitor_trajectory(run(cfg), m)) {
        exact = exact && r.d_t == m.q;
        ++checked;
    }
    // non-negative radial fields, divergence not required for d(t)
    const GridHandle g = build_grid(16, 16, 2.0, 0.0, 2.0);
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        VelocityState v = VelocityState::zeros(g);
        for (auto& x : v.u_rho.values()) x = u(rng);
        exact = exact && d_of_t(v, m) == m.q;
        ++checked;
    }

    // constant-in-time negative part f = c: closed form T (c^a |Omega|)^{b/a}
    const double c = 0.7, a = 6.0, b = 4.0;
    const ScalarSample f = ScalarSample::from_function(g, [c](double, double) { return c; });
    double acc = 0.0, t = 0.0;
    std::uniform_real_distribution<double> udt(0.001, 0.02);
    for (int i = 0; i < 300; ++i) {
        const double dt = udt(rng);
        acc = serrin_accumulate(acc, f, a, b, 0.0, dt);
        t += dt;
    }
    const double closed = t * std::pow(std::pow(c, a) * kPi * 4.0 * 2.0, b / a);
    const double rel = std::abs(acc - closed) / closed;
    double sup = 0.0;
    for (int i = 0; i < 10; ++i) sup = serrin_accumulate(sup, f, a, INFINITY, 0.0, 0.01);
    const double sup_closed = std::pow(std::pow(c, a) * 8.0 * kPi, 1.0 / a);
    const double rel_sup = std::abs(sup - sup_closed) / sup_closed;
    return {exact && rel <= 1e-10 && rel_sup <= 1e-10,
            std::string(exact ? "d = q exactly" : "d != q") + " on " + std::to_string(checked) +
                " states; Serrin rel err " + sci(rel) + ", b=inf " + sci(rel_sup)};
}

// 11 ------------------------------------------------------------------------
Outcome gronwall() {
    SimConfig cfg = swirl_run_config(24, 200);
    cfg.initial.kind = InitialSpec::Kind::decaying_swirl;
    cfg.forcing.kind = ForcingSpec::Kind::swirl_profile;
    cfg.forcing.amplitude = 1.0;
    const Trajectory t = run(cfg);
    if (t.truncated() || t.checkpoints.size() != 201) return {false, "run did not complete: " + t.message};
    MonitorConfig m;
    const auto recs = monitor_trajectory(t, m);
    double min_margin = INFINITY, worst = INFINITY;
    for (const auto& r : recs) {
        if (r.has_previous) min_margin = std::min(min_margin, r.swirl.margin_w);
        worst = std::min(worst, r.gronwall_envelope / r.swirl_q_power - (1.0 - m.tol.gronwall));
    }
    return {min_margin >= 0.0 && worst >= 0.0,
            "200 steps, min swirl margin " + sci(min_margin) + ", min envelope/Y - (1 - 1e-6) " + sci(worst)};
}

// 12 ------------------------------------------------------------------------
// Gaps along eps_k = 0.1 / 2^k must shrink, and the jump from the smallest
// eps to 0 must not exceed the geometric tail of the last gap.
bool eps_sequence_converges(const std::vector<double>& m, double& last_gap, double& tail) {
    double prev = INFINITY;
    for (std::size_t e = 0; e + 2 < m.size(); ++e) {
        const double gap = std::abs(m[e] - m[e + 1]);
        if (!(gap < prev)) return false;
        prev = gap;
    }
    last_gap = prev;
    tail = std::abs(m[m.size() - 2] - m.back());
    return tail <= 1.5 * last_gap;
}

Outcome step2_and_step3() {
    SimConfig cfg = swirl_run_config(32, 40);
    cfg.forcing.kind = ForcingSpec::Kind::manufactured;
    MonitorConfig m;
    m.epsilon_list.clear();
    for (int k = 0; k < 8; ++k) m.epsilon_list.push_back(0.1 / (1 << k));
    m.epsilon_list.push_back(0.0);
    const auto recs = monitor_trajectory(run(cfg), m);
    const std::size_t ne = m.epsilon_list.size();
    std::vector<double> mean_ab(ne, 0.0), mean_aa(ne, 0.0);
    int pairs = 0, converged = 0;
    double gap_ab = 0.0, gap_aa = 0.0, tail = 0.0;
    for (const auto& r : recs) {
        if (!r.has_previous) continue;
        ++pairs;
        std::vector<double> ab(ne), aa(ne);
        for (std::size_t e = 0; e < ne; ++e) {
            ab[e] = r.vorticity[e].margin_ab;
            aa[e] = r.vorticity[e].margin_aa;
            mean_ab[e] += ab[e];
            mean_aa[e] += aa[e];
        }
        if (eps_sequence_converges(ab, gap_ab, tail) && eps_sequence_converges(aa, gap_aa, tail)) ++converged;
    }
    const bool eps_ok = converged == pairs && eps_sequence_converges(mean_ab, gap_ab, tail) &&
                        eps_sequence_converges(mean_aa, gap_aa, tail);

    std::vector<double> residuals;
    for (int n : {16, 32, 64}) {
        SimConfig c = swirl_run_config(n, 0);
        c.t_end = 0.1;
        c.forcing.kind = ForcingSpec::Kind::manufactured;
        double worst = 0.0;
        for (const auto& r : monitor_trajectory(run(c), MonitorConfig{}))
            if (r.has_previous) worst = std::max(worst, std::abs(r.quartic.identity_ad_residual));
        residuals.push_back(worst);
    }
    const auto orders = observed_orders(residuals);
    const double lo = *std::min_element(orders.begin(), orders.end());
    return {eps_ok && lo >= 1.0,
            "eps = 0.1/2^k, k < 8, then 0: gaps shrink on " + std::to_string(converged) + "/" +
                std::to_string(pairs) + " steps (mean last gap ab " + sci(gap_ab / pairs) + ", aa " + sci(gap_aa / pairs) +
                "); identity residual " + sci(residuals[0]) + " -> " + sci(residuals[2]) + ", min order " +
                fmt("%.3f", lo)};
}

// 13 ------------------------------------------------------------------------
Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "axswirl_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string text = R"({"schema_version": 1,
      "grid": {"n_rho": 16, "n_z": 16},
      "time": {"t_end": 0.05, "dt": 0.0025},
      "initial": {"kind": "taylor_vortex_swirl"},
      "forcing": {"kind": "manufactured", "solution": "taylor_vortex_swirl"},
      "output": {"directory": "run"}})";
    std::vector<std::string> csvs;
    for (int i = 0; i < 3; ++i) {
        Scenario sc = parse_scenario(text, root, "det");
        sc.output_dir = root / ("run" + std::to_string(i));
        std::ostringstream log;
        run_scenario(sc, log);
        std::ifstream in(sc.output_dir / "diagnostics.csv", std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        csvs.push_back(s.str());
    }
    fs::remove_all(root);
    const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[1] == csvs[2];
    return {same, "3 runs, diagnostics.csv " + std::to_string(csvs[0].size()) + " bytes, fnv1a64 " +
                      hex64(fnv1a64(csvs[0])) + (same ? ", identical" : ", differ")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exponent identities", exponent_identities},
        {"Hoelder/Young pair conjugacy", pair_conjugacy},
        {"quadrature", quadrature},
        {"operator correctness", operators},
        {"projection", projection},
        {"solver energy audit", energy_audit},
        {"MMS convergence", mms},
        {"transport cancellation", transport},
        {"Hoelder/Young sub-step margins", subchecks},
        {"d(t) and Serrin accumulator", d_contract},
        {"Groenwall dominance", gronwall},
        {"Step-2 epsilon sequence and Step-3 identity", step2_and_step3},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%-4s %-46s %s  %s [%.1fs]\n", (std::to_string(i + 1) + ".").c_str(), criteria[i].first.c_str(),
                    o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
