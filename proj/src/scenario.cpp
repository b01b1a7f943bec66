#include "axswirl/scenario.hpp"

#include "axswirl/checkpoint_io.hpp"
#include "axswirl/errors.hpp"

#include <json.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace axswirl {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

// Reads one JSON object, remembering which keys were consumed so that
// unknown keys can be reported with their full path.
class Section {
public:
    Section(const json& node, std::string path) : path_(std::move(path)) {
        if (node.is_null()) return;
        if (!node.is_object()) fail("", "must be an object");
        node_ = &node;
    }

    bool has(const std::string& key) const { return node_ && node_->contains(key) && !(*node_)[key].is_null(); }

    double number(const std::string& key, double fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number()) fail(key, "must be a number");
        const double x = v->get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
        return x;
    }
    std::optional<double> optional_number(const std::string& key) {
        const json* v = take(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail(key, "must be a number or null");
        return v->get<double>();
    }
    int integer(const std::string& key, int fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) fail(key, "must be an integer");
        return v->get<int>();
    }
    bool boolean(const std::string& key, bool fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(key, "must be true or false");
        return v->get<bool>();
    }
    std::string text(const std::string& key, const std::string& fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_string()) fail(key, "must be a string");
        return v->get<std::string>();
    }
    /// Number or the string "inf".
    double exponent(const std::string& key, double fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (v->is_number()) return v->get<double>();
        if (v->is_string()) {
            try {
                return parse_exponent(v->get<std::string>());
            } catch (const ConfigurationError&) {
                fail(key, "must be a number or \"inf\"");
            }
        }
        fail(key, "must be a number or \"inf\"");
    }
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_array() || v->empty()) fail(key, "must be a non-empty array of numbers");
        std::vector<double> out;
        for (const auto& x : *v) {
            if (!x.is_number()) fail(key, "must be a non-empty array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    Section child(const std::string& key) {
        const json* v = take(key);
        static const json null_node;
        return Section(v ? *v : null_node, join(key));
    }
    void finish() const {
        if (!node_) return;
        for (const auto& [key, value] : node_->items())
            if (!seen_.count(key)) fail(key, "unknown field");
    }
    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigurationError(join(key) + ": " + what);
    }
    std::string join(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    const json* take(const std::string& key) {
        seen_.insert(key);
        if (!node_ || !node_->contains(key)) return nullptr;
        const json& v = (*node_)[key];
        return v.is_null() ? nullptr : &v;
    }

    const json* node_ = nullptr;
    std::string path_;
    std::set<std::string> seen_;
};

template <class E>
E pick(Section& s, const std::string& key, const std::string& fallback, const std::map<std::string, E>& table) {
    const std::string name = s.text(key, fallback);
    const auto it = table.find(name);
    if (it == table.end()) {
        std::string allowed;
        for (const auto& [k, v] : table) allowed += (allowed.empty() ? "" : ", ") + k;
        s.fail(key, "must be one of " + allowed);
    }
    return it->second;
}

json exponent_json(double x) {
    if (std::isinf(x)) return "inf";
    return x;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string eps_tag(double eps) {
    std::ostringstream s;
    s << eps;
    return s.str();
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write " + path.string());
}

json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

json series_json(const IndicatorSeries& s) {
    return {{"max", finite_or_null(s.max_value)},
            {"last", finite_or_null(s.last_value)},
            {"time_integral", finite_or_null(s.time_integral)},
            {"finite", s.finite},
            {"trend", s.trend}};
}

} // namespace

fs::path output_root() {
    if (const char* root = std::getenv(kOutputRootVariable); root && *root) return root;
    return fs::current_path();
}

Scenario parse_scenario(const std::string& text, const fs::path& base_dir, const std::string& default_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigurationError(std::string("<root>: invalid JSON: ") + e.what());
    }
    Section root(doc, "");
    if (!root.has("schema_version")) root.fail("schema_version", "required");
    const int version = root.integer("schema_version", 0);
    if (version != kScenarioSchemaVersion)
        root.fail("schema_version", "unsupported version " + std::to_string(version) + " (expected 1)");

    Scenario sc;
    SimConfig& cfg = sc.sim;
    MonitorConfig& mon = sc.monitor;

    Section grid = root.child("grid");
    cfg.n_rho = grid.integer("n_rho", cfg.n_rho);
    cfg.n_z = grid.integer("n_z", cfg.n_z);
    cfg.rho_max = grid.number("rho_max", cfg.rho_max);
    cfg.z_min = grid.number("z_min", cfg.z_min);
    cfg.z_max = grid.number("z_max", cfg.z_max);
    grid.finish();
    if (cfg.n_rho < 3) grid.fail("n_rho", "must be >= 3");
    if (cfg.n_z < 2) grid.fail("n_z", "must be >= 2");
    if (!(cfg.rho_max > 0.0)) grid.fail("rho_max", "must be > 0");
    if (!(cfg.z_max > cfg.z_min)) grid.fail("z_max", "must exceed z_min");

    Section physics = root.child("physics");
    cfg.nu = physics.number("nu", cfg.nu);
    physics.finish();
    if (!(cfg.nu > 0.0)) physics.fail("nu", "must be > 0");
    mon.nu = cfg.nu;

    Section time = root.child("time");
    cfg.t_start = time.number("t_start", cfg.t_start);
    cfg.t_end = time.number("t_end", cfg.t_end);
    cfg.dt = time.number("dt", cfg.dt);
    cfg.checkpoint_stride = time.integer("checkpoint_stride", cfg.checkpoint_stride);
    time.finish();
    if (!(cfg.t_end > cfg.t_start)) time.fail("t_end", "must exceed t_start");
    if (!(cfg.dt > 0.0)) time.fail("dt", "must be > 0");
    if (cfg.checkpoint_stride < 1) time.fail("checkpoint_stride", "must be >= 1");

    Section initial = root.child("initial");
    cfg.initial.kind = pick<InitialSpec::Kind>(initial, "kind", "zero",
                                               {{"zero", InitialSpec::Kind::zero},
                                                {"rigid_rotation", InitialSpec::Kind::rigid_rotation},
                                                {"decaying_swirl", InitialSpec::Kind::decaying_swirl},
                                                {"taylor_vortex_swirl", InitialSpec::Kind::taylor_vortex_swirl},
                                                {"file", InitialSpec::Kind::file}});
    cfg.initial.amplitude = initial.number("amplitude", cfg.initial.amplitude);
    const std::string initial_path = initial.text("path", "");
    initial.finish();
    if (cfg.initial.kind == InitialSpec::Kind::file) {
        if (initial_path.empty()) initial.fail("path", "required when kind is \"file\"");
        const fs::path p(initial_path);
        cfg.initial.path = (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
    }

    Section forcing = root.child("forcing");
    cfg.forcing.kind = pick<ForcingSpec::Kind>(forcing, "kind", "zero",
                                               {{"zero", ForcingSpec::Kind::zero},
                                                {"manufactured", ForcingSpec::Kind::manufactured},
                                                {"swirl_profile", ForcingSpec::Kind::swirl_profile}});
    cfg.forcing.solution = pick<SolutionKind>(forcing, "solution", "taylor_vortex_swirl",
                                              {{"rigid_rotation", SolutionKind::rigid_rotation},
                                               {"decaying_swirl", SolutionKind::decaying_swirl},
                                               {"taylor_vortex_swirl", SolutionKind::taylor_vortex_swirl}});
    cfg.forcing.amplitude = forcing.number("amplitude", cfg.forcing.amplitude);
    forcing.finish();

    Section proj = root.child("projection");
    cfg.projection.method = pick<PoissonMethod>(proj, "method", "cholesky",
                                                {{"cholesky", PoissonMethod::cholesky},
                                                 {"conjugate_gradient", PoissonMethod::conjugate_gradient}});
    cfg.projection.tolerance = proj.number("tolerance", cfg.projection.tolerance);
    cfg.projection.max_iterations = proj.integer("max_iterations", cfg.projection.max_iterations);
    cfg.divergence_tolerance = proj.number("divergence_tolerance", cfg.divergence_tolerance);
    proj.finish();
    if (!(cfg.projection.tolerance > 0.0)) proj.fail("tolerance", "must be > 0");
    if (cfg.projection.max_iterations < 1) proj.fail("max_iterations", "must be >= 1");
    if (!(cfg.divergence_tolerance > 0.0)) proj.fail("divergence_tolerance", "must be > 0");

    Section ex = root.child("exponents");
    const double a = ex.exponent("a", 6.0);
    const double b = ex.exponent("b", 4.0);
    const double gamma = ex.number("gamma", 0.0);
    ex.finish();
    mon.exponents = derive_exponents(a, b, gamma);

    Section m = root.child("monitor");
    mon.q = m.integer("q", mon.q);
    mon.epsilon_list = m.numbers("epsilon_list", mon.epsilon_list);
    mon.c_grow = m.number("c_grow", mon.c_grow);
    mon.c_sob = m.optional_number("c_sob");
    mon.c3 = m.number("c3", mon.c3);
    mon.young_eps1 = m.number("young_eps1", mon.young_eps1);
    mon.young_eps2 = m.number("young_eps2", mon.young_eps2);
    Section tol = m.child("tolerances");
    mon.tol.holder = tol.number("holder", mon.tol.holder);
    mon.tol.identity_coeff = tol.number("identity_coeff", mon.tol.identity_coeff);
    mon.tol.divergence = tol.number("divergence", mon.tol.divergence);
    mon.tol.gronwall = tol.number("gronwall", mon.tol.gronwall);
    tol.finish();
    m.finish();
    mon.validate();

    Section out = root.child("output");
    const std::string dir = out.text("directory", "runs/" + default_name);
    sc.write_checkpoints = out.boolean("write_checkpoints", false);
    out.finish();
    root.finish();
    const fs::path od(dir);
    sc.output_dir = (od.is_absolute() ? od : output_root() / od).lexically_normal();

    cfg.validate();

    static const char* initial_names[] = {"zero", "rigid_rotation", "decaying_swirl", "taylor_vortex_swirl", "file"};
    static const char* forcing_names[] = {"zero", "manufactured", "swirl_profile"};
    json resolved = {
        {"schema_version", kScenarioSchemaVersion},
        {"grid", {{"n_rho", cfg.n_rho}, {"n_z", cfg.n_z}, {"rho_max", cfg.rho_max}, {"z_min", cfg.z_min}, {"z_max", cfg.z_max}}},
        {"physics", {{"nu", cfg.nu}}},
        {"time", {{"t_start", cfg.t_start}, {"t_end", cfg.t_end}, {"dt", cfg.dt}, {"checkpoint_stride", cfg.checkpoint_stride}}},
        {"initial", {{"kind", initial_names[static_cast<int>(cfg.initial.kind)]},
                     {"amplitude", cfg.initial.amplitude},
                     {"path", initial_path}}},
        {"forcing", {{"kind", forcing_names[static_cast<int>(cfg.forcing.kind)]}, {"solution", to_string(cfg.forcing.solution)}, {"amplitude", cfg.forcing.amplitude}}},
        {"projection", {{"method", cfg.projection.method == PoissonMethod::cholesky ? "cholesky" : "conjugate_gradient"},
                        {"tolerance", cfg.projection.tolerance},
                        {"max_iterations", cfg.projection.max_iterations},
                        {"divergence_tolerance", cfg.divergence_tolerance}}},
        {"exponents", {{"a", exponent_json(a)}, {"b", exponent_json(b)}, {"gamma", gamma}}},
        {"monitor", {{"q", mon.q}, {"epsilon_list", mon.epsilon_list}, {"c_grow", mon.c_grow},
                     {"c_sob", mon.c_sob ? json(*mon.c_sob) : json(nullptr)}, {"c3", mon.c3},
                     {"young_eps1", mon.young_eps1}, {"young_eps2", mon.young_eps2},
                     {"tolerances", {{"holder", mon.tol.holder}, {"identity_coeff", mon.tol.identity_coeff},
                                     {"divergence", mon.tol.divergence}, {"gronwall", mon.tol.gronwall}}}}},
        {"output", {{"directory", dir}, {"write_checkpoints", sc.write_checkpoints}}},
    };
    sc.resolved_json = resolved.dump(2);
    sc.source_hash = hex64(fnv1a64(text));
    return sc;
}

Scenario load_scenario(const fs::path& path) {
    const std::string text = read_text(path);
    return parse_scenario(text, path.parent_path().empty() ? fs::path(".") : path.parent_path(),
                          path.stem().string());
}

std::vector<std::string> diagnostics_columns(const MonitorConfig& m) {
    std::vector<std::string> cols = {
        "time", "dt", "swirl_q_norm", "swirl_q_power", "forcing_q_power", "d_t", "serrin_running",
        "gronwall_envelope", "kinetic_energy", "divergence_residual", "weighted_vort_energy",
        "quartic_rho2", "quartic_rho4", "diss_swirl_q", "swirl_q_over_rho2", "diss_vort", "diss_quartic",
        "grad_u_l2", "vort_l2", "step4_functional", "transport_cancellation", "transport_relative",
        "sobolev_margin", "margin_w", "margin_r", "identity_p_residual"};
    for (double eps : m.epsilon_list) {
        const std::string t = eps_tag(eps);
        cols.push_back("margin_ab_eps_" + t);
        cols.push_back("margin_aa_eps_" + t);
        cols.push_back("identity_z_eps_" + t);
        cols.push_back("c3_required_eps_" + t);
    }
    for (const char* c : {"margin_ae", "identity_ad_residual", "young_constant_step3", "margin_step4"})
        cols.push_back(c);
    // names of the sub-checks do not depend on the fields
    GridHandle g = build_grid(3, 2, 1.0, 0.0, 1.0);
    for (const auto& s : holder_young_subchecks(VelocityState::zeros(g), ForcingFields::zeros(g), m))
        cols.push_back("subcheck_" + s.name);
    return cols;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const MonitorConfig& m) {
    std::ostringstream out;
    const auto cols = diagnostics_columns(m);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        std::vector<double> row = {
            r.time, r.dt, r.swirl_q_norm, r.swirl_q_power, r.forcing_q_power, r.d_t, r.serrin_running,
            r.gronwall_envelope, r.kinetic_energy, r.divergence_residual, r.weighted_vort_energy,
            r.quartic_rho2, r.quartic_rho4, r.diss_swirl_q, r.swirl_q_over_rho2, r.diss_vort, r.diss_quartic,
            r.grad_u_l2, r.vort_l2, r.step4_functional, r.transport_cancellation, r.transport_relative,
            r.sobolev_margin, r.swirl.margin_w, r.swirl.margin_r, r.swirl.identity_p_residual};
        for (const auto& v : r.vorticity) {
            row.push_back(v.margin_ab);
            row.push_back(v.margin_aa);
            row.push_back(v.identity_z_residual);
            row.push_back(v.c3_required);
        }
        row.push_back(r.quartic.margin_ae);
        row.push_back(r.quartic.identity_ad_residual);
        row.push_back(r.quartic.young_constant_term);
        row.push_back(r.margin_step4);
        for (const auto& s : r.subchecks) row.push_back(s.margin);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    return out.str();
}

RunOutcome run_scenario(const Scenario& sc, std::ostream& log) {
    RunOutcome outcome;
    outcome.directory = sc.output_dir;
    std::error_code ec;
    fs::create_directories(sc.output_dir, ec);
    if (ec) throw IoError("cannot create " + sc.output_dir.string() + ": " + ec.message());
    if (sc.write_checkpoints) {
        fs::create_directories(sc.output_dir / "checkpoints", ec);
        if (ec) throw IoError("cannot create checkpoints directory: " + ec.message());
    }

    const GridHandle grid = sc.sim.make_grid();
    Monitor monitor(sc.monitor, grid);
    std::map<std::string, std::string> file_hashes;
    int index = 0;
    const Trajectory traj = run(sc.sim, [&](const VelocityState& s, const ForcingFields& f) {
        monitor.observe(s, f);
        if (sc.write_checkpoints) {
            char name[64];
            std::snprintf(name, sizeof name, "checkpoints/ckpt_%06d.bin", index);
            const std::string bytes = encode_checkpoint(s);
            write_text(sc.output_dir / name, bytes);
            file_hashes[name] = hex64(fnv1a64(bytes));
        }
        ++index;
    });
    monitor.finalize();

    outcome.truncated = traj.truncated();
    outcome.status_message = traj.message;
    outcome.c_sob = monitor.c_sob();
    outcome.checks = evaluate_checks(monitor.records(), monitor.config(), grid->min_spacing());
    outcome.blowup = blowup_indicator(monitor.records(), traj.truncated());

    const std::string csv = diagnostics_csv(monitor.records(), monitor.config());
    write_text(sc.output_dir / "diagnostics.csv", csv);
    file_hashes["diagnostics.csv"] = hex64(fnv1a64(csv));

    bool all_pass = true;
    for (const auto& c : outcome.checks)
        if (c.status == CheckStatus::fail) all_pass = false;
    if (traj.status == Trajectory::Status::step_rejected)
        outcome.exit_status = exit_code::config;
    else
        outcome.exit_status = all_pass ? exit_code::ok : exit_code::checks_failed;

    // summary
    std::ostringstream txt;
    txt << "status " << to_string(traj.status) << (traj.truncated() ? " (truncated)" : "") << '\n';
    if (!traj.message.empty()) txt << "message " << traj.message << '\n';
    txt << "steps " << traj.steps_taken << "  dt " << format_number(traj.dt_used) << "  checkpoints "
        << monitor.records().size() << '\n';
    txt << "c_sob " << format_number(outcome.c_sob) << (sc.monitor.c_sob ? " (configured)" : " (calibrated)") << '\n';
    txt << '\n' << std::left << std::setw(44) << "check" << std::setw(13) << "status" << std::setw(26) << "worst"
        << "tolerance\n";
    json checks = json::array();
    for (const auto& c : outcome.checks) {
        txt << std::setw(44) << c.name << std::setw(13) << to_string(c.status) << std::setw(26)
            << format_number(c.worst) << format_number(c.tolerance) << '\n';
        checks.push_back({{"name", c.name},
                          {"status", to_string(c.status)},
                          {"worst", finite_or_null(c.worst)},
                          {"tolerance", finite_or_null(c.tolerance)}});
    }
    const BlowupReport& b = outcome.blowup;
    txt << "\nwindow " << format_number(b.window_start) << " .. " << format_number(b.window_end)
        << (b.truncated ? "  (window ends at the last finite checkpoint)" : "") << '\n';
    auto series_line = [&](const char* name, const IndicatorSeries& s) {
        txt << std::setw(20) << name << " max " << format_number(s.max_value) << "  last "
            << format_number(s.last_value) << "  time integral " << format_number(s.time_integral) << "  "
            << (s.finite ? "finite" : "non-finite") << "  " << s.trend << '\n';
    };
    series_line("step4_functional", b.functional);
    series_line("vorticity_l2", b.vort_l2);
    series_line("velocity_grad_l2", b.grad_u_l2);
    txt << "\nresult " << (outcome.exit_status == exit_code::ok ? "PASS" : "FAIL") << '\n';
    const std::string summary_txt = txt.str();

    json summary = {
        {"status", to_string(traj.status)},
        {"truncated", traj.truncated()},
        {"message", traj.message},
        {"steps", traj.steps_taken},
        {"dt", traj.dt_used},
        {"checkpoints", monitor.records().size()},
        {"c_sob", outcome.c_sob},
        {"c_sob_calibrated", !sc.monitor.c_sob.has_value()},
        {"checks", checks},
        {"blowup_indicator",
         {{"window_start", b.window_start},
          {"window_end", b.window_end},
          {"truncated", b.truncated},
          {"step4_functional", series_json(b.functional)},
          {"vorticity_l2", series_json(b.vort_l2)},
          {"velocity_grad_l2", series_json(b.grad_u_l2)}}},
        {"exit_status", outcome.exit_status},
    };
    const std::string summary_json = summary.dump(2) + "\n";
    write_text(sc.output_dir / "summary.txt", summary_txt);
    write_text(sc.output_dir / "summary.json", summary_json);
    file_hashes["summary.txt"] = hex64(fnv1a64(summary_txt));
    file_hashes["summary.json"] = hex64(fnv1a64(summary_json));

    json manifest = {
        {"tool", "axswirl"},
        {"version", kVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"compiler", __VERSION__},
        {"scenario_hash", sc.source_hash},
        {"hash_algorithm", "fnv1a64"},
        {"resolved", json::parse(sc.resolved_json)},
        {"c_sob", outcome.c_sob},
        {"files", file_hashes},
    };
    write_text(sc.output_dir / "manifest.json", manifest.dump(2) + "\n");

    log << summary_txt;
    return outcome;
}

int run_scenario_file(const fs::path& path, std::ostream& out, std::ostream& err) {
    try {
        const Scenario sc = load_scenario(path);
        const RunOutcome r = run_scenario(sc, out);
        out << "artifacts in " << r.directory.string() << '\n';
        if (r.exit_status == exit_code::config) err << "time.dt: " << r.status_message << '\n';
        return r.exit_status;
    } catch (const ExponentError& e) {
        err << "exponents: " << e.what() << '\n';
        for (const auto& v : e.violations()) err << "  violation: " << v << '\n';
        return exit_code::config;
    } catch (const ConfigurationError& e) {
        err << e.what() << '\n';
        return exit_code::config;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

int sweep_directory(const fs::path& dir, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    if (ec) {
        err << "i/o error: cannot list " << dir.string() << ": " << ec.message() << '\n';
        return exit_code::io;
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << dir.string() << ": no *.json scenarios\n";
        return exit_code::config;
    }

    // each scenario must own its output directory
    std::map<fs::path, fs::path> owners;
    for (const auto& f : files) {
        try {
            const Scenario sc = load_scenario(f);
            auto [it, inserted] = owners.emplace(sc.output_dir, f);
            if (!inserted) {
                err << f.string() << ": output.directory: shared with " << it->second.string() << '\n';
                return exit_code::config;
            }
        } catch (...) {
            // reported by the run below
        }
    }

    struct Result {
        int status;
        std::string out, err;
    };
    std::vector<std::future<Result>> jobs;
    for (const auto& f : files)
        jobs.push_back(std::async(std::launch::async, [f] {
            std::ostringstream o, e;
            const int s = run_scenario_file(f, o, e);
            return Result{s, o.str(), e.str()};
        }));
    int worst = exit_code::ok;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Result r = jobs[i].get();
        out << "== " << files[i].filename().string() << " exit " << r.status << '\n';
        err << r.err;
        worst = std::max(worst, r.status);
    }
    return worst;
}

int check_exponents(const std::string& a_text, const std::string& b_text, const std::string& g_text,
                    std::ostream& out, std::ostream& err) {
    double a = 0, b = 0, gamma = 0;
    try {
        a = parse_exponent(a_text);
        b = parse_exponent(b_text);
        gamma = parse_exponent(g_text);
    } catch (const ConfigurationError& e) {
        err << e.what() << '\n';
        return exit_code::config;
    }
    if (std::isinf(gamma)) {
        err << "gamma: must be finite\n";
        return exit_code::config;
    }
    json block = {{"a", exponent_json(a)}, {"b", exponent_json(b)}, {"gamma", gamma}};
    out << std::left << std::setw(10) << "a" << format_number(a) << '\n'
        << std::setw(10) << "b" << format_number(b) << '\n'
        << std::setw(10) << "gamma" << format_number(gamma) << '\n';
    try {
        const ExponentSet e = derive_exponents(a, b, gamma);
        out << std::setw(10) << "verdict" << "admissible\n";
        const std::pair<const char*, double> rows[] = {
            {"p", e.p_hold}, {"s", e.s}, {"alpha", e.alpha}, {"beta", e.beta}, {"theta", e.theta}};
        for (const auto& [name, v] : rows) {
            out << std::setw(10) << name << format_number(v) << '\n';
            block[name] = v;
        }
        out << std::setw(10) << "delta" << (e.delta ? format_number(*e.delta) : "-") << '\n';
        block["delta"] = e.delta ? json(*e.delta) : json(nullptr);
        block["admissible"] = true;
        json pairs = json::array();
        out << "\npairs (first, second, 1/first + 1/second - 1)\n";
        for (const auto& p : holder_young_pairs(e)) {
            out << "  " << std::setw(14) << p.name << std::setw(26) << format_number(p.first) << std::setw(26)
                << format_number(p.second) << format_number(p.defect()) << '\n';
            pairs.push_back({{"name", p.name}, {"first", p.first}, {"second", p.second}});
        }
        block["pairs"] = pairs;
        out << "\n" << block.dump() << '\n';
        return exit_code::ok;
    } catch (const ExponentError& e) {
        out << std::setw(10) << "verdict" << "inadmissible\n";
        for (const auto& v : e.violations()) out << "  violation: " << v << '\n';
        block["admissible"] = false;
        block["violations"] = e.violations();
        out << "\n" << block.dump() << '\n';
        err << e.what() << '\n';
        return exit_code::config;
    }
}

int mms_report(const std::string& kind, const std::vector<int>& levels, std::ostream& out, std::ostream& err) {
    if (levels.size() < 3) {
        err << "levels: at least 3 refinement levels are required\n";
        return exit_code::config;
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 4) {
            err << "levels: each level must be >= 4\n";
            return exit_code::config;
        }
        if (i > 0 && levels[i] != 2 * levels[i - 1]) {
            err << "levels: each level must double the previous one\n";
            return exit_code::config;
        }
    }
    ConvergenceReport report;
    try {
        if (kind == "negative_control") {
            report = negative_control_convergence(levels);
        } else {
            const SolutionKind k = solution_kind_from_string(kind);
            report = k == SolutionKind::rigid_rotation ? operator_convergence(k, levels)
                                                       : solver_convergence(k, levels);
        }
    } catch (const ConfigurationError& e) {
        err << "kind: " << e.what() << '\n';
        return exit_code::config;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }

    double max_err = 0.0;
    for (const auto& r : report.rows)
        if (r.field == report.gated_field) max_err = std::max(max_err, r.error);
    const bool rounding = max_err <= 1e-10;
    const bool pass = rounding || (report.monotone && report.min_order >= 1.9);

    const std::string csv = convergence_csv(report);
    const fs::path dir = output_root() / "mms";
    try {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create " + dir.string());
        write_text(dir / ("convergence_" + kind + ".csv"), csv);
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::io;
    }
    out << csv;
    out << "gated field " << report.gated_field << ", min order " << format_number(report.min_order)
        << (report.monotone ? "" : ", errors not monotone") << (rounding ? ", errors at rounding level" : "")
        << '\n';
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? exit_code::ok : exit_code::checks_failed;
}

} // namespace axswirl
