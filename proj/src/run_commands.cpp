#include "chiralnet/run_commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace chiralnet {

namespace {

using nlohmann::json;

std::string lookup_default(const std::string& key) {
    for (const ConfigKeyInfo& k : config_key_registry())
        if (k.name == key) return k.fallback;
    throw std::logic_error("key missing from registry: " + key);
}

double cfg_double(const KeyValueConfig& cfg, const std::string& key) {
    return cfg.get_double(key, std::stod(lookup_default(key)));
}

int cfg_int(const KeyValueConfig& cfg, const std::string& key) {
    return cfg.get_int(key, std::stoi(lookup_default(key)));
}

std::string cfg_string(const KeyValueConfig& cfg, const std::string& key) {
    return cfg.get_string(key, lookup_default(key));
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::runtime_error("sweep needs at least one point");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < points; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    return out;
}

json params_json(const NetworkParams& p) {
    return json{{"variant", to_string(p.variant)},
                {"omega_c1", round_sig(p.omega_c1)},
                {"omega_c2", round_sig(p.omega_c2)},
                {"omega_a1", round_sig(p.omega_a1)},
                {"omega_a2", round_sig(p.omega_a2)},
                {"g1", round_sig(p.g1)},
                {"g2", round_sig(p.g2)},
                {"alpha", round_sig(p.alpha)},
                {"gamma_R1", round_sig(p.gamma_R1)},
                {"gamma_R2", round_sig(p.gamma_R2)},
                {"gamma_L1", round_sig(p.gamma_L1)},
                {"gamma_L2", round_sig(p.gamma_L2)},
                {"Gamma1", round_sig(p.Gamma1)},
                {"Gamma2", round_sig(p.Gamma2)},
                {"kD", round_sig(p.kD)}};
}

json result_json(const StudyResult& r) {
    json best = json::object();
    for (const auto& [name, value] : r.best_params) best[name] = round_sig(value);
    json out{{"objective", r.objective},
             {"best_params", best},
             {"best_value", round_sig(r.best_value)},
             {"t_peak", round_sig(r.t_peak)},
             {"seed", r.seed},
             {"evaluations", r.evaluations},
             {"converged", r.converged}};
    if (r.sample_count > 0) {
        out["sample_mean"] = round_sig(r.sample_mean);
        out["sample_std"] = round_sig(r.sample_std);
        out["sample_count"] = r.sample_count;
    }
    return out;
}

CommandOutput finish(const RunConfig& run, const std::string& study,
                     const CsvTable& table, json summary) {
    CommandOutput out;
    const std::string base = study + "_" + run.tag();
    out.csv_path = run.out_dir / (base + ".csv");
    out.json_path = run.out_dir / (base + ".json");
    write_text_file(out.csv_path, csv_to_string(table));
    summary["study"] = study;
    out.summary = std::move(summary);
    write_text_file(out.json_path, out.summary.dump(2) + "\n");
    return out;
}

Trajectory simulate_trajectory(const NetworkParams& p,
                               const std::vector<double>& grid,
                               const std::string& solver,
                               const OdeOptions& ode) {
    const NetworkParams rotated = p.rotating_frame();
    if (solver == "schrodinger") {
        return evolve_schrodinger(build_effective_hamiltonian(rotated),
                                  PureState::excited_atom1(), grid, ode);
    }
    if (solver == "master") {
        const Vector psi = PureState::excited_atom1().embed(rotated.variant);
        const Matrix rho0 = psi * psi.adjoint();
        return evolve_master_equation(build_liouvillian(rotated), rho0, grid,
                                      ode);
    }
    throw std::runtime_error("config key 'solver': expected schrodinger or master");
}

} // namespace

RunConfig RunConfig::load(const std::optional<std::string>& config_path,
                          const std::vector<std::string>& overrides,
                          const std::filesystem::path& out_dir) {
    RunConfig run;
    run.out_dir = out_dir;
    if (config_path) run.cfg = KeyValueConfig::from_file(*config_path);
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        std::string value = kv.substr(eq + 1);
        while (!value.empty() && value.front() == ' ') value.erase(0, 1);
        run.cfg.set(key, value);
    }
    require_known_keys(run.cfg);
    return run;
}

NetworkParams RunConfig::network() const {
    NetworkParams p;
    p.variant = variant_from_string(cfg_string(cfg, "variant"));
    p.omega_c1 = cfg_double(cfg, "omega_c1");
    p.omega_c2 = cfg_double(cfg, "omega_c2");
    p.omega_a1 = cfg_double(cfg, "omega_a1");
    p.omega_a2 = cfg_double(cfg, "omega_a2");
    p.g1 = cfg_double(cfg, "g1");
    p.g2 = cfg_double(cfg, "g2");
    p.alpha = cfg_double(cfg, "alpha");
    p.gamma_R1 = cfg_double(cfg, "gamma_R1");
    p.gamma_R2 = cfg_double(cfg, "gamma_R2");
    p.gamma_L1 = cfg_double(cfg, "gamma_L1");
    p.gamma_L2 = cfg_double(cfg, "gamma_L2");
    p.Gamma1 = cfg_double(cfg, "Gamma1");
    p.Gamma2 = cfg_double(cfg, "Gamma2");
    p.kD = cfg_double(cfg, "kD");
    if (cfg.get_bool("normalize", false)) p = p.normalized();
    return p.finalize();
}

StudyOptions RunConfig::study_options() const {
    StudyOptions opt;
    opt.t_max = cfg_double(cfg, "t_max");
    opt.grid_points = cfg_int(cfg, "grid_points");
    opt.workers = cfg_int(cfg, "workers");
    opt.coarse_points = cfg_int(cfg, "coarse_points");
    opt.multistarts = cfg_int(cfg, "multistarts");
    opt.max_evaluations = cfg_int(cfg, "max_evaluations");
    opt.simplex_tolerance = cfg_double(cfg, "simplex_tolerance");
    return opt;
}

std::vector<BoundedParameter> RunConfig::free_parameters() const {
    std::vector<BoundedParameter> out;
    std::istringstream list(cfg_string(cfg, "free"));
    std::string name;
    while (std::getline(list, name, ',')) {
        while (!name.empty() && name.front() == ' ') name.erase(0, 1);
        while (!name.empty() && name.back() == ' ') name.pop_back();
        if (name.empty()) continue;
        if (name != "g1" && name != "g2" && name != "gamma_R2")
            throw std::runtime_error("config key 'free': unknown parameter '" +
                                     name + "'");
        out.push_back({name, cfg_double(cfg, name + "_min"),
                       cfg_double(cfg, name + "_max")});
    }
    if (out.empty())
        throw std::runtime_error("config key 'free': no parameters listed");
    return out;
}

std::uint64_t RunConfig::seed() const { return cfg.get_u64("seed", 12345); }

std::string RunConfig::tag() const {
    const std::string tag = cfg.get_string("tag", "");
    if (!tag.empty()) return tag;
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

CommandOutput cmd_simulate(const RunConfig& run) {
    const NetworkParams p = run.network();
    const StudyOptions opt = run.study_options();
    const auto grid = uniform_grid(opt.t_max, opt.grid_points);
    const Trajectory traj =
        simulate_trajectory(p, grid, cfg_string(run.cfg, "solver"), opt.ode);

    const PeakResult c_peak =
        peak_over_time(p, StudyObservable::Concurrence, opt);
    const PeakResult f1 = peak_over_time(p, StudyObservable::F1, opt);
    const PeakResult f2 = peak_over_time(p, StudyObservable::F2, opt);
    const PeakResult f3 = peak_over_time(p, StudyObservable::F3, opt);

    json summary{{"objective", "trajectory"},
                 {"best_params", json::object()},
                 {"best_value", round_sig(c_peak.value)},
                 {"t_peak", round_sig(c_peak.t_peak)},
                 {"seed", run.seed()},
                 {"evaluations", 1},
                 {"c_max", round_sig(c_peak.value)},
                 {"f1_peak", round_sig(f1.value)},
                 {"f2_peak", round_sig(f2.value)},
                 {"f3_peak", round_sig(f3.value)},
                 {"solver", cfg_string(run.cfg, "solver")},
                 {"params", params_json(p)}};
    return finish(run, "simulate", trajectory_csv(traj), std::move(summary));
}

CommandOutput cmd_optimize(const RunConfig& run) {
    const NetworkParams p = run.network();
    const std::vector<BoundedParameter> free = run.free_parameters();
    std::vector<OptimizeTraceRow> trace;
    StudyResult result =
        optimize_couplings(p, free, run.study_options(), &trace);
    result.seed = run.seed();

    CsvTable table;
    table.columns = {"phase", "index"};
    for (const BoundedParameter& b : free) table.columns.push_back(b.name);
    table.columns.insert(table.columns.end(),
                         {"value", "t_peak", "converged"});
    for (const OptimizeTraceRow& row : trace) {
        std::vector<double> r{row.phase == "grid" ? 0.0 : 1.0,
                              static_cast<double>(row.index)};
        r.insert(r.end(), row.params.begin(), row.params.end());
        r.push_back(row.value);
        r.push_back(row.t_peak);
        r.push_back(row.converged ? 1.0 : 0.0);
        table.rows.push_back(std::move(r));
    }

    json summary = result_json(result);
    summary["params"] = params_json(p);
    return finish(run, "optimize", table, std::move(summary));
}

CommandOutput cmd_table1(const RunConfig& run) {
    const Table1Result table = run_table1(run.study_options());

    CsvTable csv;
    csv.columns = {"study", "c_max", "t_peak", "g1", "g2", "gamma_R2"};
    auto row = [&csv](double id, const StudyResult& r, double g1, double g2,
                      double gr2) {
        csv.rows.push_back({id, r.best_value, r.t_peak, g1, g2, gr2});
    };
    auto param_or = [](const StudyResult& r, const std::string& name,
                       double fallback) {
        for (const auto& [n, v] : r.best_params)
            if (n == name) return v;
        return fallback;
    };
    row(0, table.no_cavity_equal, 0.0, 0.0, 1.0);
    row(1, table.no_cavity_unequal, 0.0, 0.0,
        param_or(table.no_cavity_unequal, "gamma_R2", 1.0));
    row(2, table.cavity_equal, param_or(table.cavity_equal, "g1", 0.0),
        param_or(table.cavity_equal, "g2", 0.0), 1.0);
    row(3, table.cavity_unequal, param_or(table.cavity_unequal, "g1", 0.0),
        param_or(table.cavity_unequal, "g2", 0.0),
        param_or(table.cavity_unequal, "gamma_R2", 1.0));

    json summary{{"objective", "table1"},
                 {"best_params", json::object()},
                 {"best_value", round_sig(table.cavity_unequal.best_value)},
                 {"t_peak", round_sig(table.cavity_unequal.t_peak)},
                 {"seed", run.seed()},
                 {"evaluations",
                  table.no_cavity_equal.evaluations +
                      table.no_cavity_unequal.evaluations +
                      table.cavity_equal.evaluations +
                      table.cavity_unequal.evaluations},
                 {"no_cavity_equal", round_sig(table.no_cavity_equal.best_value)},
                 {"no_cavity_unequal",
                  round_sig(table.no_cavity_unequal.best_value)},
                 {"cavity_equal", round_sig(table.cavity_equal.best_value)},
                 {"cavity_unequal", round_sig(table.cavity_unequal.best_value)},
                 {"details",
                  json{{"no_cavity_equal", result_json(table.no_cavity_equal)},
                       {"no_cavity_unequal",
                        result_json(table.no_cavity_unequal)},
                       {"cavity_equal", result_json(table.cavity_equal)},
                       {"cavity_unequal", result_json(table.cavity_unequal)}}}};
    return finish(run, "table1", csv, std::move(summary));
}

CommandOutput cmd_sweep_distance(const RunConfig& run) {
    const NetworkParams p = run.network();
    const auto d_values = linspace(cfg_double(run.cfg, "d_min"),
                                   cfg_double(run.cfg, "d_max"),
                                   cfg_int(run.cfg, "d_points"));
    std::vector<double> kd(d_values.size());
    for (std::size_t i = 0; i < d_values.size(); ++i)
        kd[i] = 2.0 * M_PI * d_values[i];
    const auto points = sweep_distance(p, kd, run.study_options());

    CsvTable table;
    table.columns = {"d_over_lambda", "kD", "c_max", "t_peak"};
    double best = -1.0, best_d = 0.0, worst = 2.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        table.rows.push_back(
            {points[i].d_over_lambda, kd[i], points[i].c_max, points[i].t_peak});
        if (points[i].c_max > best) {
            best = points[i].c_max;
            best_d = points[i].d_over_lambda;
        }
        worst = std::min(worst, points[i].c_max);
    }

    json summary{{"objective", "sweep_distance"},
                 {"best_params", json{{"d_over_lambda", round_sig(best_d)}}},
                 {"best_value", round_sig(best)},
                 {"t_peak", 0.0},
                 {"seed", run.seed()},
                 {"evaluations", static_cast<long>(points.size())},
                 {"c_max_spread", round_sig(best - worst)},
                 {"params", params_json(p)}};
    return finish(run, "sweep_distance", table, std::move(summary));
}

CommandOutput cmd_sweep_chirality(const RunConfig& run) {
    const NetworkParams p = run.network();
    const auto chi = linspace(cfg_double(run.cfg, "chi_min"),
                              cfg_double(run.cfg, "chi_max"),
                              cfg_int(run.cfg, "chi_points"));
    const std::string mode = cfg_string(run.cfg, "chirality_mode");
    ChiralityNormalization norm;
    if (mode == "fix_gamma_R")
        norm = ChiralityNormalization::FixGammaR;
    else if (mode == "fix_total")
        norm = ChiralityNormalization::FixTotal;
    else
        throw std::runtime_error(
            "config key 'chirality_mode': expected fix_gamma_R or fix_total");
    const auto points = sweep_chirality(p, chi, run.study_options(), norm);

    CsvTable table;
    table.columns = {"chi", "c_max", "t_peak"};
    double best = -1.0, best_chi = 0.0;
    for (const ChiralityPoint& pt : points) {
        table.rows.push_back({pt.chi, pt.c_max, pt.t_peak});
        if (pt.c_max > best) {
            best = pt.c_max;
            best_chi = pt.chi;
        }
    }

    json summary{{"objective", "sweep_chirality"},
                 {"best_params", json{{"chi", round_sig(best_chi)}}},
                 {"best_value", round_sig(best)},
                 {"t_peak", 0.0},
                 {"seed", run.seed()},
                 {"evaluations", static_cast<long>(points.size())},
                 {"chirality_mode", mode},
                 {"params", params_json(p)}};
    return finish(run, "sweep_chirality", table, std::move(summary));
}

CommandOutput cmd_sweep_detuning(const RunConfig& run) {
    const NetworkParams p = run.network();
    const auto deltas = linspace(cfg_double(run.cfg, "delta_min"),
                                 cfg_double(run.cfg, "delta_max"),
                                 cfg_int(run.cfg, "delta_points"));
    const DetuningTarget target =
        detuning_target_from_string(cfg_string(run.cfg, "detuning_target"));
    const int samples = cfg_int(run.cfg, "samples");
    const std::uint64_t seed = run.seed();
    const auto points =
        sweep_detuning(p, target, deltas, samples, seed, run.study_options());

    CsvTable table;
    table.columns = {"delta", "mean_c_max", "std_c_max"};
    for (const DetuningPoint& pt : points)
        table.rows.push_back({pt.delta, pt.mean_c_max, pt.std_c_max});

    json summary{{"objective", "sweep_detuning"},
                 {"best_params", json::object()},
                 {"best_value", round_sig(points.front().mean_c_max)},
                 {"t_peak", 0.0},
                 {"seed", seed},
                 {"evaluations", static_cast<long>(points.size()) * samples},
                 {"samples", samples},
                 {"detuning_target", to_string(target)},
                 {"params", params_json(p)}};
    return finish(run, "sweep_detuning", table, std::move(summary));
}

CommandOutput cmd_sweep_decay(const RunConfig& run) {
    const NetworkParams p = run.network();
    const auto gammas = linspace(cfg_double(run.cfg, "Gamma_min"),
                                 cfg_double(run.cfg, "Gamma_max"),
                                 cfg_int(run.cfg, "Gamma_points"));
    const std::string mode = cfg_string(run.cfg, "reoptimize");
    const bool want_fixed = mode == "false" || mode == "both";
    const bool want_opt = mode == "true" || mode == "both";
    if (!want_fixed && !want_opt)
        throw std::runtime_error(
            "config key 'reoptimize': expected true, false or both");
    const StudyOptions opt = run.study_options();

    std::vector<DecayPoint> fixed, reopt;
    if (want_fixed) fixed = sweep_atomic_decay(p, gammas, false, {}, opt);
    if (want_opt)
        reopt = sweep_atomic_decay(p, gammas, true, run.free_parameters(), opt);

    CsvTable table;
    table.columns = {"Gamma"};
    if (want_fixed) table.columns.push_back("c_max_fixed");
    if (want_opt) table.columns.push_back("c_max_reoptimized");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        std::vector<double> row{gammas[i]};
        if (want_fixed) row.push_back(fixed[i].c_max);
        if (want_opt) row.push_back(reopt[i].c_max);
        table.rows.push_back(std::move(row));
    }

    const auto& lead = want_opt ? reopt : fixed;
    json summary{{"objective", "sweep_decay"},
                 {"best_params", json::object()},
                 {"best_value", round_sig(lead.front().c_max)},
                 {"t_peak", 0.0},
                 {"seed", run.seed()},
                 {"evaluations", static_cast<long>(gammas.size()) *
                                     ((want_fixed ? 1 : 0) + (want_opt ? 1 : 0))},
                 {"reoptimize", mode},
                 {"params", params_json(p)}};
    return finish(run, "sweep_decay", table, std::move(summary));
}

CommandOutput cmd_bell_phase(const RunConfig& run) {
    const int n = cfg_int(run.cfg, "bell_n");
    NetworkParams p = run.network();
    p.kD = reduce_phase_2pi(n * M_PI);
    p.finalize();
    const BellPhaseResult r =
        nonchiral_bell_phase_check(n, p, run.study_options());

    CsvTable table;
    table.columns = {"n",      "f_psi_plus",      "f_psi_minus",
                     "c_peak", "t_peak",          "generator_defect",
                     "coherent_term_defect"};
    table.rows.push_back({static_cast<double>(n), r.f_psi_plus, r.f_psi_minus,
                          r.c_peak, r.t_peak, r.generator_defect,
                          r.coherent_term_defect});

    json summary{{"objective", "bell_phase"},
                 {"best_params", json{{"n", n}}},
                 {"best_value", round_sig(r.c_peak)},
                 {"t_peak", round_sig(r.t_peak)},
                 {"seed", run.seed()},
                 {"evaluations", 1},
                 {"f_psi_plus", round_sig(r.f_psi_plus)},
                 {"f_psi_minus", round_sig(r.f_psi_minus)},
                 {"generator_defect", round_sig(r.generator_defect)},
                 {"coherent_term_defect", round_sig(r.coherent_term_defect)},
                 {"params", params_json(p)}};
    return finish(run, "bell_phase", table, std::move(summary));
}

} // namespace chiralnet
