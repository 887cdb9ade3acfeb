#include "pseudopara/blowup.hpp"
#include "pseudopara/config.hpp"
#include "pseudopara/profile.hpp"
#include "pseudopara/solver.hpp"
#include "pseudopara/sweep.hpp"
#include "pseudopara/testfn.hpp"
#include "pseudopara/verify.hpp"

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pseudopara;
using nlohmann::ordered_json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    return out;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    ordered_json* section = nullptr;
    std::istringstream in(serialize(cfg));
    std::string line;
    while (std::getline(in, line)) {
        if (line.front() == '[') {
            section = &j[line.substr(1, line.size() - 2)];
            continue;
        }
        const auto eq = line.find(" = ");
        (*section)[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

ordered_json with_header(const RunConfig& cfg, ordered_json body) {
    ordered_json j;
    j["config_hash"] = config_hash(cfg);
    j["config"] = config_json(cfg);
    for (auto& [k, v] : body.items()) {
        j[k] = v;
    }
    return j;
}

void write_trajectory(std::ostream& os, const RunConfig& cfg, const Trajectory& tr) {
    os << header_block(cfg);
    os << "t,dt,sup_norm,l2_norm,mass,boundary_value\n";
    for (const auto& r : tr.rows) {
        os << format_double(r.t) << ',' << format_double(r.dt) << ',' << format_double(r.sup_norm) << ','
           << format_double(r.l2_norm) << ',' << format_double(r.mass) << ','
           << format_double(r.boundary_value) << '\n';
    }
}

int cmd_simulate(const std::string& flag_path) {
    const RunConfig cfg = load_config(resolve_config_path(flag_path));
    const RunResult res = run(cfg.problem, cfg.grid.build(), cfg.control);
    {
        auto out = open_out(cfg.output.trajectory);
        write_trajectory(out, cfg, res.trajectory);
    }
    const ordered_json rep = with_header(cfg, ordered_json{{"report", to_json(res.report)}});
    open_out(cfg.output.report) << rep.dump(2) << '\n';
    std::cout << "outcome " << to_string(res.report.outcome) << ", steps " << res.report.steps
              << ", final t " << format_double(res.report.final_time);
    if (res.report.t_star_estimate) {
        std::cout << ", t_star " << format_double(*res.report.t_star_estimate);
    }
    std::cout << "\nwrote " << cfg.output.trajectory << " and " << cfg.output.report << '\n';
    return 0;
}

int cmd_sweep(const std::string& flag_path, int workers) {
    const RunConfig cfg = load_config(resolve_config_path(flag_path));
    SweepConfig sc;
    sc.ndim = cfg.grid.ndim;
    sc.r_max = cfg.grid.r_max;
    sc.n_r = cfg.grid.n_r;
    sc.bc = cfg.grid.bc;
    sc.p = cfg.sweep.p;
    sc.gamma = cfg.sweep.gamma;
    sc.k = cfg.sweep.k;
    sc.omega_amp = cfg.sweep.omega_amp;
    sc.omega_width = cfg.sweep.omega_width;
    sc.near_critical_band = cfg.sweep.near_critical_band;
    sc.u0 = cfg.problem.u0;
    sc.control = cfg.control;
    const auto results = run_sweep(sc, workers);
    {
        auto out = open_out(cfg.output.map);
        out << header_block(cfg);
        write_map_csv(out, results);
    }
    for (const auto& r : results) {
        if (!r.error.empty()) {
            std::cerr << "case p=" << format_double(r.params.p) << " gamma=" << format_double(r.params.gamma)
                      << " k=" << format_double(r.params.k) << ": " << r.error << '\n';
        }
    }
    std::cout << classify_map(results).render() << "wrote " << cfg.output.map << '\n';
    return 0;
}

int cmd_verify(const std::string& what, double p, double gamma, int ndim, const std::string& json_path,
               const std::string& csv_path) {
    VerifyReport rep;
    if (what == "fracint") {
        rep = verify_fracint();
    } else if (what == "scaling") {
        rep = verify_scaling(p, gamma, ndim);
    } else {
        rep = verify_critical(ndim);
    }
    std::cout << rep.table();
    const std::string path = json_path.empty() ? "verify_" + what + ".json" : json_path;
    open_out(path) << rep.to_json().dump(2) << '\n';
    if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        write_scaling_csv(out, rep.scaling);
    }
    return rep.passed() ? 0 : kExitVerifyFailed;
}

int cmd_residual(const std::string& flag_path, const std::string& family) {
    const RunConfig cfg = load_config(resolve_config_path(flag_path));
    RunControl control = cfg.control;
    control.horizon = cfg.testfn.horizon;
    control.keep_fields = true;
    const RadialGrid grid = cfg.grid.build();
    const RunResult res = run(cfg.problem, grid, control);
    const double T = cfg.testfn.horizon;
    const double R = cfg.testfn.radius;
    const auto& pr = cfg.problem;
    const SeparableTestFunction test =
        family == "critical" ? critical_test_function(T, R, pr.p, pr.gamma, grid.ndim())
                             : subcritical_test_function(T, R, pr.p, pr.gamma, grid.ndim());
    if (res.report.final_time < T * (1.0 - 1e-12)) {
        throw std::runtime_error("run stopped at t = " + format_double(res.report.final_time) +
                                 " before the test horizon (" + to_string(res.report.outcome) + ")");
    }
    const WeakResidual w = weak_residual(res, test, cfg.problem, grid);
    ordered_json body;
    body["testfn"] = family;
    body["terms"] = {{"source_memory", w.source_memory}, {"source_forcing", w.source_forcing},
                     {"initial", w.initial},             {"time_term", w.time_term},
                     {"sobolev_term", w.sobolev_term},   {"diffusion_term", w.diffusion_term}};
    body["lhs"] = w.lhs();
    body["rhs"] = w.rhs();
    body["residual"] = w.residual();
    const ordered_json out = with_header(cfg, body);
    open_out(cfg.output.residual) << out.dump(2) << '\n';
    std::cout << "residual " << format_double(w.residual()) << " (lhs " << format_double(w.lhs())
              << ", rhs " << format_double(w.rhs()) << ")\nwrote " << cfg.output.residual << '\n';
    return 0;
}

std::vector<NormSample> read_sup_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::string line;
    int t_col = -1;
    int s_col = -1;
    std::vector<NormSample> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (t_col < 0) {
            for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
                if (cells[static_cast<std::size_t>(i)] == "t") {
                    t_col = i;
                }
                if (cells[static_cast<std::size_t>(i)] == "sup_norm") {
                    s_col = i;
                }
            }
            if (t_col < 0 || s_col < 0) {
                throw std::runtime_error(path + ": header needs t and sup_norm columns");
            }
            continue;
        }
        out.push_back({std::stod(cells.at(static_cast<std::size_t>(t_col))),
                       std::stod(cells.at(static_cast<std::size_t>(s_col)))});
    }
    return out;
}

int cmd_tstar(const std::string& path, double p, std::optional<double> threshold) {
    const auto series = read_sup_series(path);
    const auto est = estimate_t_star(series, p, threshold);
    ordered_json j;
    j["t_star"] = est.t_star;
    j["fit_exponent"] = est.fit_exponent ? ordered_json(*est.fit_exponent) : ordered_json(nullptr);
    j["fit_residual"] = est.fit_residual;
    j["window"] = est.window;
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radially symmetric pseudo-parabolic equation with a fractional memory source"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "Run one simulation");
    simulate->add_option("-c,--config", config_path, "Config file (else $PSEUDOPARA_CONFIG)");

    int workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write the outcome map");
    sweep->add_option("-c,--config", config_path, "Config file (else $PSEUDOPARA_CONFIG)");
    sweep->add_option("-j,--jobs", workers, "Worker threads (default: all)");

    std::string what;
    double p = 2.0;
    double gamma = 0.5;
    int ndim = 3;
    std::string json_path;
    std::string csv_path;
    auto* verify = app.add_subcommand("verify", "Run a self-check suite");
    verify->add_option("what", what, "fracint, scaling or critical")
        ->required()
        ->check(CLI::IsMember({"fracint", "scaling", "critical"}));
    verify->add_option("--p", p, "Exponent p (scaling)");
    verify->add_option("--gamma", gamma, "Order gamma (scaling)");
    verify->add_option("--ndim", ndim, "Dimension N");
    verify->add_option("--json", json_path, "Report path (default verify_<what>.json)");
    verify->add_option("--csv", csv_path, "Also write the scaling samples as CSV");

    std::string family = "subcritical";
    auto* residual = app.add_subcommand("residual", "Weak-form residual of a run");
    residual->add_option("-c,--config", config_path, "Config file (else $PSEUDOPARA_CONFIG)");
    residual->add_option("--testfn", family, "Test function family")
        ->check(CLI::IsMember({"subcritical", "critical"}));

    std::string in_path;
    double tp = 2.0;
    std::optional<double> threshold;
    auto* tstar = app.add_subcommand("tstar", "Estimate the blow-up time from a trajectory CSV");
    tstar->add_option("--in", in_path, "Trajectory CSV")->required();
    tstar->add_option("--p", tp, "Exponent p")->required();
    tstar->add_option("--threshold", threshold, "Reference level for the fit window");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            return cmd_simulate(config_path);
        }
        if (*sweep) {
            return cmd_sweep(config_path, workers);
        }
        if (*verify) {
            return cmd_verify(what, p, gamma, ndim, json_path, csv_path);
        }
        if (*residual) {
            return cmd_residual(config_path, family);
        }
        if (*tstar) {
            return cmd_tstar(in_path, tp, threshold);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
