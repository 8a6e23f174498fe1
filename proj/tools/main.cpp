// Command-line surface: configure an experiment, run it, write report files.
//
//   mvlab table1    --out runs/table1
//   mvlab gbm       --out runs/gbm --paths 10000
//   mvlab heston    --out runs/heston --paths 10000 [--full-grid]
//   mvlab ap-traces --out runs/traces --paths 6
//   mvlab real      --out runs/real --prices data/index.csv
//
// Flag precedence: command-line flag > --config file > documented default.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "mvlab/experiments.hpp"
#include "mvlab/version.hpp"

namespace {

struct SharedFlags {
    std::string config_file;
    std::string out_dir;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_override_flag(CLI::App* cmd, SharedFlags& shared, const std::string& flag,
                       const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
           flag,
           [&shared, key](const std::string& v) { shared.overrides.emplace_back(key, v); }, help)
        ->expected(1);
}

void add_common_flags(CLI::App* cmd, SharedFlags& shared) {
    cmd->add_option("--config", shared.config_file, "flat key = value config file");
    cmd->add_option("--out", shared.out_dir, "output directory")->required();
    add_override_flag(cmd, shared, "--seed", "seed", "master seed");
    add_override_flag(cmd, shared, "--paths", "paths", "paths / repetitions / samples");
    add_override_flag(cmd, shared, "--gamma", "gamma", "risk aversion weight");
    add_override_flag(cmd, shared, "--risk-free", "risk_free", "risk-free rate per year");
    add_override_flag(cmd, shared, "--steps", "steps", "trading steps over the horizon");
    add_override_flag(cmd, shared, "--window", "window", "estimation window (returns)");
    add_override_flag(cmd, shared, "--strategies", "strategies",
                      "comma list: qv,mle,hold,oracle,qv_or_hold");
    add_override_flag(cmd, shared, "--threshold", "sigma_threshold",
                      "volatility gate for qv_or_hold");
    add_override_flag(cmd, shared, "--signed-premium", "signed_premium",
                      "carry the premium sign (true/false)");
}

int run(const std::string& kind, const SharedFlags& shared) {
    mvlab::ExperimentRequest request;
    request.kind = kind;
    if (!shared.config_file.empty())
        request.values = mvlab::KeyValueConfig::from_file(shared.config_file);
    for (const auto& [key, value] : shared.overrides)
        request.values.set(key, value);
    request.out_dir = shared.out_dir;

    const auto written = mvlab::run_experiment(request);
    for (const auto& file : written)
        std::cout << "wrote " << file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvlab — profitability-indexed mean-variance portfolio laboratory"};
    app.set_version_flag("--version", std::string("mvlab ") + mvlab::kVersion);
    app.require_subcommand(1);

    SharedFlags table1, gbm, heston, traces, real;

    auto* cmd_table1 = app.add_subcommand(
        "table1", "estimator-variance study across observation spacings");
    cmd_table1->add_option("--config", table1.config_file, "flat key = value config file");
    cmd_table1->add_option("--out", table1.out_dir, "output directory")->required();
    add_override_flag(cmd_table1, table1, "--seed", "seed", "master seed");
    add_override_flag(cmd_table1, table1, "--paths", "paths", "repetitions");
    add_override_flag(cmd_table1, table1, "--risk-free", "risk_free", "risk-free rate per year");
    add_override_flag(cmd_table1, table1, "--sigma-star", "sigma_star", "true volatility");
    add_override_flag(cmd_table1, table1, "--dt-list", "dt_list", "comma list of spacings");
    add_override_flag(cmd_table1, table1, "--mu-list", "mu_list", "comma list of true drifts");

    auto* cmd_gbm = app.add_subcommand("gbm", "constant-coefficient campaign");
    add_common_flags(cmd_gbm, gbm);
    add_override_flag(cmd_gbm, gbm, "--mu-list", "gbm_mu_list", "comma list of drifts");
    add_override_flag(cmd_gbm, gbm, "--sigma", "gbm_sigma", "volatility");

    auto* cmd_heston = app.add_subcommand("heston", "stochastic-volatility campaign");
    add_common_flags(cmd_heston, heston);
    add_override_flag(cmd_heston, heston, "--a", "heston_a", "drift slope");
    add_override_flag(cmd_heston, heston, "--iota", "heston_iota", "variance reversion speed");
    add_override_flag(cmd_heston, heston, "--k", "heston_k", "long-run variance");
    add_override_flag(cmd_heston, heston, "--v", "heston_v", "vol of vol");
    add_override_flag(cmd_heston, heston, "--kappa", "heston_kappa", "shock correlation");
    add_override_flag(cmd_heston, heston, "--x0", "heston_x0", "initial variance");
    cmd_heston->add_flag_callback(
        "--full-grid", [&heston] { heston.overrides.emplace_back("full_grid", "true"); },
        "sweep the reversion x correlation grid");

    auto* cmd_traces = app.add_subcommand(
        "ap-traces", "profitability-estimate trajectories on sample paths");
    add_common_flags(cmd_traces, traces);
    add_override_flag(cmd_traces, traces, "--a", "heston_a", "drift slope");
    add_override_flag(cmd_traces, traces, "--iota", "heston_iota", "variance reversion speed");
    add_override_flag(cmd_traces, traces, "--k", "heston_k", "long-run variance");
    add_override_flag(cmd_traces, traces, "--v", "heston_v", "vol of vol");
    add_override_flag(cmd_traces, traces, "--kappa", "heston_kappa", "shock correlation");
    add_override_flag(cmd_traces, traces, "--x0", "heston_x0", "initial variance");

    auto* cmd_real = app.add_subcommand("real", "rolling one-year horizons on a price file");
    add_common_flags(cmd_real, real);
    add_override_flag(cmd_real, real, "--prices", "prices", "comma list of date,close files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_table1->parsed()) return run("table1", table1);
        if (cmd_gbm->parsed()) return run("gbm", gbm);
        if (cmd_heston->parsed()) return run("heston", heston);
        if (cmd_traces->parsed()) return run("ap-traces", traces);
        if (cmd_real->parsed()) return run("real", real);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
