#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvlab/backtest.hpp"
#include "mvlab/prices_io.hpp"

namespace mvlab {

// Flat key = value configuration: file contents first, command-line
// overrides on top, documented defaults underneath.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    // Throws when a key outside `known` was supplied (typo safety).
    void require_known(const std::vector<std::string>& known) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

// ---------------------------------------------------------------------------
// Estimator-variance study: cross-repetition standard deviation of the two
// risk-premium estimates (quadratic-variation based vs plain MLE ratio) on a
// one-year window, across observation spacings and drifts.
// ---------------------------------------------------------------------------

struct Table1Config {
    std::vector<double> dts = {21.0 / 252.0, 12.0 / 252.0, 1.0 / 252.0};
    std::vector<double> mu_stars = {0.08, 0.1, 0.12};
    double sigma_star = 0.1;
    double risk_free = 0.02;
    long repetitions = 10000;
    std::uint64_t master_seed = 1;
};

struct Table1Cell {
    double dt = 0.0;
    double mu_star = 0.0;
    double std_sqrt_ap = 0.0;    // estimator a
    double std_mle_ratio = 0.0;  // estimator b
    std::vector<double> sqrt_ap;     // per-repetition estimates behind the stds
    std::vector<double> mle_ratio;
};

struct Table1Result {
    Table1Config config;
    std::vector<Table1Cell> cells;  // ordered by (dt, mu_star)

    const Table1Cell& cell(double dt, double mu_star) const;
};

Table1Result run_table1(const Table1Config& cfg);

// ---------------------------------------------------------------------------
// Campaign experiments share the paper-style defaults.
// ---------------------------------------------------------------------------

struct CampaignSettings {
    double gamma = 1.4;
    double risk_free = 0.02;
    double horizon_years = 1.0;
    int steps = 252;
    int window = 252;
    double initial_wealth = 1.0;
    bool signed_premium = true;
    double sigma_floor = kSigmaFloor;
    double sigma_threshold = 0.1;
    long n_paths = 10000;
    std::uint64_t master_seed = 1;
    std::vector<StrategyKind> strategies;

    int burn_in_steps() const { return window + steps; }
    BacktestConfig backtest_config() const;
};

struct GbmCampaignConfig {
    CampaignSettings common;
    std::vector<double> mus = {0.1};
    double sigma = 0.1;
};

struct GbmCampaignResult {
    GbmCampaignConfig config;
    std::vector<CampaignResult> per_mu;
};

GbmCampaignResult run_gbm_campaign(const GbmCampaignConfig& cfg);

struct HestonCampaignConfig {
    CampaignSettings common;
    HestonParams base;
    // (reversion, correlation) settings; default the single headline pair
    std::vector<std::pair<double, double>> settings = {{42.5, -0.7}};
};

struct HestonCampaignResult {
    HestonCampaignConfig config;
    std::vector<CampaignResult> per_setting;
};

HestonCampaignResult run_heston_campaign(const HestonCampaignConfig& cfg);

// Per-sample trajectory of the horizon-profitability estimate next to the
// truth-implied value for the same path.
struct ApTrace {
    long sample = 0;
    double k_true = 0.0;            // trapezoid of the true squared premium
    std::vector<double> k_hat;      // estimate at each trading step
};

struct ApTracesConfig {
    CampaignSettings common;  // n_paths = number of samples (default 6)
    HestonParams base;
};

struct ApTracesResult {
    ApTracesConfig config;
    std::vector<ApTrace> traces;
};

ApTracesResult run_ap_traces(const ApTracesConfig& cfg);

struct RealMarketConfig {
    CampaignSettings common;
    std::vector<std::string> price_files;
};

struct RealMarketResult {
    RealMarketConfig config;
    std::vector<std::string> labels;
    std::vector<CampaignResult> per_file;
};

RealMarketResult run_real_market(const RealMarketConfig& cfg);

// ---------------------------------------------------------------------------
// File-writing surface used by the command line. Each run writes manifest.txt
// (config echo, seed, version, timestamp) plus the experiment's data files;
// identical config + seed reproduce the data files byte for byte.
// ---------------------------------------------------------------------------

struct ExperimentRequest {
    std::string kind;  // table1 | gbm | heston | ap-traces | real
    KeyValueConfig values;
    std::string out_dir;
};

// Returns the paths of the files written.
std::vector<std::string> run_experiment(const ExperimentRequest& request);

}  // namespace mvlab
