#include "mvlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mvlab/stats.hpp"
#include "mvlab/version.hpp"

namespace mvlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open config file '" + path + "'");
    KeyValueConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw data_error("config file '" + path + "' line " + std::to_string(line_no) +
                             ": expected key = value", line_no);
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    if (key.empty())
        throw invalid_spec_error("config: empty key");
    entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw invalid_spec_error("config: '" + key + "' is not a number: " + it->second);
    }
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    const long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
        throw invalid_spec_error("config: '" + key + "' must be an integer");
    return l;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw invalid_spec_error("config: '" + key + "' is not a boolean: " + v);
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(it->second)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw invalid_spec_error("config: '" + key + "' has a non-numeric item: " + item);
        }
    }
    if (out.empty())
        throw invalid_spec_error("config: '" + key + "' is empty");
    return out;
}

void KeyValueConfig::require_known(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : entries_) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw invalid_spec_error("config: unknown key '" + key + "'");
    }
}

// ---------------------------------------------------------------------------

const Table1Cell& Table1Result::cell(double dt, double mu_star) const {
    for (const auto& c : cells)
        if (std::abs(c.dt - dt) < 1e-12 && std::abs(c.mu_star - mu_star) < 1e-12)
            return c;
    throw invalid_spec_error("Table1Result: no such cell");
}

Table1Result run_table1(const Table1Config& cfg) {
    if (cfg.repetitions < 2)
        throw invalid_spec_error("run_table1: need at least two repetitions");
    Table1Result result;
    result.config = cfg;

    std::uint64_t cell_index = 0;
    for (double dt : cfg.dts) {
        const int m = static_cast<int>(std::lround(1.0 / dt));  // one-year window
        TimeGrid grid;
        grid.steps = m;
        grid.horizon_years = m * dt;
        grid.burn_in_steps = m;  // rolling estimates need a window before t_0
        const EstimationWindow window{m};

        for (double mu_star : cfg.mu_stars) {
            MarketSpec spec;
            spec.risk_free = cfg.risk_free;
            spec.model = GbmParams{mu_star, cfg.sigma_star};

            std::vector<double> sqrt_ap(static_cast<std::size_t>(cfg.repetitions));
            std::vector<double> mle_ratio(static_cast<std::size_t>(cfg.repetitions));
            for (long rep = 0; rep < cfg.repetitions; ++rep) {
                const RngSeed seed{cfg.master_seed,
                                   cell_index * static_cast<std::uint64_t>(cfg.repetitions) +
                                       static_cast<std::uint64_t>(rep)};
                const PricePath path = simulate_gbm_path(spec, grid, seed);
                const PathEstimates estimates(path, window, cfg.risk_free, 0);
                sqrt_ap[static_cast<std::size_t>(rep)] = std::sqrt(estimates.k_hat(m));
                const ParamEstimate& end = estimates.at(m);
                const double sigma = std::max(end.sigma_hat, kSigmaFloor);
                mle_ratio[static_cast<std::size_t>(rep)] = (end.mu_hat - cfg.risk_free) / sigma;
            }

            Table1Cell cell;
            cell.dt = dt;
            cell.mu_star = mu_star;
            cell.std_sqrt_ap = stats::population_stddev(sqrt_ap);
            cell.std_mle_ratio = stats::population_stddev(mle_ratio);
            cell.sqrt_ap = std::move(sqrt_ap);
            cell.mle_ratio = std::move(mle_ratio);
            result.cells.push_back(std::move(cell));
            ++cell_index;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

BacktestConfig CampaignSettings::backtest_config() const {
    BacktestConfig cfg;
    cfg.grid.horizon_years = horizon_years;
    cfg.grid.steps = steps;
    cfg.grid.burn_in_steps = burn_in_steps();
    cfg.window.m = window;
    cfg.prefs.gamma = gamma;
    cfg.prefs.risk_free = risk_free;
    cfg.initial_wealth = initial_wealth;
    cfg.signed_premium = signed_premium;
    cfg.sigma_floor = sigma_floor;
    return cfg;
}

namespace {

std::vector<StrategyKind> strategies_or(const CampaignSettings& common,
                                        std::initializer_list<StrategyId> fallback) {
    if (!common.strategies.empty())
        return common.strategies;
    std::vector<StrategyKind> out;
    for (StrategyId id : fallback)
        out.push_back(StrategyKind{id, common.sigma_threshold});
    return out;
}

}  // namespace

GbmCampaignResult run_gbm_campaign(const GbmCampaignConfig& cfg) {
    GbmCampaignResult result;
    result.config = cfg;
    const auto strategies =
        strategies_or(cfg.common, {StrategyId::qv, StrategyId::mle, StrategyId::oracle});
    BacktestConfig bt = cfg.common.backtest_config();

    std::uint64_t salt = 0;
    for (double mu : cfg.mus) {
        MarketSpec spec;
        spec.risk_free = cfg.common.risk_free;
        spec.model = GbmParams{mu, cfg.sigma};
        result.per_mu.push_back(monte_carlo_campaign(spec, bt, cfg.common.n_paths, strategies,
                                                     cfg.common.master_seed + salt));
        ++salt;
    }
    return result;
}

HestonCampaignResult run_heston_campaign(const HestonCampaignConfig& cfg) {
    HestonCampaignResult result;
    result.config = cfg;
    const auto strategies = strategies_or(
        cfg.common, {StrategyId::qv, StrategyId::mle, StrategyId::hold, StrategyId::oracle});
    BacktestConfig bt = cfg.common.backtest_config();

    std::uint64_t salt = 0;
    for (const auto& [reversion, correlation] : cfg.settings) {
        MarketSpec spec;
        spec.risk_free = cfg.common.risk_free;
        HestonParams params = cfg.base;
        params.reversion = reversion;
        params.correlation = correlation;
        spec.model = params;
        result.per_setting.push_back(monte_carlo_campaign(
            spec, bt, cfg.common.n_paths, strategies, cfg.common.master_seed + salt));
        ++salt;
    }
    return result;
}

ApTracesResult run_ap_traces(const ApTracesConfig& cfg) {
    ApTracesResult result;
    result.config = cfg;

    MarketSpec spec;
    spec.risk_free = cfg.common.risk_free;
    spec.model = cfg.base;
    const BacktestConfig bt = cfg.common.backtest_config();
    const EstimationWindow window{cfg.common.window};

    for (long sample = 0; sample < cfg.common.n_paths; ++sample) {
        const PricePath path = simulate_heston_path(
            spec, bt.grid, {cfg.common.master_seed, static_cast<std::uint64_t>(sample)});
        const PathEstimates estimates(path, window, cfg.common.risk_free);

        ApTrace trace;
        trace.sample = sample;
        trace.k_hat.reserve(static_cast<std::size_t>(bt.grid.steps));
        for (int k = 0; k < bt.grid.steps; ++k)
            trace.k_hat.push_back(estimates.k_hat(k));

        // truth-implied horizon profitability for the same path
        double integral = 0.0;
        auto premium_sq = [&](int k) {
            const double p =
                (path.truth_mu(k) - cfg.common.risk_free) / path.truth_sigma(k);
            return p * p;
        };
        for (int k = 0; k < bt.grid.steps; ++k)
            integral += 0.5 * (premium_sq(k) + premium_sq(k + 1)) * bt.grid.dt();
        trace.k_true = integral / bt.grid.horizon_years;
        result.traces.push_back(std::move(trace));
    }
    return result;
}

RealMarketResult run_real_market(const RealMarketConfig& cfg) {
    if (cfg.price_files.empty())
        throw invalid_spec_error("run_real_market: no price files given");
    RealMarketResult result;
    result.config = cfg;
    const auto strategies =
        strategies_or(cfg.common, {StrategyId::qv_or_hold, StrategyId::qv, StrategyId::mle,
                                   StrategyId::hold});
    const BacktestConfig bt = cfg.common.backtest_config();

    for (const auto& file : cfg.price_files) {
        const PricePath path = ingest_prices(file, cfg.common.risk_free);
        result.labels.push_back(std::filesystem::path(file).stem().string());
        result.per_file.push_back(rolling_horizons(path, bt, strategies));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Writers.
// ---------------------------------------------------------------------------

namespace {

struct ManifestEntry {
    std::string key;
    std::string value;
};

void write_manifest(const std::filesystem::path& dir, const std::string& kind,
                    const std::vector<ManifestEntry>& entries) {
    std::ofstream out(dir / "manifest.txt");
    if (!out)
        throw data_error("cannot write manifest in '" + dir.string() + "'");
    out << "tool = mvlab " << kVersion << "\n";
    out << "experiment = " << kind << "\n";
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "written_at = " << stamp << "\n";
    for (const auto& e : entries)
        out << e.key << " = " << e.value << "\n";
}

std::ofstream open_data_file(const std::filesystem::path& dir, const std::string& name,
                             std::vector<std::string>& written) {
    std::ofstream out(dir / name);
    if (!out)
        throw data_error("cannot write '" + (dir / name).string() + "'");
    written.push_back((dir / name).string());
    return out;
}

void append_common_entries(std::vector<ManifestEntry>& entries, const CampaignSettings& c) {
    entries.push_back({"gamma", fmt(c.gamma)});
    entries.push_back({"risk_free", fmt(c.risk_free)});
    entries.push_back({"horizon_years", fmt(c.horizon_years)});
    entries.push_back({"steps", std::to_string(c.steps)});
    entries.push_back({"window", std::to_string(c.window)});
    entries.push_back({"burn_in_steps", std::to_string(c.burn_in_steps())});
    entries.push_back({"initial_wealth", fmt(c.initial_wealth)});
    entries.push_back({"signed_premium", c.signed_premium ? "true" : "false"});
    entries.push_back({"sigma_floor", fmt(c.sigma_floor)});
    entries.push_back({"sigma_threshold", fmt(c.sigma_threshold)});
    entries.push_back({"paths", std::to_string(c.n_paths)});
    entries.push_back({"seed", std::to_string(c.master_seed)});
}

std::string strategy_list_string(const std::vector<StrategyId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0)
            out += ",";
        out += strategy_name(ids[i]);
    }
    return out;
}

void write_campaign_summary(std::ofstream& out, const std::string& row_prefix_header,
                            const std::vector<std::string>& row_prefixes,
                            const std::vector<CampaignResult>& campaigns, bool with_welch) {
    const auto& ids = campaigns.front().strategies;
    out << row_prefix_header << ",metric";
    for (StrategyId id : ids)
        out << "," << strategy_name(id);
    out << "\n";

    for (std::size_t c = 0; c < campaigns.size(); ++c) {
        const CampaignResult& campaign = campaigns[c];
        const std::string& prefix = row_prefixes[c];
        out << prefix << ",ceq";
        for (StrategyId id : ids) {
            const auto& m = campaign.metrics_of(id);
            out << "," << (m.ceq_defined ? fmt(m.ceq) : "nan");
        }
        out << "\n" << prefix << ",sharpe";
        for (StrategyId id : ids) {
            const auto& m = campaign.metrics_of(id);
            out << "," << (m.sharpe_defined ? fmt(m.sharpe) : "nan");
        }
        out << "\n" << prefix << ",turnover";
        for (StrategyId id : ids)
            out << "," << fmt(campaign.metrics_of(id).mean_turnover);
        out << "\n";
        if (with_welch && std::find(ids.begin(), ids.end(), StrategyId::qv) != ids.end()) {
            out << prefix << ",welch_p_vs_qv";
            const auto& base = campaign.returns_of(StrategyId::qv);
            for (StrategyId id : ids) {
                if (id == StrategyId::qv) {
                    out << ",1";
                    continue;
                }
                try {
                    out << "," << fmt(welch_test(campaign.returns_of(id), base).p);
                } catch (const metric_error&) {
                    out << ",nan";
                }
            }
            out << "\n";
        }
    }
}

void write_campaign_ledgers(std::ofstream& out, const std::string& row_prefix_header,
                            const std::vector<std::string>& row_prefixes,
                            const std::vector<CampaignResult>& campaigns,
                            const std::string& unit_name) {
    out << row_prefix_header << "," << unit_name
        << ",strategy,terminal_wealth,return,turnover,mean_cp,price_checksum\n";
    for (std::size_t c = 0; c < campaigns.size(); ++c) {
        for (const auto& o : campaigns[c].outcomes) {
            out << row_prefixes[c] << "," << o.unit << "," << strategy_name(o.strategy) << ","
                << fmt(o.terminal_wealth) << "," << fmt(o.simple_return) << ","
                << fmt(o.turnover) << "," << fmt(o.mean_cp) << "," << o.price_checksum << "\n";
        }
    }
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    if (out_dir.empty())
        throw invalid_spec_error("run_experiment: output directory not set");
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw data_error("cannot create output directory '" + out_dir + "': " + ec.message());
    return dir;
}

std::vector<std::string> common_keys() {
    return {"seed",        "paths",          "gamma",        "risk_free",     "horizon_years",
            "steps",       "window",         "initial_wealth", "signed_premium", "sigma_floor",
            "sigma_threshold", "strategies"};
}

CampaignSettings parse_common(const KeyValueConfig& values) {
    CampaignSettings c;
    c.master_seed = static_cast<std::uint64_t>(values.get_long("seed", 1));
    c.n_paths = values.get_long("paths", 10000);
    c.gamma = values.get_double("gamma", 1.4);
    c.risk_free = values.get_double("risk_free", 0.02);
    c.horizon_years = values.get_double("horizon_years", 1.0);
    c.steps = static_cast<int>(values.get_long("steps", 252));
    c.window = static_cast<int>(values.get_long("window", 252));
    c.initial_wealth = values.get_double("initial_wealth", 1.0);
    c.signed_premium = values.get_bool("signed_premium", true);
    c.sigma_floor = values.get_double("sigma_floor", kSigmaFloor);
    c.sigma_threshold = values.get_double("sigma_threshold", 0.1);
    if (values.has("strategies")) {
        for (const auto& name : split_list(values.get_string("strategies", ""))) {
            StrategyKind kind;
            kind.id = strategy_from_name(name);
            kind.sigma_threshold = c.sigma_threshold;
            c.strategies.push_back(kind);
        }
        if (c.strategies.empty())
            throw invalid_spec_error("config: 'strategies' is empty");
    }
    return c;
}

HestonParams parse_heston(const KeyValueConfig& values) {
    HestonParams h;
    h.drift_slope = values.get_double("heston_a", 8.5);
    h.reversion = values.get_double("heston_iota", 42.5);
    h.long_run_var = values.get_double("heston_k", 0.01);
    h.vol_of_vol = values.get_double("heston_v", 0.6);
    h.correlation = values.get_double("heston_kappa", -0.7);
    h.initial_var = values.get_double("heston_x0", 0.02);
    return h;
}

std::vector<std::string> heston_keys() {
    return {"heston_a", "heston_iota", "heston_k", "heston_v", "heston_kappa", "heston_x0"};
}

void append_heston_entries(std::vector<ManifestEntry>& entries, const HestonParams& h) {
    entries.push_back({"heston_a", fmt(h.drift_slope)});
    entries.push_back({"heston_iota", fmt(h.reversion)});
    entries.push_back({"heston_k", fmt(h.long_run_var)});
    entries.push_back({"heston_v", fmt(h.vol_of_vol)});
    entries.push_back({"heston_kappa", fmt(h.correlation)});
    entries.push_back({"heston_x0", fmt(h.initial_var)});
}

std::vector<std::string> run_table1_files(const KeyValueConfig& values, const std::string& out_dir) {
    auto known = std::vector<std::string>{"seed", "paths", "risk_free", "sigma_star",
                                          "dt_list", "mu_list"};
    values.require_known(known);

    Table1Config cfg;
    cfg.master_seed = static_cast<std::uint64_t>(values.get_long("seed", 1));
    cfg.repetitions = values.get_long("paths", 10000);
    cfg.risk_free = values.get_double("risk_free", 0.02);
    cfg.sigma_star = values.get_double("sigma_star", 0.1);
    cfg.dts = values.get_double_list("dt_list", cfg.dts);
    cfg.mu_stars = values.get_double_list("mu_list", cfg.mu_stars);

    const Table1Result result = run_table1(cfg);

    const auto dir = prepare_out_dir(out_dir);
    std::vector<std::string> written;
    auto summary = open_data_file(dir, "summary.csv", written);
    summary << "dt,estimator";
    for (double mu : cfg.mu_stars)
        summary << ",mu_" << fmt(mu);
    summary << "\n";
    for (double dt : cfg.dts) {
        summary << fmt(dt) << ",sqrt_ap_std";
        for (double mu : cfg.mu_stars)
            summary << "," << fmt(result.cell(dt, mu).std_sqrt_ap);
        summary << "\n" << fmt(dt) << ",mle_ratio_std";
        for (double mu : cfg.mu_stars)
            summary << "," << fmt(result.cell(dt, mu).std_mle_ratio);
        summary << "\n";
    }
    summary.close();

    auto estimates = open_data_file(dir, "estimates.csv", written);
    estimates << "dt,mu_star,rep,sqrt_ap,mle_ratio\n";
    for (const auto& cell : result.cells) {
        for (std::size_t rep = 0; rep < cell.sqrt_ap.size(); ++rep) {
            estimates << fmt(cell.dt) << "," << fmt(cell.mu_star) << "," << rep << ","
                      << fmt(cell.sqrt_ap[rep]) << "," << fmt(cell.mle_ratio[rep]) << "\n";
        }
    }
    estimates.close();

    std::vector<ManifestEntry> entries;
    entries.push_back({"seed", std::to_string(cfg.master_seed)});
    entries.push_back({"paths", std::to_string(cfg.repetitions)});
    entries.push_back({"risk_free", fmt(cfg.risk_free)});
    entries.push_back({"sigma_star", fmt(cfg.sigma_star)});
    write_manifest(dir, "table1", entries);
    return written;
}

std::vector<std::string> run_gbm_files(const KeyValueConfig& values, const std::string& out_dir) {
    auto known = common_keys();
    known.push_back("gbm_mu_list");
    known.push_back("gbm_sigma");
    values.require_known(known);

    GbmCampaignConfig cfg;
    cfg.common = parse_common(values);
    cfg.mus = values.get_double_list("gbm_mu_list", cfg.mus);
    cfg.sigma = values.get_double("gbm_sigma", 0.1);

    const GbmCampaignResult result = run_gbm_campaign(cfg);

    const auto dir = prepare_out_dir(out_dir);
    std::vector<std::string> written;
    std::vector<std::string> prefixes;
    for (double mu : cfg.mus)
        prefixes.push_back(fmt(mu));

    auto summary = open_data_file(dir, "summary.csv", written);
    write_campaign_summary(summary, "mu", prefixes, result.per_mu, false);
    summary.close();
    auto ledgers = open_data_file(dir, "ledgers.csv", written);
    write_campaign_ledgers(ledgers, "mu", prefixes, result.per_mu, "path");
    ledgers.close();

    std::vector<ManifestEntry> entries;
    append_common_entries(entries, cfg.common);
    entries.push_back({"gbm_sigma", fmt(cfg.sigma)});
    entries.push_back({"strategies", strategy_list_string(result.per_mu.front().strategies)});
    write_manifest(dir, "gbm", entries);
    return written;
}

std::vector<std::string> run_heston_files(const KeyValueConfig& values,
                                          const std::string& out_dir) {
    auto known = common_keys();
    for (const auto& k : heston_keys())
        known.push_back(k);
    known.push_back("full_grid");
    values.require_known(known);

    HestonCampaignConfig cfg;
    cfg.common = parse_common(values);
    cfg.base = parse_heston(values);
    if (values.get_bool("full_grid", false)) {
        cfg.settings.clear();
        for (double reversion : {40.0, 42.5, 45.0})
            for (double correlation : {-0.6, -0.7, -0.8})
                cfg.settings.emplace_back(reversion, correlation);
    } else {
        cfg.settings = {{cfg.base.reversion, cfg.base.correlation}};
    }

    const HestonCampaignResult result = run_heston_campaign(cfg);

    const auto dir = prepare_out_dir(out_dir);
    std::vector<std::string> written;
    std::vector<std::string> prefixes;
    for (const auto& [reversion, correlation] : cfg.settings)
        prefixes.push_back(fmt(reversion) + "," + fmt(correlation));

    auto summary = open_data_file(dir, "summary.csv", written);
    write_campaign_summary(summary, "iota,kappa", prefixes, result.per_setting, true);
    summary.close();
    auto ledgers = open_data_file(dir, "ledgers.csv", written);
    write_campaign_ledgers(ledgers, "iota,kappa", prefixes, result.per_setting, "path");
    ledgers.close();

    std::vector<ManifestEntry> entries;
    append_common_entries(entries, cfg.common);
    append_heston_entries(entries, cfg.base);
    entries.push_back({"full_grid", values.get_bool("full_grid", false) ? "true" : "false"});
    entries.push_back(
        {"strategies", strategy_list_string(result.per_setting.front().strategies)});
    write_manifest(dir, "heston", entries);
    return written;
}

std::vector<std::string> run_ap_traces_files(const KeyValueConfig& values,
                                             const std::string& out_dir) {
    auto known = common_keys();
    for (const auto& k : heston_keys())
        known.push_back(k);
    values.require_known(known);

    ApTracesConfig cfg;
    cfg.common = parse_common(values);
    if (!values.has("paths"))
        cfg.common.n_paths = 6;
    cfg.base = parse_heston(values);

    const ApTracesResult result = run_ap_traces(cfg);

    const auto dir = prepare_out_dir(out_dir);
    std::vector<std::string> written;
    auto traces = open_data_file(dir, "traces.csv", written);
    traces << "sample,step,time,k_hat,k_true\n";
    const double dt = cfg.common.horizon_years / cfg.common.steps;
    for (const auto& trace : result.traces) {
        for (std::size_t k = 0; k < trace.k_hat.size(); ++k) {
            traces << trace.sample << "," << k << "," << fmt(static_cast<double>(k) * dt) << ","
                   << fmt(trace.k_hat[k]) << "," << fmt(trace.k_true) << "\n";
        }
    }
    traces.close();

    std::vector<ManifestEntry> entries;
    append_common_entries(entries, cfg.common);
    append_heston_entries(entries, cfg.base);
    write_manifest(dir, "ap-traces", entries);
    return written;
}

std::vector<std::string> run_real_files(const KeyValueConfig& values, const std::string& out_dir) {
    auto known = common_keys();
    known.push_back("prices");
    values.require_known(known);

    RealMarketConfig cfg;
    cfg.common = parse_common(values);
    for (const auto& file : split_list(values.get_string("prices", "")))
        cfg.price_files.push_back(file);
    if (cfg.price_files.empty())
        throw invalid_spec_error("real experiment needs 'prices' (comma-separated files)");

    const RealMarketResult result = run_real_market(cfg);

    const auto dir = prepare_out_dir(out_dir);
    std::vector<std::string> written;
    auto summary = open_data_file(dir, "summary.csv", written);
    write_campaign_summary(summary, "series", result.labels, result.per_file, false);
    summary.close();
    auto ledgers = open_data_file(dir, "ledgers.csv", written);
    write_campaign_ledgers(ledgers, "series", result.labels, result.per_file, "start");
    ledgers.close();

    std::vector<ManifestEntry> entries;
    append_common_entries(entries, cfg.common);
    entries.push_back({"prices", values.get_string("prices", "")});
    entries.push_back({"strategies", strategy_list_string(result.per_file.front().strategies)});
    write_manifest(dir, "real", entries);
    return written;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentRequest& request) {
    if (request.kind == "table1")
        return run_table1_files(request.values, request.out_dir);
    if (request.kind == "gbm")
        return run_gbm_files(request.values, request.out_dir);
    if (request.kind == "heston")
        return run_heston_files(request.values, request.out_dir);
    if (request.kind == "ap-traces")
        return run_ap_traces_files(request.values, request.out_dir);
    if (request.kind == "real")
        return run_real_files(request.values, request.out_dir);
    throw invalid_spec_error("unknown experiment kind '" + request.kind + "'");
}

}  // namespace mvlab
