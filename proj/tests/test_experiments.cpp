#include "test_helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mvlab/experiments.hpp"

using namespace mvlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void write_flat_price_file(const std::filesystem::path& file, int rows, double close) {
    std::ofstream out(file);
    out << "date,close\n";
    for (int i = 0; i < rows; ++i) {
        char date[16];
        std::snprintf(date, sizeof(date), "%04d-%02d-%02d", 2000 + i / 144, 1 + (i / 12) % 12,
                      1 + i % 12);
        out << date << "," << close << "\n";
    }
}

}  // namespace

TEST_CASE("key-value config") {
    TempDir dir("mvlab_cfg_test");
    std::filesystem::create_directories(dir.path);
    const auto file = dir.path / "run.cfg";
    {
        std::ofstream out(file);
        out << "# comment\n"
            << "paths = 123\n"
            << "gamma= 2.5\n"
            << "strategies = qv, hold\n"
            << "signed_premium = false\n";
    }
    KeyValueConfig cfg = KeyValueConfig::from_file(file.string());
    CHECK(cfg.get_long("paths", 1) == 123);
    CHECK(cfg.get_double("gamma", 0.0) == 2.5);
    CHECK(cfg.get_bool("signed_premium", true) == false);
    CHECK(cfg.get_string("strategies", "") == "qv, hold");
    CHECK(cfg.get_double("absent", 7.0) == 7.0);

    // command line wins over the file
    cfg.set("paths", "55");
    CHECK(cfg.get_long("paths", 1) == 55);

    CHECK_THROWS_AS(cfg.require_known({"paths", "gamma"}), invalid_spec_error);
    CHECK_THROWS_AS(cfg.get_long("gamma", 0), invalid_spec_error);

    KeyValueConfig bad;
    bad.set("paths", "12x");
    CHECK_THROWS_AS(bad.get_double("paths", 0.0), invalid_spec_error);
}

TEST_CASE("estimator-variance study reproduces the premium-noise pattern") {
    // trimmed repetition count; the full-scale run lives in the acceptance suite
    Table1Config cfg;
    cfg.repetitions = 1200;
    cfg.mu_stars = {0.1};
    const Table1Result result = run_table1(cfg);

    const double monthly = result.cell(21.0 / 252.0, 0.1).std_sqrt_ap;
    const double weekly = result.cell(12.0 / 252.0, 0.1).std_sqrt_ap;
    const double daily = result.cell(1.0 / 252.0, 0.1).std_sqrt_ap;
    CHECK(monthly > weekly);
    CHECK(weekly > daily);
    CHECK(daily > 0.45);
    CHECK(daily < 0.70);

    // the plain MLE ratio keeps its dispersion no matter how fine the grid
    for (double dt : cfg.dts) {
        CHECK(result.cell(dt, 0.1).std_mle_ratio > 0.85);
        CHECK(result.cell(dt, 0.1).std_mle_ratio < 1.25);
    }
}

TEST_CASE("experiment reruns are byte-identical") {
    SUBCASE("table1") {
        TempDir a("mvlab_rep_t1a"), b("mvlab_rep_t1b");
        ExperimentRequest req;
        req.kind = "table1";
        req.values.set("paths", "150");
        req.values.set("mu_list", "0.1");
        req.values.set("seed", "9");
        req.out_dir = a.path.string();
        run_experiment(req);
        req.out_dir = b.path.string();
        run_experiment(req);
        CHECK(slurp(a.path / "summary.csv") == slurp(b.path / "summary.csv"));
        CHECK(!slurp(a.path / "summary.csv").empty());
    }
    SUBCASE("heston campaign") {
        TempDir a("mvlab_rep_ha"), b("mvlab_rep_hb");
        ExperimentRequest req;
        req.kind = "heston";
        req.values.set("paths", "24");
        req.values.set("seed", "5");
        req.values.set("strategies", "qv,hold");
        req.out_dir = a.path.string();
        run_experiment(req);
        req.out_dir = b.path.string();
        run_experiment(req);
        CHECK(slurp(a.path / "summary.csv") == slurp(b.path / "summary.csv"));
        CHECK(slurp(a.path / "ledgers.csv") == slurp(b.path / "ledgers.csv"));
        // a different seed must change the data
        req.values.set("seed", "6");
        TempDir c("mvlab_rep_hc");
        req.out_dir = c.path.string();
        run_experiment(req);
        CHECK(slurp(a.path / "ledgers.csv") != slurp(c.path / "ledgers.csv"));
    }
}

TEST_CASE("manifest carries the seed and the configuration echo") {
    TempDir dir("mvlab_manifest");
    ExperimentRequest req;
    req.kind = "heston";
    req.values.set("paths", "12");
    req.values.set("seed", "77");
    req.values.set("strategies", "hold,mle");
    req.out_dir = dir.path.string();
    run_experiment(req);
    const std::string manifest = slurp(dir.path / "manifest.txt");
    CHECK(manifest.find("experiment = heston") != std::string::npos);
    CHECK(manifest.find("seed = 77") != std::string::npos);
    CHECK(manifest.find("paths = 12") != std::string::npos);
    CHECK(manifest.find("heston_iota = 42.5") != std::string::npos);
    CHECK(manifest.find("written_at = ") != std::string::npos);
}

TEST_CASE("unknown experiment kinds and keys are rejected") {
    ExperimentRequest req;
    req.kind = "warp";
    req.out_dir = "unused";
    CHECK_THROWS_AS(run_experiment(req), invalid_spec_error);

    req.kind = "table1";
    req.values.set("heston_a", "3");  // not a table1 key
    CHECK_THROWS_AS(run_experiment(req), invalid_spec_error);
}

TEST_CASE("profitability traces cover every trading step") {
    ApTracesConfig cfg;
    cfg.common.n_paths = 2;
    cfg.common.master_seed = 3;
    const ApTracesResult result = run_ap_traces(cfg);
    REQUIRE(result.traces.size() == 2);
    for (const auto& trace : result.traces) {
        CHECK(trace.k_hat.size() == 252);
        // truth-implied level for the default market sits near slope^2 * long-run var
        CHECK(trace.k_true > 0.3);
        CHECK(trace.k_true < 1.6);
        for (double k : trace.k_hat)
            CHECK(k >= 0.0);
    }
}

TEST_CASE("flat-market rolling horizons degenerate cleanly") {
    TempDir dir("mvlab_flat_real");
    std::filesystem::create_directories(dir.path);
    const auto price_file = dir.path / "flat.csv";
    write_flat_price_file(price_file, 900, 100.0);

    RealMarketConfig cfg;
    cfg.common.risk_free = 0.0;  // flat closes stay flat after discounting
    cfg.common.n_paths = 0;
    cfg.common.strategies = {StrategyKind{StrategyId::qv, 0.1}, StrategyKind{StrategyId::hold, 0.1}};
    cfg.price_files = {price_file.string()};
    const RealMarketResult result = run_real_market(cfg);

    const auto& campaign = result.per_file.front();
    CHECK(campaign.metrics_of(StrategyId::hold).ceq == 0.0);
    CHECK_FALSE(campaign.metrics_of(StrategyId::hold).sharpe_defined);
    CHECK(campaign.metrics_of(StrategyId::hold).mean_turnover == 0.0);
    CHECK(campaign.metrics_of(StrategyId::qv).ceq == 0.0);
    for (const auto& outcome : campaign.outcomes)
        CHECK(outcome.terminal_wealth == 1.0);
}

TEST_CASE("real experiment writes the summary in the strategies-as-columns layout") {
    TempDir dir("mvlab_real_layout");
    std::filesystem::create_directories(dir.path);
    const auto price_file = dir.path / "series.csv";
    write_flat_price_file(price_file, 800, 50.0);

    ExperimentRequest req;
    req.kind = "real";
    req.values.set("prices", price_file.string());
    req.values.set("risk_free", "0");
    req.values.set("strategies", "qv_or_hold,hold");
    req.out_dir = (dir.path / "out").string();
    run_experiment(req);

    const std::string summary = slurp(dir.path / "out" / "summary.csv");
    CHECK(summary.find("series,metric,qv_or_hold,hold") == 0);
    CHECK(summary.find("series,ceq") != std::string::npos);
    CHECK(summary.find("series,turnover") != std::string::npos);
    const std::string ledgers = slurp(dir.path / "out" / "ledgers.csv");
    CHECK(ledgers.find("start,strategy,terminal_wealth") != std::string::npos);
}

TEST_CASE("a minimal single-path campaign still writes its tables") {
    TempDir dir("mvlab_minimal_heston");
    ExperimentRequest req;
    req.kind = "heston";
    req.values.set("paths", "1");
    req.values.set("strategies", "qv");
    req.out_dir = dir.path.string();
    run_experiment(req);
    const std::string summary = slurp(dir.path / "summary.csv");
    CHECK(summary.find("iota,kappa,metric,qv") == 0);  // requested strategies only
    CHECK(summary.find("hold") == std::string::npos);
    CHECK(summary.find("ceq,nan") != std::string::npos);  // undefined on one path
    const std::string ledgers = slurp(dir.path / "ledgers.csv");
    CHECK(ledgers.find("\n42.5,-0.7,0,qv,") != std::string::npos);
}
