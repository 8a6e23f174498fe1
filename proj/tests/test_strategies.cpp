#include "test_helpers.hpp"

#include <cmath>
#include <random>

#include "mvlab/strategies.hpp"

using namespace mvlab;

namespace {

const RiskPreferences kPrefs{1.4, 0.02};

}  // namespace

TEST_CASE("pre-commitment position, hand-worked values") {
    const PortfolioState at_start{1.0, 1.0, 0.0};

    SUBCASE("zero current profitability means zero position") {
        CHECK(theta_precommit(at_start, 0.64, 0.0, 0.1, 1.0, kPrefs, 1.0) == 0.0);
        CHECK(theta_precommit(at_start, 3.0, 0.0, 0.2, -1.0, kPrefs, 1.0) == 0.0);
    }
    SUBCASE("paper-scale constant case") {
        const double theta = theta_precommit(at_start, 0.64, 0.64, 0.1, 1.0, kPrefs, 1.0);
        CHECK(theta == doctest::Approx(std::exp(0.64) / 2.8 * 8.0).epsilon(1e-12));
        CHECK_CLOSE(theta, 5.4185, 1e-4);
    }
    SUBCASE("doubling the horizon profitability grows the position exponentially") {
        const double theta = theta_precommit(at_start, 1.28, 0.64, 0.1, 1.0, kPrefs, 1.0);
        CHECK(theta == doctest::Approx(std::exp(1.28) / 2.8 * 8.0).epsilon(1e-12));
        CHECK_CLOSE(theta, 10.276, 1e-3);
    }
}

TEST_CASE("pre-commitment position is monotone and exponential in the horizon profitability") {
    const PortfolioState state{0.8, 1.0, 0.3};
    double prev = -1e300;
    for (double k_hat : {0.0, 0.1, 0.4, 0.9, 1.6, 2.5}) {
        const double theta = theta_precommit(state, k_hat, 0.5, 0.12, 1.0, kPrefs, 1.0);
        CHECK(theta > prev);
        prev = theta;
    }
    // scaling: theta(k2) - theta(k1) is driven by (e^{k2 T} - e^{k1 T}) / (2 gamma)
    const double t1 = theta_precommit(state, 0.4, 0.5, 0.12, 1.0, kPrefs, 1.0);
    const double t2 = theta_precommit(state, 0.9, 0.5, 0.12, 1.0, kPrefs, 1.0);
    const double factor = std::sqrt(0.5) / 0.12;
    CHECK(t2 - t1 ==
          doctest::Approx((std::exp(0.9) - std::exp(0.4)) / 2.8 * factor).epsilon(1e-12));
}

TEST_CASE("pre-commitment equals the constant-premium policy when fed its own square") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        ParamEstimate est;
        est.sigma_hat = 0.05 + 0.4 * u01(rng);
        const double prem = -2.0 + 4.0 * u01(rng);
        est.mu_hat = 0.02 + prem * est.sigma_hat;
        const PortfolioState state{0.2 + 2.0 * u01(rng), 1.0, 0.0};
        const double horizon = 0.25 + u01(rng);

        const double premium_sq = prem * prem;
        const double sign = prem < 0.0 ? -1.0 : 1.0;
        const double a = theta_precommit(state, premium_sq, premium_sq, est.sigma_hat, sign,
                                         kPrefs, horizon);
        const double b = theta_strategy_mle(state, est, kPrefs, horizon);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("constant-premium policy, hand-worked values") {
    ParamEstimate est;
    est.mu_hat = 0.1;
    est.sigma_hat = 0.1;

    SUBCASE("zero premium is flat") {
        ParamEstimate flat;
        flat.mu_hat = 0.02;
        flat.sigma_hat = 0.3;
        CHECK(theta_strategy_mle({1.0, 1.0, 0.0}, flat, kPrefs, 1.0) == 0.0);
    }
    SUBCASE("at the starting wealth") {
        CHECK_CLOSE(theta_strategy_mle({1.0, 1.0, 0.0}, est, kPrefs, 1.0), 5.4185, 1e-4);
    }
    SUBCASE("above the starting wealth the position shrinks") {
        const double theta = theta_strategy_mle({1.5, 1.0, 0.0}, est, kPrefs, 1.0);
        CHECK(theta == doctest::Approx((-1.5 + 1.0 + std::exp(0.64) / 2.8) * 8.0).epsilon(1e-12));
        CHECK_CLOSE(theta, 1.41851, 1e-4);
    }
}

TEST_CASE("volatility clamping is reported") {
    bool clamped = false;
    ParamEstimate est;
    est.mu_hat = 0.02 + 1e-6;
    est.sigma_hat = 0.0;
    const double theta = theta_strategy_mle({1.0, 1.0, 0.0}, est, kPrefs, 1.0, 1e-4, &clamped);
    CHECK(clamped);
    CHECK(std::isfinite(theta));
    CHECK(theta == doctest::Approx(std::exp(0.01 * 0.01) / 2.8 * 100.0).epsilon(1e-9));

    clamped = false;
    theta_precommit({1.0, 1.0, 0.0}, 0.1, 0.1, 0.0, 1.0, kPrefs, 1.0, 1e-4, &clamped);
    CHECK(clamped);
}

TEST_CASE("buy and hold invests the whole current wealth") {
    CHECK(theta_buy_and_hold({1.0, 1.0, 0.0}) == 1.0);
    CHECK(theta_buy_and_hold({1.3, 1.0, 0.5}) == 1.3);
    CHECK(theta_buy_and_hold({-0.2, 1.0, 0.5}) == -0.2);
}

TEST_CASE("volatility-gated combination") {
    ParamEstimate est;
    est.sigma_hat = 0.05;
    CHECK(theta_combined(est, 2.5, 1.0, 0.1) == 2.5);
    est.sigma_hat = 0.25;
    CHECK(theta_combined(est, 2.5, 1.0, 0.1) == 1.0);
    est.sigma_hat = 0.1;  // boundary falls to the hold branch
    CHECK(theta_combined(est, 2.5, 1.0, 0.1) == 1.0);
}

TEST_CASE("strategy names round-trip") {
    for (StrategyId id : {StrategyId::qv, StrategyId::mle, StrategyId::hold, StrategyId::oracle,
                          StrategyId::qv_or_hold})
        CHECK(strategy_from_name(strategy_name(id)) == id);
    CHECK_THROWS_AS(strategy_from_name("nope"), invalid_spec_error);
}

TEST_CASE("bad inputs are rejected") {
    CHECK_THROWS_AS(theta_precommit({1.0, 1.0, 0.0}, -0.1, 0.5, 0.1, 1.0, kPrefs, 1.0),
                    invalid_spec_error);
    RiskPreferences bad{0.0, 0.02};
    CHECK_THROWS_AS(theta_precommit({1.0, 1.0, 0.0}, 0.1, 0.5, 0.1, 1.0, bad, 1.0),
                    invalid_spec_error);
}
