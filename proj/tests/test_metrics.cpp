#include "test_helpers.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mvlab/metrics.hpp"
#include "mvlab/stats.hpp"

using namespace mvlab;

TEST_CASE("certainty-equivalent return") {
    SUBCASE("zero variance collapses to the mean") {
        ReturnSample s{{0.05, 0.05, 0.05}, 0.02, 1.4};
        CHECK(ceq(s) == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("hand-worked two-point sample, population variance") {
        ReturnSample s{{0.0, 0.1}, 0.02, 1.4};
        CHECK(ceq(s) == doctest::Approx(0.05 - 1.4 * 0.0025).epsilon(1e-12));
        CHECK(ceq(s) == doctest::Approx(0.0465).epsilon(1e-12));
    }
    SUBCASE("too small a sample") {
        ReturnSample s{{0.1}, 0.02, 1.4};
        CHECK_THROWS_AS(ceq(s), metric_error);
    }
    SUBCASE("never exceeds the mean, equality only at zero variance") {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> normal(0.05, 0.2);
        for (int rep = 0; rep < 200; ++rep) {
            ReturnSample s;
            s.gamma = 0.1 + 3.0 * std::abs(normal(rng));
            for (int i = 0; i < 30; ++i)
                s.returns.push_back(normal(rng));
            CHECK(ceq(s) < stats::mean(s.returns));
        }
    }
}

TEST_CASE("sharpe ratio") {
    SUBCASE("hand-worked two-point sample") {
        ReturnSample s{{0.0, 0.1}, 0.02, 1.4};
        CHECK(sharpe(s) == doctest::Approx(0.6).epsilon(1e-12));
    }
    SUBCASE("degenerate spread is an error") {
        ReturnSample s{{0.03, 0.03, 0.03}, 0.02, 1.4};
        CHECK_THROWS_AS(sharpe(s), metric_error);
    }
    SUBCASE("invariant under shifting returns and the rate together") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> normal(0.08, 0.15);
        for (int rep = 0; rep < 100; ++rep) {
            ReturnSample s;
            s.risk_free = 0.02;
            for (int i = 0; i < 50; ++i)
                s.returns.push_back(normal(rng));
            ReturnSample shifted = s;
            const double c = normal(rng);
            shifted.risk_free += c;
            for (double& r : shifted.returns)
                r += c;
            CHECK(sharpe(shifted) == doctest::Approx(sharpe(s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("turnover") {
    SUBCASE("single rebalance, hand-worked") {
        // drifted weight 5.4185 * 1.01 / 1.054185 vs new weight 5 / 1.054185
        const std::vector<double> positions{5.4185, 5.0};
        const std::vector<double> wealth{1.0, 1.054185, 1.054185 + 5.0 * 0.01 / 1.01};
        const std::vector<double> prices{1.0, 1.01, 1.02};
        const double tr = turnover(positions, wealth, prices);
        CHECK(tr == doctest::Approx((5.4185 * 1.01 - 5.0) / 1.054185).epsilon(1e-12));
        CHECK_CLOSE(tr, 0.448390, 1e-5);
    }
    SUBCASE("trade-free strategies report exactly zero") {
        const std::vector<double> positions{1.0, 1.01};
        const std::vector<double> wealth{1.0, 1.01, 1.0302};
        const std::vector<double> prices{1.0, 1.01, 1.02};
        CHECK(turnover(positions, wealth, prices, true) == 0.0);
    }
    SUBCASE("non-negative on random ledgers") {
        std::mt19937_64 rng(23);
        std::normal_distribution<double> normal(0.0, 0.01);
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> prices{1.0};
            std::vector<double> positions;
            std::vector<double> wealth{1.0};
            for (int i = 0; i < 30; ++i) {
                prices.push_back(prices.back() * std::exp(normal(rng)));
                positions.push_back(normal(rng) * 50.0);
            }
            for (int i = 0; i < 30; ++i) {
                const double ret = prices[i + 1] / prices[i] - 1.0;
                wealth.push_back(wealth.back() + positions[i] * ret);
            }
            CHECK(turnover(positions, wealth, prices) >= 0.0);
        }
    }
    SUBCASE("zero wealth at a rebalance is an error") {
        const std::vector<double> positions{1.0, 1.0};
        const std::vector<double> wealth{1.0, 0.0, 1.0};
        const std::vector<double> prices{1.0, 1.01, 1.02};
        CHECK_THROWS_AS(turnover(positions, wealth, prices), metric_error);
    }
}

TEST_CASE("welch test") {
    SUBCASE("identical samples") {
        const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
        const auto res = welch_test(x, x);
        CHECK(res.t == 0.0);
        CHECK(res.p == doctest::Approx(1.0));
    }
    SUBCASE("clearly separated samples") {
        const std::vector<double> x{1.0, 2.0, 3.0};
        const std::vector<double> y{11.0, 12.0, 13.0};
        const auto res = welch_test(x, y);
        CHECK(res.p < 0.01);
        CHECK(res.t < 0.0);
    }
    SUBCASE("degenerate variance is an error") {
        const std::vector<double> x{1.0, 1.0, 1.0};
        const std::vector<double> y{1.0, 2.0, 3.0};
        CHECK_THROWS_AS(welch_test(x, y), metric_error);
    }
    SUBCASE("null distribution of p is roughly uniform") {
        std::mt19937_64 rng(29);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int reps = 400;
        int below_tenth = 0, below_half = 0;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<double> x(200), y(200);
            for (auto& v : x) v = normal(rng);
            for (auto& v : y) v = normal(rng);
            const double p = welch_test(x, y).p;
            below_tenth += p < 0.1;
            below_half += p < 0.5;
        }
        CHECK_CLOSE(below_tenth / static_cast<double>(reps), 0.10, 0.06);
        CHECK_CLOSE(below_half / static_cast<double>(reps), 0.50, 0.10);
    }
}

TEST_CASE("student-t tail probabilities match table values") {
    CHECK(stats::student_t_two_sided_p(0.0, 10.0) == doctest::Approx(1.0));
    CHECK_CLOSE(stats::student_t_two_sided_p(2.0, 10.0), 0.0734, 1e-3);
    CHECK_CLOSE(stats::student_t_two_sided_p(1.96, 1e9), 0.05, 1e-3);
    CHECK(stats::student_t_two_sided_p(50.0, 5.0) < 1e-6);
}

TEST_CASE("incomplete beta sanity") {
    CHECK(stats::incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(stats::incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1, 1) = x
    CHECK(stats::incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-10));
    // symmetry I_x(a, b) = 1 - I_{1-x}(b, a)
    CHECK(stats::incomplete_beta(2.5, 4.0, 0.3) ==
          doctest::Approx(1.0 - stats::incomplete_beta(4.0, 2.5, 0.7)).epsilon(1e-10));
}
