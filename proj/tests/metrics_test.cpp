#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "svport/backtest.hpp"
#include "svport/metrics.hpp"

using namespace svport;

TEST_CASE("summarize on a symmetric two-week series") {
    const std::vector<double> returns = {0.10, -0.10};
    const PerformanceSummary summary = summarize(returns);
    CHECK(summary.mean == 0.0);
    CHECK(summary.sharpe == 0.0);
    CHECK(summary.std_dev == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(summary.n_weeks == 2);
    REQUIRE(summary.value_path.size() == 2);
    CHECK(summary.value_path[0] == doctest::Approx(1.10).epsilon(1e-15));
    CHECK(summary.value_path[1] == doctest::Approx(0.99).epsilon(1e-14));
    CHECK(summary.cumulative_profit == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(summary.cumulative_profit == summary.value_path.back() - 1.0);
}

TEST_CASE("summarize uses the sample standard deviation") {
    const PerformanceSummary summary = summarize(std::vector<double>{0.01, 0.03});
    CHECK(summary.mean == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(summary.std_dev == doctest::Approx(std::sqrt(2.0) / 100.0).epsilon(1e-12));
    CHECK(summary.sharpe == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("zero variance makes the Sharpe ratio an error, not a sentinel") {
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{0.0, 0.0, 0.0}); }) ==
          ErrorCode::SharpeUndefined);
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{0.02, 0.02}); }) ==
          ErrorCode::SharpeUndefined);
}

TEST_CASE("summarize needs at least two returns") {
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{}); }) ==
          ErrorCode::InsufficientData);
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{0.05}); }) ==
          ErrorCode::InsufficientData);
}

TEST_CASE("summarize rejects unusable returns") {
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{0.01, -1.0}); }) ==
          ErrorCode::Validation);
    CHECK(helpers::error_code_of([] { summarize(std::vector<double>{0.01, -1.5}); }) ==
          ErrorCode::Validation);
    CHECK(helpers::error_code_of([] {
              summarize(std::vector<double>{0.01, std::nan("")});
          }) == ErrorCode::Validation);
}

TEST_CASE("scaling returns by a positive constant leaves the Sharpe ratio unchanged") {
    std::mt19937 rng(41u);
    std::vector<double> returns(60);
    for (double& r : returns) r = 0.02 * fixtures::normal(rng);

    const PerformanceSummary base = summarize(returns);
    for (double c : {0.5, 3.0}) {
        std::vector<double> scaled = returns;
        for (double& r : scaled) r *= c;
        const PerformanceSummary s = summarize(scaled);
        CHECK(s.mean == doctest::Approx(c * base.mean).epsilon(1e-12));
        CHECK(s.std_dev == doctest::Approx(c * base.std_dev).epsilon(1e-12));
        CHECK(s.sharpe == doctest::Approx(base.sharpe).epsilon(1e-12));
    }
}

TEST_CASE("the value path compounds multiplicatively") {
    std::mt19937 rng(42u);
    std::vector<double> a(15), b(25);
    for (double& r : a) r = 0.03 * fixtures::normal(rng);
    for (double& r : b) r = 0.03 * fixtures::normal(rng);

    const std::vector<double> path_a = value_path(a);
    const std::vector<double> path_b = value_path(b);
    std::vector<double> joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    const std::vector<double> path_joined = value_path(joined);

    REQUIRE(path_joined.size() == a.size() + b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(path_joined[k] == path_a[k]);
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
        CHECK(path_joined[a.size() + k] ==
              doctest::Approx(path_a.back() * path_b[k]).epsilon(1e-12));
    }
    for (double v : path_joined) CHECK(v > 0.0);
}

TEST_CASE("a constant return compounds to the closed form") {
    const double r = 0.004;
    const std::size_t n = 120;
    const std::vector<double> path = value_path(std::vector<double>(n, r));
    REQUIRE(path.size() == n);
    CHECK(path.back() - 1.0 ==
          doctest::Approx(std::pow(1.0 + r, static_cast<double>(n)) - 1.0).epsilon(1e-12));
}

TEST_CASE("summarize accepts a backtest result directly") {
    const AlignedPanel panel = fixtures::make_aligned(
        {{100.0, 104.0, 101.0, 103.0}, {50.0, 51.0, 53.0, 50.0}},
        {{5.0, 6.0, 7.0, 8.0}, {8.0, 7.0, 6.0, 5.0}});
    const BacktestResult result = run_backtest(panel, 0.5, TimingMode::InSample);
    const PerformanceSummary from_result = summarize(result);
    const PerformanceSummary from_returns = summarize(result.portfolio_returns);
    CHECK(from_result.mean == from_returns.mean);
    CHECK(from_result.std_dev == from_returns.std_dev);
    CHECK(from_result.sharpe == from_returns.sharpe);
    CHECK(from_result.cumulative_profit == from_returns.cumulative_profit);
    CHECK(from_result.n_weeks == from_returns.n_weeks);
}

TEST_CASE("cumulative_profit_vs subtracts the benchmark's profit") {
    PerformanceSummary benchmark;
    benchmark.cumulative_profit = 0.38;
    benchmark.n_weeks = 100;
    PerformanceSummary strategy;
    strategy.cumulative_profit = 1.63;
    strategy.n_weeks = 100;
    CHECK(cumulative_profit_vs(benchmark, strategy) == doctest::Approx(1.25).epsilon(1e-12));

    benchmark.cumulative_profit = 0.62;
    strategy.cumulative_profit = 0.88;
    CHECK(cumulative_profit_vs(benchmark, strategy) == doctest::Approx(0.26).epsilon(1e-12));

    strategy.cumulative_profit = benchmark.cumulative_profit;
    CHECK(cumulative_profit_vs(benchmark, strategy) == 0.0);
}

TEST_CASE("profits over different week spans are not comparable") {
    PerformanceSummary benchmark;
    benchmark.cumulative_profit = 0.38;
    benchmark.n_weeks = 100;
    PerformanceSummary strategy;
    strategy.cumulative_profit = 1.63;
    strategy.n_weeks = 99;
    CHECK(helpers::error_code_of([&] { cumulative_profit_vs(benchmark, strategy); }) ==
          ErrorCode::Comparability);
}
