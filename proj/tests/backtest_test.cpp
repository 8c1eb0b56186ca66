#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "oracle.hpp"
#include "svport/backtest.hpp"

using namespace svport;

namespace {

std::map<AssetId, double> return_cross_section(const AlignedPanel& panel, std::size_t week) {
    std::map<AssetId, double> out;
    for (std::size_t i = 0; i < panel.returns.assets.size(); ++i) {
        out[panel.returns.assets[i]] = panel.returns.returns.at(i, week);
    }
    return out;
}

}  // namespace

TEST_CASE("portfolio_return is the weighted sum over included assets") {
    WeightVector uniform;
    uniform.weights = {{AssetId{"A"}, 0.5}, {AssetId{"B"}, 0.5}};
    CHECK(portfolio_return(uniform, {{AssetId{"A"}, 0.02}, {AssetId{"B"}, -0.02}}) == 0.0);

    WeightVector tilted;
    tilted.weights = {{AssetId{"A"}, 0.8}, {AssetId{"B"}, 0.2}};
    CHECK(portfolio_return(tilted, {{AssetId{"A"}, 0.01}, {AssetId{"B"}, 0.05}}) ==
          doctest::Approx(0.018).epsilon(1e-14));

    WeightVector single;
    single.weights = {{AssetId{"A"}, 1.0}};
    CHECK(portfolio_return(single, {{AssetId{"A"}, -0.07}}) == -0.07);
}

TEST_CASE("portfolio_return requires a return for every included asset") {
    WeightVector weights;
    weights.weights = {{AssetId{"A"}, 0.5}, {AssetId{"B"}, 0.5}};
    CHECK(helpers::error_code_of([&] {
              portfolio_return(weights, {{AssetId{"A"}, 0.01}});
          }) == ErrorCode::DataGap);

    // Excluded assets do not need a return.
    weights.weights = {{AssetId{"A"}, 1.0}, {AssetId{"B"}, 0.0}};
    weights.excluded = {AssetId{"B"}};
    CHECK(portfolio_return(weights, {{AssetId{"A"}, 0.01}}) == 0.01);
}

TEST_CASE("alpha zero reproduces the equally weighted portfolio") {
    std::mt19937 rng(31u);
    const auto closes = fixtures::random_closes(rng, 6, 30, {0.02, 0.03, 0.01, 0.04, 0.02, 0.03});
    const auto volumes = fixtures::random_volumes(rng, 6, 30, 1.0, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);

    const BacktestResult result = run_backtest(panel, 0.0, TimingMode::InSample);
    REQUIRE(result.portfolio_returns.size() == 29);
    for (std::size_t k = 0; k < result.portfolio_returns.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 6; ++i) sum += panel.returns.returns.at(i, k);
        CHECK(std::abs(result.portfolio_returns[k] - sum / 6.0) <= 1e-15);
    }
}

TEST_CASE("a single-asset panel returns that asset's returns at any alpha") {
    std::mt19937 rng(32u);
    const auto closes = fixtures::random_closes(rng, 1, 20, {0.03});
    const auto volumes = fixtures::random_volumes(rng, 1, 20, 1.0, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);

    for (double alpha : {-2.0, 0.0, 1.3}) {
        const BacktestResult result = run_backtest(panel, alpha, TimingMode::OutOfSample);
        REQUIRE(result.portfolio_returns.size() == 19);
        for (std::size_t k = 0; k < 19; ++k) {
            CHECK(result.portfolio_returns[k] == panel.returns.returns.at(0, k));
        }
    }
}

TEST_CASE("weights pair with the mode-appropriate signal week") {
    std::mt19937 rng(33u);
    const auto closes = fixtures::random_closes(rng, 3, 8, {0.02, 0.02, 0.02});
    const auto volumes = fixtures::random_volumes(rng, 3, 8, 1.0, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);

    const BacktestResult in = run_backtest(panel, 0.9, TimingMode::InSample);
    const BacktestResult oos = run_backtest(panel, 0.9, TimingMode::OutOfSample);
    REQUIRE(in.weeks.size() == 7);
    REQUIRE(oos.weeks.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(in.weeks[k].start_date == panel.prices.weeks[k + 1].start_date);
        CHECK(in.weights_history[k].week.start_date == panel.volumes.weeks[k + 1].start_date);
        CHECK(oos.weeks[k].start_date == panel.prices.weeks[k + 1].start_date);
        CHECK(oos.weights_history[k].week.start_date == panel.volumes.weeks[k].start_date);
    }
}

TEST_CASE("weekly returns are reproducible from the weights history") {
    std::mt19937 rng(34u);
    const auto closes = fixtures::random_closes(rng, 4, 16, {0.02, 0.03, 0.04, 0.02});
    const auto volumes = fixtures::random_volumes(rng, 4, 16, 1.0, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);
    const double cost_rate = 0.002;

    for (TimingMode mode : {TimingMode::InSample, TimingMode::OutOfSample}) {
        const BacktestResult result = run_backtest(panel, 0.7, mode,
                                                   ZeroVolumePolicy::exclude(), cost_rate);
        std::vector<double> prev_drifted;
        for (std::size_t k = 0; k < result.weeks.size(); ++k) {
            const std::size_t week = static_cast<std::size_t>(result.weeks[k].index) - 1;
            const double gross =
                portfolio_return(result.weights_history[k], return_cross_section(panel, week));

            double turnover = 0.0;
            std::size_t i = 0;
            if (!prev_drifted.empty()) {
                for (const auto& [asset, weight] : result.weights_history[k].weights) {
                    turnover += std::abs(weight - prev_drifted[i++]);
                }
                turnover *= 0.5;
            }
            CHECK(result.portfolio_returns[k] == gross - cost_rate * turnover);

            prev_drifted.assign(result.weights_history[k].weights.size(), 0.0);
            double total = 0.0;
            i = 0;
            for (const auto& [asset, weight] : result.weights_history[k].weights) {
                prev_drifted[i] = weight * (1.0 + panel.returns.returns.at(i, week));
                total += prev_drifted[i];
                ++i;
            }
            for (double& w : prev_drifted) w /= total;
        }
    }
}

TEST_CASE("the two modes coincide at alpha zero with no costs") {
    std::mt19937 rng(35u);
    const auto closes = fixtures::random_closes(rng, 5, 25, {0.02, 0.02, 0.03, 0.01, 0.02});
    const auto volumes = fixtures::random_volumes(rng, 5, 25, 1.0, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);

    const BacktestResult in = run_backtest(panel, 0.0, TimingMode::InSample);
    const BacktestResult oos = run_backtest(panel, 0.0, TimingMode::OutOfSample);
    REQUIRE(in.portfolio_returns.size() == oos.portfolio_returns.size());
    for (std::size_t k = 0; k < in.portfolio_returns.size(); ++k) {
        CHECK(in.portfolio_returns[k] == oos.portfolio_returns[k]);
    }
}

TEST_CASE("the first rebalance is never charged and later turnover is") {
    const AlignedPanel panel = fixtures::make_aligned(
        {{100.0, 110.0, 110.0}, {50.0, 50.0, 50.0}},
        {{6.0, 5.0, 4.0}, {6.0, 5.0, 4.0}});

    const BacktestResult result =
        run_backtest(panel, 0.0, TimingMode::InSample, ZeroVolumePolicy::exclude(), 0.21);
    REQUIRE(result.portfolio_returns.size() == 2);
    CHECK(result.portfolio_returns[0] == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(result.portfolio_returns[1] == doctest::Approx(-0.21 * 0.025 / 1.05).epsilon(1e-12));
}

TEST_CASE("uniform weights with cross-sectionally equal returns never pay turnover") {
    const AlignedPanel panel = fixtures::make_aligned(
        {{100.0, 110.0, 121.0}, {200.0, 220.0, 242.0}},
        {{9.0, 2.0, 77.0}, {3.0, 55.0, 1.0}});

    const BacktestResult costless = run_backtest(panel, 0.0, TimingMode::InSample);
    const BacktestResult charged =
        run_backtest(panel, 0.0, TimingMode::InSample, ZeroVolumePolicy::exclude(), 1000.0);
    for (std::size_t k = 0; k < costless.portfolio_returns.size(); ++k) {
        CHECK(charged.portfolio_returns[k] == costless.portfolio_returns[k]);
    }
}

TEST_CASE("weeks whose whole universe is excluded are skipped and reported") {
    const AlignedPanel panel = fixtures::make_aligned(
        {{100.0, 101.0, 102.0, 103.0}, {50.0, 51.0, 52.0, 53.0}},
        {{5.0, 6.0, 0.0, 7.0}, {4.0, 3.0, 0.0, 2.0}});

    const BacktestResult in = run_backtest(panel, 1.0, TimingMode::InSample);
    REQUIRE(in.portfolio_returns.size() == 2);
    REQUIRE(in.skipped.size() == 1);
    CHECK(in.skipped[0].week.start_date == fixtures::sunday(2));
    CHECK(in.skipped[0].reason.find("excluded") != std::string::npos);
    CHECK(in.weeks[0].start_date == fixtures::sunday(1));
    CHECK(in.weeks[1].start_date == fixtures::sunday(3));

    const BacktestResult oos = run_backtest(panel, 1.0, TimingMode::OutOfSample);
    REQUIRE(oos.skipped.size() == 1);
    CHECK(oos.skipped[0].week.start_date == fixtures::sunday(3));

    // Under the floor policy nothing is skipped.
    const BacktestResult floored =
        run_backtest(panel, 1.0, TimingMode::InSample, ZeroVolumePolicy::floor(0.5));
    CHECK(floored.portfolio_returns.size() == 3);
    CHECK(floored.skipped.empty());
}

TEST_CASE("component errors are annotated with the signal week") {
    AlignedPanel panel = fixtures::make_aligned(
        {{100.0, 101.0, 102.0}, {50.0, 51.0, 52.0}}, {{5.0, 6.0, 7.0}, {4.0, -3.0, 2.0}});

    const std::string message = helpers::error_message_of(
        [&] { run_backtest(panel, 1.0, TimingMode::InSample); });
    CHECK(message.find(format_iso_date(fixtures::sunday(1))) != std::string::npos);
    CHECK(helpers::error_code_of([&] { run_backtest(panel, 1.0, TimingMode::InSample); }) ==
          ErrorCode::Domain);
}

TEST_CASE("run_backtest validates its inputs") {
    const AlignedPanel panel =
        fixtures::make_aligned({{100.0, 101.0}}, {{5.0, 6.0}});
    CHECK(helpers::error_code_of([&] {
              run_backtest(panel, std::nan(""), TimingMode::InSample);
          }) == ErrorCode::Validation);
    CHECK(helpers::error_code_of([&] {
              run_backtest(panel, 0.0, TimingMode::InSample, ZeroVolumePolicy::exclude(), -0.1);
          }) == ErrorCode::Validation);

    AlignedPanel tiny = panel;
    tiny.prices.weeks.resize(1);
    CHECK(helpers::error_code_of([&] { run_backtest(tiny, 0.0, TimingMode::InSample); }) ==
          ErrorCode::InsufficientData);
}

TEST_CASE("backtests agree with the straight-line oracle") {
    std::mt19937 rng(36u);
    const auto closes = fixtures::random_closes(rng, 3, 12, {0.02, 0.05, 0.03});
    const auto volumes = fixtures::random_volumes(rng, 3, 12, 0.5, 100.0);
    const AlignedPanel panel = fixtures::make_aligned(closes, volumes);

    for (double alpha : {-1.5, -0.2, 0.4, 2.0}) {
        for (bool oos : {false, true}) {
            const BacktestResult engine = run_backtest(
                panel, alpha, oos ? TimingMode::OutOfSample : TimingMode::InSample);
            const std::vector<double> reference = oracle::backtest(closes, volumes, alpha, oos);
            REQUIRE(engine.portfolio_returns.size() == reference.size());
            for (std::size_t k = 0; k < reference.size(); ++k) {
                CHECK(std::abs(engine.portfolio_returns[k] - reference[k]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("buy_and_hold compounds a single asset") {
    const BacktestResult result = buy_and_hold(fixtures::make_prices({{100.0, 110.0, 99.0}}));
    REQUIRE(result.portfolio_returns.size() == 2);
    CHECK(result.portfolio_returns[0] == doctest::Approx(0.10).epsilon(1e-15));
    CHECK(result.portfolio_returns[1] == doctest::Approx(-0.10).epsilon(1e-15));
    CHECK_FALSE(result.mode.has_value());
    CHECK(result.cost_rate == 0.0);
    for (const WeightVector& w : result.weights_history) {
        CHECK(w.weights.size() == 1);
        CHECK(w.weights.begin()->second == 1.0);
    }

    const BacktestResult flat = buy_and_hold(fixtures::make_prices({{50.0, 50.0, 50.0}}));
    for (double r : flat.portfolio_returns) CHECK(r == 0.0);
}

TEST_CASE("buy_and_hold rejects unusable inputs") {
    CHECK(helpers::error_code_of([] { buy_and_hold(fixtures::make_prices({{100.0}})); }) ==
          ErrorCode::InsufficientData);
    CHECK(helpers::error_code_of([] {
              buy_and_hold(fixtures::make_prices({{100.0, 101.0}, {50.0, 51.0}}));
          }) == ErrorCode::Validation);
}

TEST_CASE("timing mode names") {
    CHECK(to_string(TimingMode::InSample) == "in_sample");
    CHECK(to_string(TimingMode::OutOfSample) == "out_of_sample");
}
