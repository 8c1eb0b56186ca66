#ifndef SVPORT_METRICS_HPP
#define SVPORT_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "svport/backtest.hpp"

namespace svport {

// Weekly-frequency statistics of one return series. sharpe is mean over
// sample standard deviation, with no annualization and no risk-free rate;
// value_path compounds 1 unit through the returns and cumulative_profit is
// its final value minus 1.
struct PerformanceSummary {
    double mean = 0.0;
    double std_dev = 0.0;
    double sharpe = 0.0;
    double cumulative_profit = 0.0;
    std::size_t n_weeks = 0;
    std::vector<double> value_path;
};

// Requires at least 2 returns; a zero-variance series makes the Sharpe ratio
// undefined and is reported as an error, never as a sentinel value.
PerformanceSummary summarize(std::span<const double> returns);
PerformanceSummary summarize(const BacktestResult& result);

// path[k] is the value of 1 unit compounded through returns[0..k].
std::vector<double> value_path(std::span<const double> returns);

// strategy.cumulative_profit - benchmark.cumulative_profit; both summaries
// must cover the same number of weeks.
double cumulative_profit_vs(const PerformanceSummary& benchmark,
                            const PerformanceSummary& strategy);

}  // namespace svport

#endif
