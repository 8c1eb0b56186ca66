#include "svport/metrics.hpp"

#include <cmath>
#include <string>

namespace svport {

namespace {

void check_returns(std::span<const double> returns) {
    for (std::size_t k = 0; k < returns.size(); ++k) {
        if (!std::isfinite(returns[k]) || returns[k] <= -1.0) {
            throw Error(ErrorCode::Validation,
                        "return at position " + std::to_string(k) + " is not a finite value > -1");
        }
    }
}

}  // namespace

PerformanceSummary summarize(std::span<const double> returns) {
    if (returns.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "summary requires at least 2 returns");
    }
    check_returns(returns);

    PerformanceSummary s;
    s.n_weeks = returns.size();

    double sum = 0.0;
    for (double r : returns) sum += r;
    s.mean = sum / static_cast<double>(returns.size());

    double sq = 0.0;
    for (double r : returns) sq += (r - s.mean) * (r - s.mean);
    s.std_dev = std::sqrt(sq / static_cast<double>(returns.size() - 1));

    if (s.std_dev == 0.0) {
        throw Error(ErrorCode::SharpeUndefined, "return series has zero variance");
    }
    s.sharpe = s.mean / s.std_dev;

    s.value_path = value_path(returns);
    s.cumulative_profit = s.value_path.back() - 1.0;

    return s;
}

PerformanceSummary summarize(const BacktestResult& result) {
    return summarize(std::span<const double>(result.portfolio_returns));
}

std::vector<double> value_path(std::span<const double> returns) {
    check_returns(returns);
    std::vector<double> path;
    path.reserve(returns.size());
    double value = 1.0;
    for (double r : returns) {
        value *= 1.0 + r;
        path.push_back(value);
    }
    return path;
}

double cumulative_profit_vs(const PerformanceSummary& benchmark,
                            const PerformanceSummary& strategy) {
    if (benchmark.n_weeks != strategy.n_weeks) {
        throw Error(ErrorCode::Comparability,
                    "summaries cover different week spans (" + std::to_string(strategy.n_weeks) +
                        " vs " + std::to_string(benchmark.n_weeks) + ")");
    }
    return strategy.cumulative_profit - benchmark.cumulative_profit;
}

}  // namespace svport
