#ifndef SVPORT_BACKTEST_HPP
#define SVPORT_BACKTEST_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svport/trends.hpp"
#include "svport/weighting.hpp"

namespace svport {

// InSample pairs volume week t with return week t (deliberate same-week
// information); OutOfSample pairs volume week t with return week t+1 and is
// implementable in real time.
enum class TimingMode { InSample, OutOfSample };

std::string_view to_string(TimingMode mode);

struct SkippedWeek {
    WeekId week;
    std::string reason;
};

// Weekly rebalanced backtest output. weeks[k] is the realization week of
// portfolio_returns[k]; weights_history[k] is the rebalance feeding it,
// stamped with its signal week.
struct BacktestResult {
    std::optional<TimingMode> mode;
    double alpha = 0.0;
    double cost_rate = 0.0;
    std::vector<WeekId> weeks;
    std::vector<double> portfolio_returns;
    std::vector<WeightVector> weights_history;
    std::vector<SkippedWeek> skipped;
};

// Weighted sum of returns over the vector's included assets.
double portfolio_return(const WeightVector& weights, const std::map<AssetId, double>& returns);

// Runs one weekly rebalanced backtest. Weights come from the mode-appropriate
// volume cross-section after zero resolution; each weekly return is the
// inner product with the mode-appropriate return cross-section minus
// cost_rate times turnover (half the L1 distance between the new weights and
// the previous week's return-drifted weights). Weeks whose exclusion policy
// removes every asset are skipped and reported.
BacktestResult run_backtest(const AlignedPanel& panel, double alpha, TimingMode mode,
                            const ZeroVolumePolicy& zero_policy = ZeroVolumePolicy::exclude(),
                            double cost_rate = 0.0);

// Passive hold of a single-asset index; returns are its weekly returns.
BacktestResult buy_and_hold(const PricePanel& index_prices);

}  // namespace svport

#endif
