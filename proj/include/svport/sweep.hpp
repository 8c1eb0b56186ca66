#ifndef SVPORT_SWEEP_HPP
#define SVPORT_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "svport/metrics.hpp"

namespace svport {

// Evenly spaced alpha grid, endpoints included. Points are generated by
// index (min + k * step) so the count never depends on accumulated error.
struct AlphaGrid {
    double min = -2.0;
    double max = 2.0;
    double step = 0.1;

    std::vector<double> points() const;
};

// One grid point: either a summary or the reason this alpha failed.
struct SweepPoint {
    double alpha = 0.0;
    std::optional<PerformanceSummary> summary;
    std::string skip_reason;
};

struct SweepTable {
    TimingMode mode = TimingMode::InSample;
    AlphaGrid grid;
    std::vector<SweepPoint> points;
};

// Backtests every grid point in ascending alpha order. A point whose
// backtest or summary fails is recorded with its reason instead of aborting
// the sweep.
SweepTable alpha_sweep(const AlignedPanel& panel, const AlphaGrid& grid, TimingMode mode,
                       const ZeroVolumePolicy& zero_policy = ZeroVolumePolicy::exclude(),
                       double cost_rate = 0.0);

struct SweepSelection {
    double alpha = 0.0;
    PerformanceSummary summary;
};

// Ties on the objective prefer the alpha closest to 0, then the smaller
// alpha. Both throw if no grid point produced a summary.
SweepSelection find_min_variance(const SweepTable& table);
SweepSelection find_max_sharpe(const SweepTable& table);

}  // namespace svport

#endif
