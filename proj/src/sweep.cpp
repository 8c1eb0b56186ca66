#include "svport/sweep.hpp"

#include <cmath>

namespace svport {

std::vector<double> AlphaGrid::points() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
        throw Error(ErrorCode::Validation, "alpha grid bounds must be finite");
    }
    if (step <= 0.0) {
        throw Error(ErrorCode::Validation, "alpha grid step must be positive");
    }
    if (max < min) {
        throw Error(ErrorCode::Validation, "alpha grid max must be >= min");
    }

    const std::size_t n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(min + static_cast<double>(k) * step);
    }
    return out;
}

SweepTable alpha_sweep(const AlignedPanel& panel, const AlphaGrid& grid, TimingMode mode,
                       const ZeroVolumePolicy& zero_policy, double cost_rate) {
    SweepTable table;
    table.mode = mode;
    table.grid = grid;

    bool any_summary = false;
    for (double alpha : grid.points()) {
        SweepPoint point;
        point.alpha = alpha;
        try {
            BacktestResult result = run_backtest(panel, alpha, mode, zero_policy, cost_rate);
            point.summary = summarize(result.portfolio_returns);
            any_summary = true;
        } catch (const Error& e) {
            point.skip_reason = e.what();
        }
        table.points.push_back(std::move(point));
    }
    if (!any_summary) {
        throw Error(ErrorCode::EmptySweep, "every grid point failed; first reason: " +
                                               table.points.front().skip_reason);
    }
    return table;
}

namespace {

// less == true selects the minimum of the objective, false the maximum.
template <typename Key>
SweepSelection select(const SweepTable& table, bool less, Key key) {
    const SweepPoint* best = nullptr;
    for (const SweepPoint& point : table.points) {
        if (!point.summary) continue;
        if (best == nullptr) {
            best = &point;
            continue;
        }
        const double kp = key(*point.summary);
        const double kb = key(*best->summary);
        bool better = less ? kp < kb : kp > kb;
        if (!better && kp == kb) {
            better = std::abs(point.alpha) < std::abs(best->alpha) ||
                     (std::abs(point.alpha) == std::abs(best->alpha) && point.alpha < best->alpha);
        }
        if (better) best = &point;
    }
    if (best == nullptr) {
        throw Error(ErrorCode::EmptySweep, "no grid point produced a summary");
    }
    return {best->alpha, *best->summary};
}

}  // namespace

SweepSelection find_min_variance(const SweepTable& table) {
    return select(table, true, [](const PerformanceSummary& s) { return s.std_dev; });
}

SweepSelection find_max_sharpe(const SweepTable& table) {
    return select(table, false, [](const PerformanceSummary& s) { return s.sharpe; });
}

}  // namespace svport
