#include "svport/backtest.hpp"

#include <cmath>
#include <cstdint>

namespace svport {

std::string_view to_string(TimingMode mode) {
    switch (mode) {
        case TimingMode::InSample: return "in_sample";
        case TimingMode::OutOfSample: return "out_of_sample";
    }
    return "unknown";
}

double portfolio_return(const WeightVector& weights, const std::map<AssetId, double>& returns) {
    double sum = 0.0;
    for (const auto& [asset, weight] : weights.weights) {
        if (weights.excluded.count(asset) != 0) continue;
        auto it = returns.find(asset);
        if (it == returns.end()) {
            throw Error(ErrorCode::DataGap, "no return for asset " + asset.ticker + " in week " +
                                                format_iso_date(weights.week.start_date));
        }
        sum += weight * it->second;
    }
    return sum;
}

BacktestResult run_backtest(const AlignedPanel& panel, double alpha, TimingMode mode,
                            const ZeroVolumePolicy& zero_policy, double cost_rate) {
    if (!std::isfinite(alpha)) {
        throw Error(ErrorCode::Validation, "alpha must be finite");
    }
    if (!std::isfinite(cost_rate) || cost_rate < 0.0) {
        throw Error(ErrorCode::Validation, "cost rate must be finite and non-negative");
    }

    const std::size_t n_assets = panel.prices.assets.size();
    const std::size_t n_weeks = panel.prices.weeks.size();
    if (n_weeks < 2) {
        throw Error(ErrorCode::InsufficientData, "backtest requires at least 2 aligned weeks");
    }
    if (panel.volumes.weeks.size() != n_weeks || panel.returns.weeks.size() != n_weeks - 1 ||
        panel.volumes.assets.size() != n_assets || panel.returns.assets.size() != n_assets) {
        throw Error(ErrorCode::Structural, "panel components have inconsistent shapes");
    }

    auto [volumes, mask] = resolve_zero_volumes(panel.volumes, zero_policy);

    BacktestResult result;
    result.mode = mode;
    result.alpha = alpha;
    result.cost_rate = cost_rate;

    std::vector<double> vol_col(n_assets);
    std::vector<std::uint8_t> included(n_assets);
    std::vector<double> weights(n_assets);
    std::vector<double> prev_drifted(n_assets);
    bool have_prev = false;

    for (std::size_t realized = 1; realized < n_weeks; ++realized) {
        const std::size_t signal = mode == TimingMode::InSample ? realized : realized - 1;
        const WeekId& signal_week = panel.volumes.weeks[signal];
        const WeekId& realized_week = panel.prices.weeks[realized];

        std::size_t n_included = 0;
        for (std::size_t i = 0; i < n_assets; ++i) {
            vol_col[i] = volumes.volume.at(i, signal);
            included[i] = mask.at(i, signal) ? 0 : 1;
            n_included += included[i];
        }
        if (n_included == 0) {
            result.skipped.push_back({realized_week, "all assets excluded in signal week " +
                                                         format_iso_date(signal_week.start_date)});
            continue;
        }

        try {
            weight_cross_section(vol_col, included, alpha, weights);
        } catch (const Error& e) {
            throw Error(e.code(), e.message() + " (signal week " +
                                      format_iso_date(signal_week.start_date) + ")");
        }

        double turnover = 0.0;
        if (have_prev) {
            for (std::size_t i = 0; i < n_assets; ++i) {
                turnover += std::abs(weights[i] - prev_drifted[i]);
            }
            turnover *= 0.5;
        }

        double gross = 0.0;
        for (std::size_t i = 0; i < n_assets; ++i) {
            if (included[i] == 0) continue;
            gross += weights[i] * panel.returns.returns.at(i, realized - 1);
        }
        const double net = gross - cost_rate * turnover;

        WeightVector record;
        record.week = signal_week;
        for (std::size_t i = 0; i < n_assets; ++i) {
            record.weights.emplace_hint(record.weights.end(), panel.prices.assets[i], weights[i]);
            if (included[i] == 0) record.excluded.insert(panel.prices.assets[i]);
        }

        result.weeks.push_back(realized_week);
        result.portfolio_returns.push_back(net);
        result.weights_history.push_back(std::move(record));

        // The drift reference for next week's turnover; skipped weeks leave
        // it untouched because no portfolio is defined across them.
        double drift_total = 0.0;
        for (std::size_t i = 0; i < n_assets; ++i) {
            prev_drifted[i] = weights[i] * (1.0 + panel.returns.returns.at(i, realized - 1));
            drift_total += prev_drifted[i];
        }
        if (drift_total > 0.0) {
            for (std::size_t i = 0; i < n_assets; ++i) prev_drifted[i] /= drift_total;
            have_prev = true;
        } else {
            have_prev = false;
        }
    }

    return result;
}

BacktestResult buy_and_hold(const PricePanel& index_prices) {
    if (index_prices.assets.size() != 1) {
        throw Error(ErrorCode::Validation, "buy-and-hold benchmark requires exactly one asset");
    }
    if (index_prices.weeks.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "benchmark requires at least 2 weeks");
    }

    ReturnPanel returns = compute_returns(index_prices);

    BacktestResult result;
    result.alpha = 0.0;
    result.cost_rate = 0.0;
    for (std::size_t t = 0; t < returns.weeks.size(); ++t) {
        WeightVector record;
        record.week = returns.weeks[t];
        record.weights.emplace(index_prices.assets[0], 1.0);

        result.weeks.push_back(returns.weeks[t]);
        result.portfolio_returns.push_back(returns.returns.at(0, t));
        result.weights_history.push_back(std::move(record));
    }
    return result;
}

}  // namespace svport
