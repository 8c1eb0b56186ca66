#include "svport/panel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace svport {

bool is_valid_ticker(std::string_view ticker) {
    if (ticker.empty() || ticker.size() > 6) return false;
    for (char c : ticker) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.';
        if (!ok) return false;
    }
    return true;
}

namespace {

int week_offset(const std::vector<WeekId>& calendar, Date week_start) {
    auto diff = week_start - calendar.front().start_date;
    if (diff.count() < 0) return -1;
    int offset = static_cast<int>(diff.count() / 7);
    if (offset >= static_cast<int>(calendar.size())) return -1;
    return offset;
}

}  // namespace

PricePanel align_to_weeks(const std::vector<PriceObservation>& observations,
                          const std::vector<WeekId>& calendar) {
    if (calendar.empty())
        throw Error(ErrorCode::Validation, "week calendar is empty");
    if (!is_contiguous(calendar))
        throw Error(ErrorCode::Validation, "week calendar is not contiguous Sundays");

    std::set<AssetId> asset_set;
    std::set<std::pair<Date, AssetId>> seen;
    for (const auto& obs : observations) {
        if (!is_valid_ticker(obs.asset.ticker))
            throw Error(ErrorCode::Validation, "invalid ticker '" + obs.asset.ticker + "'");
        if (!(obs.close > 0.0) || !std::isfinite(obs.close))
            throw Error(ErrorCode::Validation,
                        "non-positive close " + std::to_string(obs.close) + " for " + obs.asset.ticker +
                            " on " + format_iso_date(obs.date));
        if (!seen.insert({obs.date, obs.asset}).second)
            throw Error(ErrorCode::Validation, "duplicate observation for " + obs.asset.ticker + " on " +
                                                   format_iso_date(obs.date));
        asset_set.insert(obs.asset);
    }
    if (asset_set.empty())
        throw Error(ErrorCode::Validation, "no price observations");

    std::vector<AssetId> assets(asset_set.begin(), asset_set.end());
    std::map<AssetId, size_t> asset_index;
    for (size_t i = 0; i < assets.size(); ++i) asset_index[assets[i]] = i;

    // Last observation date and close per (asset, calendar week). Observations
    // outside the calendar window are ignored.
    struct Cell {
        Date date{};
        double close = 0.0;
        bool filled = false;
    };
    std::vector<Cell> cells(assets.size() * calendar.size());
    for (const auto& obs : observations) {
        int w = week_offset(calendar, week_start_of(obs.date));
        if (w < 0) continue;
        Cell& cell = cells[asset_index[obs.asset] * calendar.size() + w];
        if (!cell.filled || obs.date > cell.date) {
            cell.date = obs.date;
            cell.close = obs.close;
            cell.filled = true;
        }
    }

    // Drop weeks in which no asset traded at all.
    std::vector<size_t> retained;
    for (size_t w = 0; w < calendar.size(); ++w) {
        bool any = false;
        for (size_t i = 0; i < assets.size() && !any; ++i) any = cells[i * calendar.size() + w].filled;
        if (any) retained.push_back(w);
    }
    if (retained.empty())
        throw Error(ErrorCode::Validation, "no observation falls inside the calendar");

    // Within a retained week every asset must have traded.
    std::string gaps;
    for (size_t w : retained) {
        for (size_t i = 0; i < assets.size(); ++i) {
            if (!cells[i * calendar.size() + w].filled) {
                if (!gaps.empty()) gaps += "; ";
                gaps += assets[i].ticker + " @ " + format_iso_date(calendar[w].start_date);
            }
        }
    }
    if (!gaps.empty())
        throw Error(ErrorCode::DataGap, "missing closes: " + gaps);

    PricePanel panel;
    panel.assets = std::move(assets);
    panel.weeks.reserve(retained.size());
    for (size_t w : retained) panel.weeks.push_back(calendar[w]);
    reindex(panel.weeks);
    panel.close = Matrix(panel.assets.size(), panel.weeks.size());
    for (size_t i = 0; i < panel.assets.size(); ++i)
        for (size_t k = 0; k < retained.size(); ++k)
            panel.close.at(i, k) = cells[i * calendar.size() + retained[k]].close;
    return panel;
}

ReturnPanel compute_returns(const PricePanel& prices) {
    if (prices.weeks.size() < 2)
        throw Error(ErrorCode::InsufficientData,
                    "need at least 2 weeks to compute returns, have " + std::to_string(prices.weeks.size()));

    ReturnPanel result;
    result.assets = prices.assets;
    result.weeks.assign(prices.weeks.begin() + 1, prices.weeks.end());
    reindex(result.weeks);
    result.returns = Matrix(prices.assets.size(), prices.weeks.size() - 1);
    for (size_t i = 0; i < prices.assets.size(); ++i) {
        for (size_t t = 1; t < prices.weeks.size(); ++t) {
            double prev = prices.close.at(i, t - 1);
            double cur = prices.close.at(i, t);
            if (!(prev > 0.0) || !std::isfinite(prev) || !(cur > 0.0) || !std::isfinite(cur))
                throw Error(ErrorCode::Validation, "non-positive price for " + prices.assets[i].ticker +
                                                       " at week " + format_iso_date(prices.weeks[t].start_date));
            result.returns.at(i, t - 1) = (cur - prev) / prev;
        }
    }
    return result;
}

namespace {

void check_weeks_shape(const std::vector<WeekId>& weeks, const std::string& panel_name,
                       std::vector<Diagnostic>& out) {
    for (size_t t = 0; t < weeks.size(); ++t) {
        if (!is_sunday(weeks[t].start_date))
            out.push_back({"", format_iso_date(weeks[t].start_date), panel_name + " week does not start on a Sunday"});
        if (t > 0 && weeks[t].start_date - weeks[t - 1].start_date != std::chrono::days{7})
            out.push_back({"", format_iso_date(weeks[t].start_date), panel_name + " weeks are not 7 days apart"});
        if (static_cast<int>(t) != weeks[t].index)
            out.push_back({"", format_iso_date(weeks[t].start_date), panel_name + " week index out of order"});
    }
}

}  // namespace

std::vector<Diagnostic> validate_panel(const AlignedPanel& panel) {
    std::vector<Diagnostic> diags;

    const auto& assets = panel.prices.assets;
    for (size_t i = 0; i < assets.size(); ++i) {
        if (!is_valid_ticker(assets[i].ticker))
            diags.push_back({assets[i].ticker, "", "invalid ticker"});
        if (i > 0 && !(assets[i - 1] < assets[i]))
            diags.push_back({assets[i].ticker, "", "asset list not sorted/unique"});
    }
    if (panel.returns.assets != assets)
        diags.push_back({"", "", "return panel asset list differs from price panel"});
    if (panel.volumes.assets != assets)
        diags.push_back({"", "", "volume panel asset list differs from price panel"});

    check_weeks_shape(panel.prices.weeks, "price", diags);

    if (!same_week_dates(panel.volumes.weeks, panel.prices.weeks))
        diags.push_back({"", "", "volume week calendar does not match price week calendar"});
    std::vector<WeekId> tail;
    if (!panel.prices.weeks.empty())
        tail.assign(panel.prices.weeks.begin() + 1, panel.prices.weeks.end());
    if (!same_week_dates(panel.returns.weeks, tail))
        diags.push_back({"", "", "return week calendar does not start at the price panel's second week"});

    auto check_dims = [&](const Matrix& m, const std::vector<WeekId>& weeks, const char* name) {
        if (m.rows() != assets.size() || m.cols() != weeks.size()) {
            diags.push_back({"", "", std::string(name) + " matrix dimensions do not match assets x weeks"});
            return false;
        }
        return true;
    };

    if (check_dims(panel.prices.close, panel.prices.weeks, "price")) {
        for (size_t i = 0; i < assets.size(); ++i)
            for (size_t t = 0; t < panel.prices.weeks.size(); ++t) {
                double p = panel.prices.close.at(i, t);
                if (!std::isfinite(p) || p <= 0.0)
                    diags.push_back({assets[i].ticker, format_iso_date(panel.prices.weeks[t].start_date),
                                     "non-positive or non-finite price"});
            }
    }
    if (check_dims(panel.returns.returns, panel.returns.weeks, "return")) {
        for (size_t i = 0; i < assets.size(); ++i)
            for (size_t t = 0; t < panel.returns.weeks.size(); ++t) {
                double r = panel.returns.returns.at(i, t);
                if (!std::isfinite(r) || r <= -1.0)
                    diags.push_back({assets[i].ticker, format_iso_date(panel.returns.weeks[t].start_date),
                                     "return not finite or not > -1"});
            }
    }
    if (check_dims(panel.volumes.volume, panel.volumes.weeks, "volume")) {
        for (size_t i = 0; i < assets.size(); ++i)
            for (size_t t = 0; t < panel.volumes.weeks.size(); ++t) {
                double v = panel.volumes.volume.at(i, t);
                if (!std::isfinite(v))
                    diags.push_back({assets[i].ticker, format_iso_date(panel.volumes.weeks[t].start_date),
                                     "non-finite volume"});
                else if (v < 0.0)
                    diags.push_back({assets[i].ticker, format_iso_date(panel.volumes.weeks[t].start_date),
                                     "negative volume"});
            }
    }
    return diags;
}

AlignedPanel align_panels(const PricePanel& prices, const VolumePanel& volumes) {
    std::vector<AssetId> common;
    {
        std::set<AssetId> price_assets(prices.assets.begin(), prices.assets.end());
        for (const auto& a : volumes.assets)
            if (price_assets.count(a)) common.push_back(a);
        std::sort(common.begin(), common.end());
    }
    if (common.empty())
        throw Error(ErrorCode::Structural, "price and volume panels share no asset");

    // Overlapping week range, matched on start dates.
    Date lo = std::max(prices.weeks.front().start_date, volumes.weeks.front().start_date);
    Date hi = std::min(prices.weeks.back().start_date, volumes.weeks.back().start_date);
    if (hi < lo)
        throw Error(ErrorCode::CalendarMismatch, "price and volume panels share no week");

    auto restrict_weeks = [&](const std::vector<WeekId>& weeks) {
        std::vector<size_t> idx;
        for (size_t t = 0; t < weeks.size(); ++t)
            if (weeks[t].start_date >= lo && weeks[t].start_date <= hi) idx.push_back(t);
        return idx;
    };
    auto price_weeks = restrict_weeks(prices.weeks);
    auto volume_weeks = restrict_weeks(volumes.weeks);
    if (price_weeks.size() != volume_weeks.size())
        throw Error(ErrorCode::CalendarMismatch, "price and volume calendars disagree inside the overlap");

    auto index_of = [](const std::vector<AssetId>& list, const AssetId& a) {
        return static_cast<size_t>(std::find(list.begin(), list.end(), a) - list.begin());
    };

    AlignedPanel panel;
    panel.prices.assets = common;
    panel.volumes.assets = common;
    for (size_t k = 0; k < price_weeks.size(); ++k) {
        panel.prices.weeks.push_back(prices.weeks[price_weeks[k]]);
        panel.volumes.weeks.push_back(volumes.weeks[volume_weeks[k]]);
    }
    reindex(panel.prices.weeks);
    reindex(panel.volumes.weeks);

    panel.prices.close = Matrix(common.size(), price_weeks.size());
    panel.volumes.volume = Matrix(common.size(), volume_weeks.size());
    for (size_t i = 0; i < common.size(); ++i) {
        size_t pi = index_of(prices.assets, common[i]);
        size_t vi = index_of(volumes.assets, common[i]);
        for (size_t k = 0; k < price_weeks.size(); ++k) {
            panel.prices.close.at(i, k) = prices.close.at(pi, price_weeks[k]);
            panel.volumes.volume.at(i, k) = volumes.volume.at(vi, volume_weeks[k]);
        }
    }
    panel.returns = compute_returns(panel.prices);
    return panel;
}

}  // namespace svport
