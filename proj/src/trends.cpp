#include "svport/trends.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace svport {

namespace {

double series_mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<Diagnostic> validate_batch(const QueryBatch& batch) {
    std::vector<Diagnostic> diags;
    if (batch.series.size() < 2 || batch.series.size() > 5)
        diags.push_back({"", "", "batch holds " + std::to_string(batch.series.size()) +
                                     " series, provider allows 2 to 5"});
    if (batch.weeks.empty())
        diags.push_back({"", "", "batch has no weeks"});

    double batch_max = 0.0;
    for (const auto& [asset, values] : batch.series) {
        if (values.size() != batch.weeks.size())
            diags.push_back({asset.ticker, "", "series length differs from the batch calendar"});
        for (size_t t = 0; t < values.size(); ++t) {
            if (!std::isfinite(values[t]) || values[t] < 0.0)
                diags.push_back({asset.ticker,
                                 t < batch.weeks.size() ? format_iso_date(batch.weeks[t].start_date) : "",
                                 "volume not finite and non-negative"});
            else
                batch_max = std::max(batch_max, values[t]);
        }
    }
    // Provider normalizes the group so its joint maximum is 100; integer
    // rounding can move it by at most half a unit.
    if (std::abs(batch_max - 100.0) > 0.5)
        diags.push_back({"", "", "batch maximum is " + std::to_string(batch_max) + ", expected 100"});

    auto anchor_it = batch.series.find(batch.anchor);
    if (anchor_it == batch.series.end())
        diags.push_back({batch.anchor.ticker, "", "anchor series missing from batch"});
    else if (std::none_of(anchor_it->second.begin(), anchor_it->second.end(),
                          [](double v) { return v > 0.0; }))
        diags.push_back({batch.anchor.ticker, "", "anchor series has no positive entry"});
    return diags;
}

MergedVolumePanel merge_batches(const std::vector<QueryBatch>& batches, const AssetId& reference) {
    if (batches.empty())
        throw Error(ErrorCode::Structural, "no batches to merge");

    const QueryBatch& first = batches.front();
    std::vector<double> reference_base;
    std::vector<double> scales(batches.size(), 1.0);

    for (size_t b = 0; b < batches.size(); ++b) {
        const QueryBatch& batch = batches[b];
        auto it = batch.series.find(reference);
        if (it == batch.series.end())
            throw Error(ErrorCode::Structural,
                        "reference series '" + reference.ticker + "' missing from batch " + std::to_string(b));
        if (!same_week_dates(batch.weeks, first.weeks))
            throw Error(ErrorCode::CalendarMismatch,
                        "batch " + std::to_string(b) + " week calendar differs from the first batch");
        double mean = series_mean(it->second);
        if (!(mean > 0.0))
            throw Error(ErrorCode::UnmergeableBatch,
                        "reference series '" + reference.ticker + "' in batch " + std::to_string(b) +
                            " has non-positive mean");
        if (b == 0)
            reference_base = it->second;
        else
            scales[b] = series_mean(reference_base) / mean;
    }

    MergedVolumePanel merged;
    merged.panel.weeks = first.weeks;
    reindex(merged.panel.weeks);

    // Concatenation order: first batch in full, then each later batch's
    // non-reference series.
    std::vector<std::pair<const std::vector<double>*, double>> columns;
    std::set<AssetId> taken;
    for (size_t b = 0; b < batches.size(); ++b) {
        for (const auto& [asset, values] : batches[b].series) {
            if (b > 0 && asset == reference) {
                double worst = 0.0;
                for (size_t t = 0; t < values.size(); ++t)
                    worst = std::max(worst, std::abs(values[t] * scales[b] - reference_base[t]));
                merged.rounding_discrepancy = std::max(merged.rounding_discrepancy, worst);
                continue;
            }
            if (!taken.insert(asset).second)
                throw Error(ErrorCode::Structural,
                            "asset '" + asset.ticker + "' appears in more than one batch");
            if (values.size() != first.weeks.size())
                throw Error(ErrorCode::Structural,
                            "series '" + asset.ticker + "' length differs from the batch calendar");
            merged.panel.assets.push_back(asset);
            merged.scale_factors[asset] = scales[b];
            columns.emplace_back(&values, scales[b]);
        }
    }

    merged.panel.volume = Matrix(merged.panel.assets.size(), first.weeks.size());
    for (size_t i = 0; i < columns.size(); ++i)
        for (size_t t = 0; t < first.weeks.size(); ++t)
            merged.panel.volume.at(i, t) = (*columns[i].first)[t] * columns[i].second;
    return merged;
}

ZeroVolumePolicy ZeroVolumePolicy::floor(double f) {
    if (!(f > 0.0) || !std::isfinite(f))
        throw Error(ErrorCode::Validation, "floor value must be positive and finite");
    return {Kind::Floor, f};
}

std::size_t ExclusionMask::count() const {
    std::size_t n = 0;
    for (auto flag : excluded_) n += flag;
    return n;
}

std::pair<VolumePanel, ExclusionMask> resolve_zero_volumes(const VolumePanel& panel,
                                                           const ZeroVolumePolicy& policy) {
    VolumePanel out = panel;
    ExclusionMask mask(panel.assets.size(), panel.weeks.size());
    for (size_t i = 0; i < panel.assets.size(); ++i) {
        for (size_t t = 0; t < panel.weeks.size(); ++t) {
            if (panel.volume.at(i, t) != 0.0) continue;
            if (policy.kind == ZeroVolumePolicy::Kind::Exclude)
                mask.set(i, t);
            else
                out.volume.at(i, t) = policy.floor_value;
        }
    }
    return {std::move(out), std::move(mask)};
}

}  // namespace svport
