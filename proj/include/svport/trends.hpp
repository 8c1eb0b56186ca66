#ifndef SVPORT_TRENDS_HPP
#define SVPORT_TRENDS_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "svport/panel.hpp"

namespace svport {

// One provider query of up to five terms. The provider rescales the group so
// its joint maximum is 100; `anchor` is the series shared with other batches
// that makes cross-batch rescaling possible.
struct QueryBatch {
    std::vector<WeekId> weeks;
    std::map<AssetId, std::vector<double>> series;
    AssetId anchor;
};

// Checks the batch invariants: 2..5 series over the shared calendar, joint
// maximum 100 within integer rounding, anchor present with some positive
// entry.
std::vector<Diagnostic> validate_batch(const QueryBatch& batch);

// Batches rescaled onto the first batch's scale. `scale_factors` records the
// multiplier applied to each asset's source batch; `rounding_discrepancy` is
// the largest gap between any rescaled reference series and the first
// batch's reference series.
struct MergedVolumePanel {
    VolumePanel panel;
    std::map<AssetId, double> scale_factors;
    double rounding_discrepancy = 0.0;
};

// Multiplies every batch by the scalar that makes its reference-series mean
// equal the first batch's reference mean, then concatenates all
// non-reference series plus one copy of the reference.
MergedVolumePanel merge_batches(const std::vector<QueryBatch>& batches, const AssetId& reference);

struct ZeroVolumePolicy {
    enum class Kind { Exclude, Floor };

    Kind kind = Kind::Exclude;
    double floor_value = 0.0;

    static ZeroVolumePolicy exclude() { return {Kind::Exclude, 0.0}; }
    static ZeroVolumePolicy floor(double f);
};

// Per-(asset, week) exclusion flags aligned with a panel's matrices.
class ExclusionMask {
public:
    ExclusionMask() = default;
    ExclusionMask(std::size_t assets, std::size_t weeks)
        : n_assets_(assets), n_weeks_(weeks), excluded_(assets * weeks, 0) {}

    bool at(std::size_t asset, std::size_t week) const { return excluded_[asset * n_weeks_ + week] != 0; }
    void set(std::size_t asset, std::size_t week) { excluded_[asset * n_weeks_ + week] = 1; }

    std::size_t count() const;
    bool empty() const { return count() == 0; }

private:
    std::size_t n_assets_ = 0;
    std::size_t n_weeks_ = 0;
    std::vector<std::uint8_t> excluded_;
};

// Under Exclude, zero-volume entries are flagged and left untouched; under
// Floor, they are replaced by the floor value. Positive entries never change.
std::pair<VolumePanel, ExclusionMask> resolve_zero_volumes(const VolumePanel& panel,
                                                           const ZeroVolumePolicy& policy);

}  // namespace svport

#endif
