#ifndef SVPORT_WEIGHTING_HPP
#define SVPORT_WEIGHTING_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>

#include "svport/panel.hpp"

namespace svport {

// Portfolio weights for one week. Included weights live on the unit simplex;
// excluded assets carry weight exactly 0.
struct WeightVector {
    WeekId week;
    std::map<AssetId, double> weights;
    std::set<AssetId> excluded;
};

// Core of the power-law discrimination rule: weights proportional to
// volume^(-alpha) over the included entries, normalized to sum 1. Entries
// with included[i] == 0 receive weight 0. Works on raw spans so the backtest
// loop can reuse panel storage directly.
void weight_cross_section(std::span<const double> volumes, std::span<const std::uint8_t> included,
                          double alpha, std::span<double> weights_out);

// Map-based wrapper over weight_cross_section for a single cross-section.
WeightVector compute_weights(const std::map<AssetId, double>& volumes, double alpha,
                             const std::set<AssetId>& excluded = {});

}  // namespace svport

#endif
