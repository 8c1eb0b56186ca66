#include "svport/weighting.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace svport {

void weight_cross_section(std::span<const double> volumes, std::span<const std::uint8_t> included,
                          double alpha, std::span<double> weights_out) {
    if (volumes.size() != included.size() || volumes.size() != weights_out.size())
        throw Error(ErrorCode::Validation, "cross-section spans differ in length");
    if (!std::isfinite(alpha))
        throw Error(ErrorCode::Validation, "discrimination parameter must be finite");

    size_t n_included = 0;
    for (size_t i = 0; i < volumes.size(); ++i)
        if (included[i]) ++n_included;
    if (n_included == 0)
        throw Error(ErrorCode::EmptyUniverse, "no included asset in the cross-section");

    if (alpha == 0.0) {
        // Uniform portfolio; volumes (even zeros) play no role.
        double w = 1.0 / static_cast<double>(n_included);
        for (size_t i = 0; i < volumes.size(); ++i) weights_out[i] = included[i] ? w : 0.0;
        return;
    }

    // exp(-alpha * ln V) with the largest exponent subtracted first, so
    // alpha = +/-2 with volume ratios of several orders of magnitude stays
    // inside double range.
    std::vector<double> exponent(volumes.size(), 0.0);
    double max_exponent = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < volumes.size(); ++i) {
        if (!included[i]) continue;
        double v = volumes[i];
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::Domain,
                        "included asset has volume " + std::to_string(v) +
                            " with alpha != 0; resolve zero volumes before weighting");
        exponent[i] = -alpha * std::log(v);
        if (exponent[i] > max_exponent) max_exponent = exponent[i];
    }

    double norm = 0.0;
    for (size_t i = 0; i < volumes.size(); ++i) {
        if (!included[i]) {
            weights_out[i] = 0.0;
            continue;
        }
        weights_out[i] = std::exp(exponent[i] - max_exponent);
        norm += weights_out[i];
    }
    for (size_t i = 0; i < volumes.size(); ++i)
        if (included[i]) weights_out[i] /= norm;
}

WeightVector compute_weights(const std::map<AssetId, double>& volumes, double alpha,
                             const std::set<AssetId>& excluded) {
    if (volumes.empty())
        throw Error(ErrorCode::EmptyUniverse, "empty volume cross-section");

    std::vector<double> values;
    std::vector<std::uint8_t> included;
    values.reserve(volumes.size());
    included.reserve(volumes.size());
    for (const auto& [asset, v] : volumes) {
        values.push_back(v);
        included.push_back(excluded.count(asset) ? 0 : 1);
    }

    std::vector<double> weights(values.size(), 0.0);
    weight_cross_section(values, included, alpha, weights);

    WeightVector result;
    size_t i = 0;
    for (const auto& [asset, v] : volumes) {
        (void)v;
        result.weights[asset] = weights[i];
        if (!included[i]) result.excluded.insert(asset);
        ++i;
    }
    return result;
}

}  // namespace svport
