#ifndef SVPORT_TESTS_FIXTURES_HPP
#define SVPORT_TESTS_FIXTURES_HPP

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "svport/panel.hpp"

namespace fixtures {

// 2010-01-03 (a Sunday) plus offset_weeks * 7 days.
svport::Date sunday(int offset_weeks);

std::vector<svport::WeekId> weeks(std::size_t n, int first_offset_weeks = 0);

// Two-letter tickers "AA", "AB", ..., ascending with index.
std::string ticker(std::size_t index);
std::vector<svport::AssetId> tickers(std::size_t n);

// closes[i][t] / volumes[i][t] laid onto the standard week calendar.
svport::PricePanel make_prices(const std::vector<std::vector<double>>& closes);
svport::VolumePanel make_volumes(const std::vector<std::vector<double>>& volumes);
svport::AlignedPanel make_aligned(const std::vector<std::vector<double>>& closes,
                                  const std::vector<std::vector<double>>& volumes);

// Deterministic draws built from raw mt19937 output, so fixtures do not
// depend on the standard library's unspecified distribution algorithms.
double uniform(std::mt19937& rng, double lo, double hi);
double normal(std::mt19937& rng);

std::vector<std::vector<double>> random_closes(std::mt19937& rng, std::size_t n_assets,
                                               std::size_t n_weeks,
                                               const std::vector<double>& weekly_vols);
std::vector<std::vector<double>> random_volumes(std::mt19937& rng, std::size_t n_assets,
                                                std::size_t n_weeks, double lo, double hi);

// 5 assets over 400 weeks. Asset 0 carries three times the return volatility
// of the others and a dominant, constant search volume, so increasing alpha
// shifts weight away from the riskiest asset.
svport::AlignedPanel risk_fixture();

// 30 assets over 450 weeks with volumes in [0.5, 100].
svport::AlignedPanel large_fixture();

}  // namespace fixtures

#endif
