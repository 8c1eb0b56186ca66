#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace fixtures {

svport::Date sunday(int offset_weeks) {
    using namespace std::chrono;
    return sys_days{year{2010} / January / 3} + days{7 * offset_weeks};
}

std::vector<svport::WeekId> weeks(std::size_t n, int first_offset_weeks) {
    std::vector<svport::WeekId> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(
            svport::WeekId{sunday(first_offset_weeks + static_cast<int>(k)), static_cast<int>(k)});
    }
    return out;
}

std::string ticker(std::size_t index) {
    std::string out(2, 'A');
    out[0] = static_cast<char>('A' + index / 26);
    out[1] = static_cast<char>('A' + index % 26);
    return out;
}

std::vector<svport::AssetId> tickers(std::size_t n) {
    std::vector<svport::AssetId> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(svport::AssetId{ticker(k)});
    return out;
}

svport::PricePanel make_prices(const std::vector<std::vector<double>>& closes) {
    svport::PricePanel panel;
    panel.assets = tickers(closes.size());
    panel.weeks = weeks(closes.empty() ? 0 : closes[0].size());
    panel.close = svport::Matrix(closes.size(), panel.weeks.size());
    for (std::size_t a = 0; a < closes.size(); ++a) {
        for (std::size_t w = 0; w < closes[a].size(); ++w) panel.close.at(a, w) = closes[a][w];
    }
    return panel;
}

svport::VolumePanel make_volumes(const std::vector<std::vector<double>>& volumes) {
    svport::VolumePanel panel;
    panel.assets = tickers(volumes.size());
    panel.weeks = weeks(volumes.empty() ? 0 : volumes[0].size());
    panel.volume = svport::Matrix(volumes.size(), panel.weeks.size());
    for (std::size_t a = 0; a < volumes.size(); ++a) {
        for (std::size_t w = 0; w < volumes[a].size(); ++w) panel.volume.at(a, w) = volumes[a][w];
    }
    return panel;
}

svport::AlignedPanel make_aligned(const std::vector<std::vector<double>>& closes,
                                  const std::vector<std::vector<double>>& volumes) {
    svport::AlignedPanel panel;
    panel.prices = make_prices(closes);
    panel.returns = svport::compute_returns(panel.prices);
    panel.volumes = make_volumes(volumes);
    return panel;
}

double uniform(std::mt19937& rng, double lo, double hi) {
    const double u = (static_cast<double>(rng()) + 0.5) * 0x1p-32;
    return lo + u * (hi - lo);
}

double normal(std::mt19937& rng) {
    const double u1 = (static_cast<double>(rng()) + 0.5) * 0x1p-32;
    const double u2 = (static_cast<double>(rng()) + 0.5) * 0x1p-32;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

std::vector<std::vector<double>> random_closes(std::mt19937& rng, std::size_t n_assets,
                                               std::size_t n_weeks,
                                               const std::vector<double>& weekly_vols) {
    std::vector<std::vector<double>> closes(n_assets);
    for (std::size_t a = 0; a < n_assets; ++a) {
        closes[a].reserve(n_weeks);
        double price = 100.0;
        closes[a].push_back(price);
        for (std::size_t w = 1; w < n_weeks; ++w) {
            const double r = std::clamp(weekly_vols[a] * normal(rng), -0.5, 0.5);
            price *= 1.0 + r;
            closes[a].push_back(price);
        }
    }
    return closes;
}

std::vector<std::vector<double>> random_volumes(std::mt19937& rng, std::size_t n_assets,
                                                std::size_t n_weeks, double lo, double hi) {
    std::vector<std::vector<double>> volumes(n_assets);
    for (std::size_t a = 0; a < n_assets; ++a) {
        volumes[a].reserve(n_weeks);
        for (std::size_t w = 0; w < n_weeks; ++w) volumes[a].push_back(uniform(rng, lo, hi));
    }
    return volumes;
}

svport::AlignedPanel risk_fixture() {
    std::mt19937 rng(987654321u);
    const std::size_t n_weeks = 400;
    const std::vector<double> vols{0.06, 0.02, 0.02, 0.02, 0.02};
    const auto closes = random_closes(rng, 5, n_weeks, vols);
    std::vector<std::vector<double>> volumes(5, std::vector<double>(n_weeks, 10.0));
    volumes[0].assign(n_weeks, 80.0);
    return make_aligned(closes, volumes);
}

svport::AlignedPanel large_fixture() {
    std::mt19937 rng(24681357u);
    const std::size_t n_assets = 30;
    const std::size_t n_weeks = 450;
    std::vector<double> vols;
    vols.reserve(n_assets);
    for (std::size_t a = 0; a < n_assets; ++a) vols.push_back(uniform(rng, 0.01, 0.05));
    const auto closes = random_closes(rng, n_assets, n_weeks, vols);
    const auto volumes = random_volumes(rng, n_assets, n_weeks, 0.5, 100.0);
    return make_aligned(closes, volumes);
}

}  // namespace fixtures
