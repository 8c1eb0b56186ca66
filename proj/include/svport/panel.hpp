#ifndef SVPORT_PANEL_HPP
#define SVPORT_PANEL_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "svport/calendar.hpp"
#include "svport/error.hpp"

namespace svport {

struct AssetId {
    std::string ticker;

    auto operator<=>(const AssetId&) const = default;
};

// 1-6 uppercase letters/digits (a '.' is allowed for share-class tickers).
bool is_valid_ticker(std::string_view ticker);

// Dense asset x week storage shared by the panel types.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& at(std::size_t row, std::size_t col) { return data_[row * cols_ + col]; }
    double at(std::size_t row, std::size_t col) const { return data_[row * cols_ + col]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Weekly closing prices, entry (i, t) = last trading-day close of asset i
// inside week t.
struct PricePanel {
    std::vector<AssetId> assets;
    std::vector<WeekId> weeks;
    Matrix close;
};

// Weekly simple returns; week calendar starts at the source panel's second
// week, so entry (i, t) is the return over weeks[t]'s window.
struct ReturnPanel {
    std::vector<AssetId> assets;
    std::vector<WeekId> weeks;
    Matrix returns;
};

// Weekly search-volume scores (provider-normalized, unitless).
struct VolumePanel {
    std::vector<AssetId> assets;
    std::vector<WeekId> weeks;
    Matrix volume;
};

// Prices, returns and volumes on one shared asset list and week calendar.
struct AlignedPanel {
    PricePanel prices;
    ReturnPanel returns;
    VolumePanel volumes;
};

struct PriceObservation {
    Date date;
    AssetId asset;
    double close = 0.0;
};

// Collapses daily observations onto the weekly calendar, keeping the last
// close inside each Sunday-Saturday window. Weeks in which no asset traded
// are dropped; a retained week with no observation for some asset is a gap
// error naming every (asset, week) pair.
PricePanel align_to_weeks(const std::vector<PriceObservation>& observations,
                          const std::vector<WeekId>& calendar);

// r(i, t) = (p(i, t) - p(i, t-1)) / p(i, t-1).
ReturnPanel compute_returns(const PricePanel& prices);

// Empty result iff every AlignedPanel invariant holds.
std::vector<Diagnostic> validate_panel(const AlignedPanel& panel);

// Builds an AlignedPanel from separately loaded prices and volumes: restricts
// both to the intersection of their asset lists (sorted) and week calendars,
// then derives returns from the restricted prices.
AlignedPanel align_panels(const PricePanel& prices, const VolumePanel& volumes);

}  // namespace svport

#endif
