#ifndef SVPORT_IO_HPP
#define SVPORT_IO_HPP

#include <string>
#include <vector>

#include "svport/sweep.hpp"
#include "svport/trends.hpp"

namespace svport {

// Canonical 10-significant-digit rendering used by every output file, so a
// written value parses back to exactly the value selections were made on.
std::string format_number(double value);

// The double that format_number's rendering parses back to.
double round10(double value);

std::string read_text_file(const std::string& path);

// Writes to a sibling temp file and renames it over the target, so a failed
// run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

// date,ticker,close rows with daily dates.
std::vector<PriceObservation> load_prices(const std::string& path);

// week_start,ticker,volume rows; weeks must be consecutive Sundays and every
// (asset, week) cell must be present.
VolumePanel load_volume_panel(const std::string& path);

// week_start,<ticker>,... rows of provider scores (integers 0..100, at most
// five tickers per file).
QueryBatch load_batch(const std::string& path, const AssetId& anchor);

std::string render_sweep_csv(const SweepTable& table);

// Inverse of render_sweep_csv up to the 10-digit rounding applied on write.
std::vector<SweepPoint> parse_sweep_csv(const std::string& content);

}  // namespace svport

#endif
