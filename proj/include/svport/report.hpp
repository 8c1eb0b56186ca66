#ifndef SVPORT_REPORT_HPP
#define SVPORT_REPORT_HPP

#include <string>
#include <vector>

#include "svport/io.hpp"

namespace svport {

// One full run: inputs, grid, policies and output destination.
struct RunConfig {
    std::string prices_path;
    // Exactly one volume source: a merged panel file, or batch files plus
    // the reference ticker shared by all of them.
    std::string volumes_path;
    std::vector<std::string> batch_paths;
    std::string reference_ticker;
    std::string benchmark_path;
    bool in_sample = true;
    bool out_of_sample = true;
    AlphaGrid grid;
    ZeroVolumePolicy zero_policy = ZeroVolumePolicy::exclude();
    double cost_rate = 0.0;
    std::string out_dir = ".";
    bool plots = false;
};

struct RunOutputs {
    std::vector<std::string> files;
};

// Loads and validates the inputs, sweeps the grid per requested mode, picks
// the min-variance and max-Sharpe alphas from the 10-digit-rounded tables
// (so re-deriving them from the emitted files gives the same answer), and
// emits sweep tables, value paths, the summary and optional plots. Every
// file is fully rendered before anything is written.
RunOutputs run(const RunConfig& config);

}  // namespace svport

#endif
