#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "svport/report.hpp"

namespace {

svport::ZeroVolumePolicy parse_zero_policy(const std::string& text) {
    if (text == "exclude") {
        return svport::ZeroVolumePolicy::exclude();
    }
    if (text == "floor") {
        return svport::ZeroVolumePolicy::floor(0.5);
    }
    if (text.rfind("floor:", 0) == 0) {
        const std::string value = text.substr(6);
        char* end = nullptr;
        const double f = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size()) {
            throw svport::Error(svport::ErrorCode::Config,
                                "invalid floor value '" + value + "' in --zero-policy");
        }
        return svport::ZeroVolumePolicy::floor(f);
    }
    throw svport::Error(svport::ErrorCode::Config,
                        "--zero-policy must be 'exclude' or 'floor:F', got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Backtests attention-weighted stock portfolios from weekly search-volume data"};

    svport::RunConfig config;
    std::string mode = "both";
    std::string zero_policy = "exclude";

    app.add_option("--prices", config.prices_path, "Price file (date,ticker,close)")->required();
    auto* volumes_opt =
        app.add_option("--volumes", config.volumes_path, "Merged volume panel file");
    auto* batches_opt = app.add_option("--batches", config.batch_paths,
                                       "Provider batch files (week_start,<ticker>,...)");
    auto* reference_opt = app.add_option("--reference", config.reference_ticker,
                                         "Ticker shared by every batch, used for rescaling");
    app.add_option("--benchmark", config.benchmark_path,
                   "Single-asset price file held passively for comparison");
    app.add_option("--mode", mode, "Timing mode: in, oos or both")
        ->check(CLI::IsMember({"in", "oos", "both"}))
        ->capture_default_str();
    app.add_option("--alpha-min", config.grid.min, "Grid lower bound")->capture_default_str();
    app.add_option("--alpha-max", config.grid.max, "Grid upper bound")->capture_default_str();
    app.add_option("--alpha-step", config.grid.step, "Grid spacing")->capture_default_str();
    app.add_option("--zero-policy", zero_policy,
                   "Zero-volume handling: exclude or floor:F (default floor value 0.5)")
        ->capture_default_str();
    app.add_option("--cost-rate", config.cost_rate,
                   "Proportional transaction cost per unit turnover")
        ->capture_default_str();
    app.add_option("--out", config.out_dir, "Output directory")->required();
    app.add_flag("--plots", config.plots, "Also write SVG plots");

    volumes_opt->excludes(batches_opt);
    batches_opt->needs(reference_opt);
    reference_opt->needs(batches_opt);

    CLI11_PARSE(app, argc, argv);

    config.in_sample = mode != "oos";
    config.out_of_sample = mode != "in";

    try {
        config.zero_policy = parse_zero_policy(zero_policy);
        const svport::RunOutputs outputs = svport::run(config);
        for (const std::string& path : outputs.files) {
            std::cout << "wrote " << path << '\n';
        }
    } catch (const svport::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
