#include "svport/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>

#include "svport/plot.hpp"

namespace svport {

namespace {

constexpr double kAnchorToleranceAfterRescale = 1.0;

void check_config(const RunConfig& config) {
    if (config.prices_path.empty()) {
        throw Error(ErrorCode::Config, "a price file is required");
    }
    const bool have_panel = !config.volumes_path.empty();
    const bool have_batches = !config.batch_paths.empty();
    if (have_panel == have_batches) {
        throw Error(ErrorCode::Config,
                    "exactly one volume source is required: a merged panel file or batch files");
    }
    if (have_batches && !is_valid_ticker(config.reference_ticker)) {
        throw Error(ErrorCode::Config, "batch input requires a valid reference ticker");
    }
    if (!config.in_sample && !config.out_of_sample) {
        throw Error(ErrorCode::Config, "at least one timing mode is required");
    }
    if (!std::isfinite(config.cost_rate) || config.cost_rate < 0.0) {
        throw Error(ErrorCode::Config, "cost rate must be finite and non-negative");
    }
    if (config.out_dir.empty()) {
        throw Error(ErrorCode::Config, "an output directory is required");
    }
    config.grid.points();
}

PricePanel load_price_panel(const std::string& path) {
    const std::vector<PriceObservation> observations = load_prices(path);
    Date first = observations[0].date;
    Date last = observations[0].date;
    for (const PriceObservation& obs : observations) {
        first = std::min(first, obs.date);
        last = std::max(last, obs.date);
    }
    return align_to_weeks(observations, week_calendar_covering(first, last));
}

VolumePanel load_volume_source(const RunConfig& config) {
    if (!config.volumes_path.empty()) {
        return load_volume_panel(config.volumes_path);
    }

    const AssetId reference{config.reference_ticker};
    std::vector<QueryBatch> batches;
    for (const std::string& path : config.batch_paths) {
        QueryBatch batch = load_batch(path, reference);
        if (batch.series.count(reference) == 0) {
            throw Error(ErrorCode::Structural,
                        "batch file " + path + " is missing the reference ticker " +
                            reference.ticker);
        }
        const std::vector<Diagnostic> diagnostics = validate_batch(batch);
        if (!diagnostics.empty()) {
            std::string joined;
            for (const Diagnostic& d : diagnostics) {
                if (!joined.empty()) joined += "; ";
                joined += d.to_string();
            }
            throw Error(ErrorCode::Validation, "batch file " + path + ": " + joined);
        }
        batches.push_back(std::move(batch));
    }

    MergedVolumePanel merged = merge_batches(batches, reference);
    if (merged.rounding_discrepancy > kAnchorToleranceAfterRescale) {
        throw Error(ErrorCode::UnmergeableBatch,
                    "reference series disagree across batches by " +
                        format_number(merged.rounding_discrepancy) +
                        " after rescaling (tolerance " +
                        format_number(kAnchorToleranceAfterRescale) + ")");
    }
    return std::move(merged.panel);
}

// Restricts a single-asset price panel to the weeks it shares with the
// strategy panel, so benchmark returns line up with strategy returns.
PricePanel restrict_to_weeks(const PricePanel& prices, const std::vector<WeekId>& weeks) {
    std::map<Date, std::size_t> available;
    for (std::size_t w = 0; w < prices.weeks.size(); ++w) {
        available.emplace(prices.weeks[w].start_date, w);
    }

    PricePanel out;
    out.assets = prices.assets;
    std::vector<std::size_t> keep;
    for (const WeekId& week : weeks) {
        auto it = available.find(week.start_date);
        if (it == available.end()) continue;
        out.weeks.push_back(WeekId{week.start_date, static_cast<int>(keep.size())});
        keep.push_back(it->second);
    }
    out.close = Matrix(prices.assets.size(), keep.size());
    for (std::size_t a = 0; a < prices.assets.size(); ++a) {
        for (std::size_t w = 0; w < keep.size(); ++w) {
            out.close.at(a, w) = prices.close.at(a, keep[w]);
        }
    }
    if (!is_contiguous(out.weeks)) {
        throw Error(ErrorCode::CalendarMismatch,
                    "benchmark weeks overlap the panel non-contiguously");
    }
    return out;
}

SweepTable rounded_copy(const SweepTable& table) {
    SweepTable out = table;
    for (SweepPoint& point : out.points) {
        point.alpha = round10(point.alpha);
        if (point.summary) {
            point.summary->mean = round10(point.summary->mean);
            point.summary->std_dev = round10(point.summary->std_dev);
            point.summary->sharpe = round10(point.summary->sharpe);
            point.summary->cumulative_profit = round10(point.summary->cumulative_profit);
        }
    }
    return out;
}

// Grid alpha whose 10-digit rendering matches a selection made on the
// rounded table.
double grid_alpha_for(const SweepTable& table, double rounded_alpha) {
    for (const SweepPoint& point : table.points) {
        if (point.summary && round10(point.alpha) == rounded_alpha) {
            return point.alpha;
        }
    }
    throw Error(ErrorCode::EmptySweep,
                "selected alpha " + format_number(rounded_alpha) + " not found in sweep");
}

struct ModeOutput {
    TimingMode mode = TimingMode::InSample;
    SweepTable table;
    SweepSelection min_variance;
    SweepSelection max_sharpe;
    BacktestResult best_sharpe_run;
};

void append_summary_block(std::string& out, const std::string& prefix,
                          const SweepSelection& selection) {
    out += prefix + ".alpha = " + format_number(selection.alpha) + '\n';
    out += prefix + ".mean = " + format_number(selection.summary.mean) + '\n';
    out += prefix + ".std = " + format_number(selection.summary.std_dev) + '\n';
    out += prefix + ".sharpe = " + format_number(selection.summary.sharpe) + '\n';
    out += prefix + ".cumulative_profit = " + format_number(selection.summary.cumulative_profit) +
           '\n';
    out += prefix + ".n_weeks = " + std::to_string(selection.summary.n_weeks) + '\n';
}

std::string render_value_paths_csv(
    const std::vector<std::pair<std::string, const BacktestResult*>>& series) {
    std::map<Date, std::map<std::string, double>> rows;
    for (const auto& [name, result] : series) {
        if (result->weeks.empty()) continue;
        rows[result->weeks.front().start_date - std::chrono::days{7}][name] = 1.0;
        const std::vector<double> path = value_path(result->portfolio_returns);
        for (std::size_t k = 0; k < path.size(); ++k) {
            rows[result->weeks[k].start_date][name] = path[k];
        }
    }

    std::string out = "week_start";
    for (const auto& [name, result] : series) out += ',' + name;
    out += '\n';
    for (const auto& [date, cells] : rows) {
        out += format_iso_date(date);
        for (const auto& [name, result] : series) {
            out += ',';
            auto it = cells.find(name);
            if (it != cells.end()) out += format_number(it->second);
        }
        out += '\n';
    }
    return out;
}

Chart sweep_chart(const std::string& title, const std::string& y_label,
                  const std::vector<ModeOutput>& modes,
                  const std::optional<PerformanceSummary>& benchmark, bool use_std) {
    Chart chart;
    chart.title = title;
    chart.x_label = "alpha";
    chart.y_label = y_label;
    double alpha_lo = 0.0, alpha_hi = 0.0;
    bool any = false;
    for (const ModeOutput& mode : modes) {
        PlotSeries s;
        s.name = std::string(to_string(mode.mode));
        for (const SweepPoint& point : mode.table.points) {
            if (!point.summary) continue;
            const double x = round10(point.alpha);
            const double y = round10(use_std ? point.summary->std_dev : point.summary->sharpe);
            s.points.emplace_back(x, y);
            if (!any) {
                alpha_lo = alpha_hi = x;
                any = true;
            } else {
                alpha_lo = std::min(alpha_lo, x);
                alpha_hi = std::max(alpha_hi, x);
            }
        }
        chart.series.push_back(std::move(s));
    }
    if (benchmark && any) {
        PlotSeries s;
        s.name = "benchmark";
        s.dashed = true;
        const double y = round10(use_std ? benchmark->std_dev : benchmark->sharpe);
        s.points.emplace_back(alpha_lo, y);
        s.points.emplace_back(alpha_hi, y);
        chart.series.push_back(std::move(s));
    }
    return chart;
}

Chart value_paths_chart(const std::vector<std::pair<std::string, const BacktestResult*>>& series) {
    std::map<Date, std::size_t> positions;
    for (const auto& [name, result] : series) {
        for (const WeekId& week : result->weeks) positions.emplace(week.start_date, 0);
        if (!result->weeks.empty()) {
            positions.emplace(result->weeks.front().start_date - std::chrono::days{7}, 0);
        }
    }
    std::size_t next = 0;
    for (auto& [date, position] : positions) position = next++;

    Chart chart;
    chart.title = "portfolio value";
    chart.x_label = "week";
    chart.y_label = "value of 1 unit";
    for (const auto& [name, result] : series) {
        PlotSeries s;
        s.name = name;
        s.dashed = name == "benchmark";
        if (!result->weeks.empty()) {
            const Date anchor = result->weeks.front().start_date - std::chrono::days{7};
            s.points.emplace_back(static_cast<double>(positions.at(anchor)), 1.0);
            const std::vector<double> path = value_path(result->portfolio_returns);
            for (std::size_t k = 0; k < path.size(); ++k) {
                s.points.emplace_back(static_cast<double>(positions.at(result->weeks[k].start_date)),
                                      path[k]);
            }
        }
        chart.series.push_back(std::move(s));
    }

    if (!positions.empty()) {
        std::vector<std::pair<Date, std::size_t>> ordered(positions.begin(), positions.end());
        const std::size_t n_ticks = std::min<std::size_t>(5, ordered.size());
        for (std::size_t k = 0; k < n_ticks; ++k) {
            const std::size_t idx = n_ticks == 1 ? 0 : k * (ordered.size() - 1) / (n_ticks - 1);
            chart.x_ticks.emplace_back(static_cast<double>(ordered[idx].second),
                                       format_iso_date(ordered[idx].first));
        }
    }
    return chart;
}

}  // namespace

RunOutputs run(const RunConfig& config) {
    check_config(config);

    const PricePanel prices = load_price_panel(config.prices_path);
    const VolumePanel volumes = load_volume_source(config);
    const AlignedPanel panel = align_panels(prices, volumes);
    {
        const std::vector<Diagnostic> diagnostics = validate_panel(panel);
        if (!diagnostics.empty()) {
            std::string joined;
            for (const Diagnostic& d : diagnostics) {
                if (!joined.empty()) joined += "; ";
                joined += d.to_string();
            }
            throw Error(ErrorCode::Validation, "aligned panel is invalid: " + joined);
        }
    }

    std::optional<BacktestResult> benchmark_run;
    std::optional<PerformanceSummary> benchmark_summary;
    if (!config.benchmark_path.empty()) {
        const PricePanel bench_prices =
            restrict_to_weeks(load_price_panel(config.benchmark_path), panel.prices.weeks);
        benchmark_run = buy_and_hold(bench_prices);
        benchmark_summary = summarize(benchmark_run->portfolio_returns);
        benchmark_summary->mean = round10(benchmark_summary->mean);
        benchmark_summary->std_dev = round10(benchmark_summary->std_dev);
        benchmark_summary->sharpe = round10(benchmark_summary->sharpe);
        benchmark_summary->cumulative_profit = round10(benchmark_summary->cumulative_profit);
    }

    std::vector<ModeOutput> modes;
    for (TimingMode mode : {TimingMode::InSample, TimingMode::OutOfSample}) {
        if (mode == TimingMode::InSample && !config.in_sample) continue;
        if (mode == TimingMode::OutOfSample && !config.out_of_sample) continue;

        ModeOutput out;
        out.mode = mode;
        out.table = alpha_sweep(panel, config.grid, mode, config.zero_policy, config.cost_rate);

        const SweepTable rounded = rounded_copy(out.table);
        out.min_variance = find_min_variance(rounded);
        out.max_sharpe = find_max_sharpe(rounded);
        out.best_sharpe_run =
            run_backtest(panel, grid_alpha_for(out.table, out.max_sharpe.alpha), mode,
                         config.zero_policy, config.cost_rate);
        modes.push_back(std::move(out));
    }

    std::vector<std::pair<std::string, const BacktestResult*>> path_series;
    for (const ModeOutput& mode : modes) {
        path_series.emplace_back(std::string(to_string(mode.mode)), &mode.best_sharpe_run);
    }
    if (benchmark_run) {
        path_series.emplace_back("benchmark", &*benchmark_run);
    }

    std::string summary;
    for (const ModeOutput& mode : modes) {
        const std::string prefix{to_string(mode.mode)};
        append_summary_block(summary, prefix + ".min_variance", mode.min_variance);
        append_summary_block(summary, prefix + ".max_sharpe", mode.max_sharpe);
    }
    if (benchmark_summary) {
        summary += "benchmark.mean = " + format_number(benchmark_summary->mean) + '\n';
        summary += "benchmark.std = " + format_number(benchmark_summary->std_dev) + '\n';
        summary += "benchmark.sharpe = " + format_number(benchmark_summary->sharpe) + '\n';
        summary += "benchmark.cumulative_profit = " +
                   format_number(benchmark_summary->cumulative_profit) + '\n';
        summary += "benchmark.n_weeks = " + std::to_string(benchmark_summary->n_weeks) + '\n';
        for (const ModeOutput& mode : modes) {
            summary += std::string(to_string(mode.mode)) + ".max_sharpe.profit_vs_benchmark = ";
            if (same_week_dates(mode.best_sharpe_run.weeks, benchmark_run->weeks)) {
                summary += format_number(
                    round10(cumulative_profit_vs(*benchmark_summary, mode.max_sharpe.summary)));
            } else {
                summary += "not_comparable";
            }
            summary += '\n';
        }
    } else {
        summary += "benchmark = absent\n";
    }

    std::vector<std::pair<std::string, std::string>> files;
    for (const ModeOutput& mode : modes) {
        files.emplace_back("sweep_" + std::string(to_string(mode.mode)) + ".csv",
                           render_sweep_csv(mode.table));
    }
    files.emplace_back("value_paths.csv", render_value_paths_csv(path_series));
    files.emplace_back("summary.txt", summary);

    if (config.plots) {
        files.emplace_back(
            "plot_sweep.svg",
            render_charts({sweep_chart("risk across alpha", "weekly std dev", modes,
                                       benchmark_summary, true),
                           sweep_chart("Sharpe across alpha", "weekly Sharpe", modes,
                                       benchmark_summary, false)}));
        files.emplace_back("plot_value_paths.svg", render_charts({value_paths_chart(path_series)}));
    }

    std::filesystem::create_directories(config.out_dir);
    RunOutputs outputs;
    for (const auto& [name, content] : files) {
        const std::string path = (std::filesystem::path(config.out_dir) / name).string();
        write_file_atomic(path, content);
        outputs.files.push_back(path);
    }
    return outputs;
}

}  // namespace svport
