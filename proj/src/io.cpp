#include "svport/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

namespace svport {

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) {
            if (start < content.size()) out.push_back(content.substr(start));
            break;
        }
        std::string line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
        start = end + 1;
    }
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = line.find(',', start);
        if (end == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::Parse, path + " line " + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& field, const std::string& path, std::size_t line_no,
                    const std::string& name) {
    if (field.empty()) parse_fail(path, line_no, name + " is empty");
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(value)) {
        parse_fail(path, line_no, name + " is not a finite number: '" + field + "'");
    }
    return value;
}

Date parse_date_field(const std::string& field, const std::string& path, std::size_t line_no) {
    try {
        return parse_iso_date(field);
    } catch (const Error& e) {
        parse_fail(path, line_no, e.message());
    }
}

AssetId parse_ticker_field(const std::string& field, const std::string& path, std::size_t line_no) {
    if (!is_valid_ticker(field)) {
        parse_fail(path, line_no, "invalid ticker '" + field + "'");
    }
    return AssetId{field};
}

// Builds the 0-indexed week calendar behind a sorted set of Sunday starts,
// requiring consecutive weeks.
std::vector<WeekId> calendar_from_starts(const std::set<Date>& starts, const std::string& path) {
    std::vector<WeekId> weeks;
    int index = 0;
    for (Date start : starts) {
        if (!weeks.empty() && start != weeks.back().start_date + std::chrono::days{7}) {
            throw Error(ErrorCode::Validation,
                        path + ": week calendar has a hole after " +
                            format_iso_date(weeks.back().start_date));
        }
        weeks.push_back(WeekId{start, index++});
    }
    return weeks;
}

}  // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::Validation, "refusing to format a non-finite number");
    }
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

double round10(double value) {
    return std::strtod(format_number(value).c_str(), nullptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(ErrorCode::Io, "cannot read " + path);
    }
    return content;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot open " + tmp + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorCode::Io, "cannot write " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot rename " + tmp + " to " + path);
    }
}

std::vector<PriceObservation> load_prices(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    if (lines.empty() || lines[0] != "date,ticker,close") {
        parse_fail(path, 1, "expected header 'date,ticker,close'");
    }

    std::vector<PriceObservation> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            parse_fail(path, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        PriceObservation obs;
        obs.date = parse_date_field(fields[0], path, line_no);
        obs.asset = parse_ticker_field(fields[1], path, line_no);
        obs.close = parse_double(fields[2], path, line_no, "close");
        if (obs.close <= 0.0) {
            parse_fail(path, line_no, "close must be positive, got " + fields[2]);
        }
        out.push_back(std::move(obs));
    }
    if (out.empty()) {
        parse_fail(path, 1, "no data rows");
    }
    return out;
}

VolumePanel load_volume_panel(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    if (lines.empty() || lines[0] != "week_start,ticker,volume") {
        parse_fail(path, 1, "expected header 'week_start,ticker,volume'");
    }

    std::map<std::pair<Date, AssetId>, double> cells;
    std::set<Date> starts;
    std::set<AssetId> assets;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            parse_fail(path, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        const Date start = parse_date_field(fields[0], path, line_no);
        if (!is_sunday(start)) {
            parse_fail(path, line_no, "week_start " + fields[0] + " is not a Sunday");
        }
        const AssetId asset = parse_ticker_field(fields[1], path, line_no);
        const double volume = parse_double(fields[2], path, line_no, "volume");
        if (volume < 0.0) {
            parse_fail(path, line_no, "volume must be non-negative, got " + fields[2]);
        }
        if (!cells.emplace(std::make_pair(start, asset), volume).second) {
            parse_fail(path, line_no, "duplicate entry for " + asset.ticker + " at " + fields[0]);
        }
        starts.insert(start);
        assets.insert(asset);
    }
    if (cells.empty()) {
        parse_fail(path, 1, "no data rows");
    }

    VolumePanel panel;
    panel.weeks = calendar_from_starts(starts, path);
    panel.assets.assign(assets.begin(), assets.end());
    panel.volume = Matrix(panel.assets.size(), panel.weeks.size());

    std::vector<std::string> missing;
    for (std::size_t a = 0; a < panel.assets.size(); ++a) {
        for (std::size_t w = 0; w < panel.weeks.size(); ++w) {
            auto it = cells.find({panel.weeks[w].start_date, panel.assets[a]});
            if (it == cells.end()) {
                missing.push_back(panel.assets[a].ticker + " @ " +
                                  format_iso_date(panel.weeks[w].start_date));
            } else {
                panel.volume.at(a, w) = it->second;
            }
        }
    }
    if (!missing.empty()) {
        std::string joined;
        for (const std::string& m : missing) {
            if (!joined.empty()) joined += ", ";
            joined += m;
        }
        throw Error(ErrorCode::DataGap, path + ": missing volume entries: " + joined);
    }
    return panel;
}

QueryBatch load_batch(const std::string& path, const AssetId& anchor) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    if (lines.empty()) {
        parse_fail(path, 1, "empty file");
    }
    const std::vector<std::string> header = split_fields(lines[0]);
    if (header.size() < 2 || header[0] != "week_start") {
        parse_fail(path, 1, "expected header 'week_start,<ticker>,...'");
    }
    if (header.size() - 1 > 5) {
        parse_fail(path, 1, "a batch holds at most 5 series, got " +
                                std::to_string(header.size() - 1));
    }

    QueryBatch batch;
    batch.anchor = anchor;
    std::vector<AssetId> columns;
    for (std::size_t c = 1; c < header.size(); ++c) {
        AssetId asset = parse_ticker_field(header[c], path, 1);
        if (batch.series.count(asset) != 0) {
            parse_fail(path, 1, "duplicate ticker '" + asset.ticker + "' in header");
        }
        batch.series.emplace(asset, std::vector<double>{});
        columns.push_back(std::move(asset));
    }

    Date prev{};
    bool have_prev = false;
    int index = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != header.size()) {
            parse_fail(path, line_no, "expected " + std::to_string(header.size()) +
                                          " fields, got " + std::to_string(fields.size()));
        }
        const Date start = parse_date_field(fields[0], path, line_no);
        if (!is_sunday(start)) {
            parse_fail(path, line_no, "week_start " + fields[0] + " is not a Sunday");
        }
        if (have_prev && start != prev + std::chrono::days{7}) {
            parse_fail(path, line_no, "weeks must be consecutive Sundays");
        }
        prev = start;
        have_prev = true;
        batch.weeks.push_back(WeekId{start, index++});

        for (std::size_t c = 1; c < fields.size(); ++c) {
            const double value = parse_double(fields[c], path, line_no, header[c]);
            if (value < 0.0 || value > 100.0 || value != std::floor(value)) {
                parse_fail(path, line_no,
                           header[c] + " must be an integer in [0, 100], got " + fields[c]);
            }
            batch.series[columns[c - 1]].push_back(value);
        }
    }
    if (batch.weeks.empty()) {
        parse_fail(path, 1, "no data rows");
    }
    return batch;
}

std::string render_sweep_csv(const SweepTable& table) {
    std::string out = "alpha,mean,std,sharpe,cumulative_profit,n_weeks,skipped_reason\n";
    for (const SweepPoint& point : table.points) {
        out += format_number(point.alpha);
        if (point.summary) {
            const PerformanceSummary& s = *point.summary;
            out += ',' + format_number(s.mean) + ',' + format_number(s.std_dev) + ',' +
                   format_number(s.sharpe) + ',' + format_number(s.cumulative_profit) + ',' +
                   std::to_string(s.n_weeks) + ',';
        } else {
            std::string reason = point.skip_reason;
            for (char& ch : reason) {
                if (ch == ',') ch = ';';
                if (ch == '\n' || ch == '\r') ch = ' ';
            }
            out += ",,,,,," + reason;
        }
        out += '\n';
    }
    return out;
}

std::vector<SweepPoint> parse_sweep_csv(const std::string& content) {
    const std::vector<std::string> lines = split_lines(content);
    const std::string path = "sweep csv";
    if (lines.empty() || lines[0] != "alpha,mean,std,sharpe,cumulative_profit,n_weeks,skipped_reason") {
        parse_fail(path, 1, "unexpected header");
    }

    std::vector<SweepPoint> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 7) {
            parse_fail(path, line_no, "expected 7 fields, got " + std::to_string(fields.size()));
        }
        SweepPoint point;
        point.alpha = parse_double(fields[0], path, line_no, "alpha");
        if (fields[1].empty()) {
            point.skip_reason = fields[6];
            if (point.skip_reason.empty()) {
                parse_fail(path, line_no, "row has neither a summary nor a skip reason");
            }
        } else {
            PerformanceSummary s;
            s.mean = parse_double(fields[1], path, line_no, "mean");
            s.std_dev = parse_double(fields[2], path, line_no, "std");
            s.sharpe = parse_double(fields[3], path, line_no, "sharpe");
            s.cumulative_profit = parse_double(fields[4], path, line_no, "cumulative_profit");
            const double n = parse_double(fields[5], path, line_no, "n_weeks");
            if (n < 2 || n != std::floor(n)) {
                parse_fail(path, line_no, "n_weeks must be an integer >= 2");
            }
            s.n_weeks = static_cast<std::size_t>(n);
            point.summary = s;
        }
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace svport
