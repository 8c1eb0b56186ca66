#ifndef SVPORT_ERROR_HPP
#define SVPORT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace svport {

enum class ErrorCode {
    Parse,             // malformed input file
    Validation,        // value violates a panel/type invariant
    DataGap,           // missing observation for a retained (asset, week)
    InsufficientData,  // too few weeks for the requested operation
    Structural,        // required series/ticker absent
    UnmergeableBatch,  // reference series unusable for rescaling
    CalendarMismatch,  // week calendars disagree
    Domain,            // value outside an operation's mathematical domain
    EmptyUniverse,     // no included assets left
    SharpeUndefined,   // zero-variance return series
    Comparability,     // summaries cover different week spans
    EmptySweep,        // every grid point failed
    Io,                // filesystem failure
    Config             // invalid run configuration
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          message_(message) {}

    ErrorCode code() const { return code_; }

    // Message without the code prefix, for rethrowing with extra context.
    const std::string& message() const { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Validation: return "validation error";
        case ErrorCode::DataGap: return "data gap";
        case ErrorCode::InsufficientData: return "insufficient data";
        case ErrorCode::Structural: return "structural error";
        case ErrorCode::UnmergeableBatch: return "unmergeable batch";
        case ErrorCode::CalendarMismatch: return "calendar mismatch";
        case ErrorCode::Domain: return "domain error";
        case ErrorCode::EmptyUniverse: return "empty universe";
        case ErrorCode::SharpeUndefined: return "Sharpe undefined";
        case ErrorCode::Comparability: return "comparability error";
        case ErrorCode::EmptySweep: return "empty sweep";
        case ErrorCode::Io: return "io error";
        case ErrorCode::Config: return "config error";
    }
    return "error";
}

// One validation finding. `asset` and `week` are empty when the finding is
// not tied to a specific entry (e.g. a calendar-level mismatch).
struct Diagnostic {
    std::string asset;
    std::string week;
    std::string reason;

    std::string to_string() const {
        std::string out;
        if (!asset.empty()) out += "asset " + asset + ", ";
        if (!week.empty()) out += "week " + week + ", ";
        out += reason;
        return out;
    }
};

}  // namespace svport

#endif
