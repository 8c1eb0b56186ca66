#include "svport/calendar.hpp"

#include <cstdio>

#include "svport/error.hpp"

namespace svport {

Date parse_iso_date(std::string_view text) {
    // Expected layout: YYYY-MM-DD.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw Error(ErrorCode::Parse, "expected ISO date YYYY-MM-DD, got '" + std::string(text) + "'");
    auto digits = [&](size_t pos, size_t len) {
        int value = 0;
        for (size_t i = pos; i < pos + len; ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw Error(ErrorCode::Parse, "non-digit in date '" + std::string(text) + "'");
            value = value * 10 + (c - '0');
        }
        return value;
    };
    std::chrono::year_month_day ymd{std::chrono::year{digits(0, 4)},
                                    std::chrono::month{static_cast<unsigned>(digits(5, 2))},
                                    std::chrono::day{static_cast<unsigned>(digits(8, 2))}};
    if (!ymd.ok())
        throw Error(ErrorCode::Parse, "invalid calendar date '" + std::string(text) + "'");
    return Date{ymd};
}

std::string format_iso_date(Date date) {
    std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

bool is_sunday(Date date) {
    return std::chrono::weekday{date} == std::chrono::Sunday;
}

Date week_start_of(Date date) {
    std::chrono::weekday wd{date};
    return date - std::chrono::days{wd.c_encoding()};  // c_encoding: Sunday = 0
}

std::vector<WeekId> week_calendar_covering(Date first, Date last) {
    if (last < first)
        throw Error(ErrorCode::Validation, "calendar range end precedes start");
    std::vector<WeekId> weeks;
    Date start = week_start_of(first);
    Date last_start = week_start_of(last);
    int index = 0;
    for (Date d = start; d <= last_start; d += std::chrono::days{7})
        weeks.push_back(WeekId{d, index++});
    return weeks;
}

bool is_contiguous(const std::vector<WeekId>& calendar) {
    for (size_t i = 0; i < calendar.size(); ++i) {
        if (!is_sunday(calendar[i].start_date)) return false;
        if (i > 0) {
            if (calendar[i].start_date - calendar[i - 1].start_date != std::chrono::days{7}) return false;
            if (calendar[i].index != calendar[i - 1].index + 1) return false;
        }
    }
    return true;
}

void reindex(std::vector<WeekId>& calendar) {
    for (size_t i = 0; i < calendar.size(); ++i) calendar[i].index = static_cast<int>(i);
}

bool same_week_dates(const std::vector<WeekId>& a, const std::vector<WeekId>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].start_date != b[i].start_date) return false;
    return true;
}

}  // namespace svport
