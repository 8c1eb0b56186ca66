#ifndef SVPORT_CALENDAR_HPP
#define SVPORT_CALENDAR_HPP

#include <chrono>
#include <string>
#include <vector>

namespace svport {

using Date = std::chrono::sys_days;

// One calendar week of the panel. Weeks run Sunday through Saturday and are
// identified by their starting Sunday; `index` is the 0-based position within
// the panel that owns the calendar.
struct WeekId {
    Date start_date{};
    int index = 0;

    bool operator==(const WeekId&) const = default;
};

Date parse_iso_date(std::string_view text);
std::string format_iso_date(Date date);

bool is_sunday(Date date);

// Sunday on or before `date`.
Date week_start_of(Date date);

// All weeks whose Sunday-Saturday window intersects [first, last], indexed
// from 0.
std::vector<WeekId> week_calendar_covering(Date first, Date last);

// True when consecutive weeks are exactly 7 days apart and indices ascend
// in steps of 1.
bool is_contiguous(const std::vector<WeekId>& calendar);

// Rewrites indices to match vector positions.
void reindex(std::vector<WeekId>& calendar);

bool same_week_dates(const std::vector<WeekId>& a, const std::vector<WeekId>& b);

}  // namespace svport

#endif
