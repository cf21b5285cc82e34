#include "factorlab/calendar.hpp"

#include <algorithm>
#include <cstdio>

#include "factorlab/errors.hpp"

namespace factorlab {

namespace {

// civil <-> days algorithms (Howard Hinnant's date algorithms)
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool days_in_month_ok(int y, int m, int d) {
    static const int md[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    int lim = md[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) lim = 29;
    return d <= lim;
}

}  // namespace

Date make_date(int year, int month, int day) {
    return static_cast<Date>(days_from_civil(year, month, day));
}

void date_to_ymd(Date d, int& year, int& month, int& day) {
    civil_from_days(d, year, month, day);
}

Date parse_date(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' ||
        std::sscanf(iso.c_str(), "%4d-%2d-%2d", &y, &m, &d) != 3 ||
        !days_in_month_ok(y, m, d)) {
        throw InputError("malformed date (expected yyyy-mm-dd): '" + iso + "'");
    }
    return make_date(y, m, d);
}

std::string format_date(Date d) {
    int y, m, dd;
    civil_from_days(d, y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, dd);
    return buf;
}

TradingCalendar TradingCalendar::from_dates(std::vector<Date> dates) {
    if (dates.empty()) throw InputError("trading calendar requires at least one date");
    std::sort(dates.begin(), dates.end());
    dates.erase(std::unique(dates.begin(), dates.end()), dates.end());

    TradingCalendar cal;
    cal.dates_ = std::move(dates);
    int prev_y = -1, prev_m = -1;
    for (std::size_t i = 0; i < cal.dates_.size(); ++i) {
        int y, m, d;
        civil_from_days(cal.dates_[i], y, m, d);
        if (y != prev_y || m != prev_m) {
            cal.month_start_idx_.push_back(i);
            prev_y = y;
            prev_m = m;
        }
    }
    return cal;
}

bool TradingCalendar::is_month_start(std::size_t idx) const {
    return std::binary_search(month_start_idx_.begin(), month_start_idx_.end(), idx);
}

bool TradingCalendar::contains(Date d) const {
    return std::binary_search(dates_.begin(), dates_.end(), d);
}

std::optional<std::size_t> TradingCalendar::index_of(Date d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
}

Date TradingCalendar::nearest(Date d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end()) return dates_.back();
    if (it == dates_.begin()) return dates_.front();
    const Date hi = *it;
    const Date lo = *(it - 1);
    return (d - lo) <= (hi - d) ? lo : hi;
}

}  // namespace factorlab
