#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace factorlab {

// Calendar date as days since 1970-01-01 (civil). Cheap to compare and hash;
// parse/format round-trip ISO-8601 (yyyy-mm-dd).
using Date = std::int32_t;

Date make_date(int year, int month, int day);
void date_to_ymd(Date d, int& year, int& month, int& day);
Date parse_date(const std::string& iso);  // throws InputError on malformed input
std::string format_date(Date d);

// Immutable sequence of trading days plus the first trading day of each
// calendar month present in the sequence.
class TradingCalendar {
public:
    TradingCalendar() = default;

    // dates must be non-empty; duplicates are collapsed, input is sorted.
    static TradingCalendar from_dates(std::vector<Date> dates);

    std::size_t size() const { return dates_.size(); }
    Date date(std::size_t idx) const { return dates_[idx]; }
    const std::vector<Date>& dates() const { return dates_; }

    // Indices into dates() marking the first trading day of each month.
    const std::vector<std::size_t>& month_start_indices() const {
        return month_start_idx_;
    }
    bool is_month_start(std::size_t idx) const;

    bool contains(Date d) const;
    // Index of d, or nullopt when d is not a trading day.
    std::optional<std::size_t> index_of(Date d) const;
    // Nearest member date (ties resolve to the earlier one).
    Date nearest(Date d) const;

private:
    std::vector<Date> dates_;
    std::vector<std::size_t> month_start_idx_;
};

}  // namespace factorlab
