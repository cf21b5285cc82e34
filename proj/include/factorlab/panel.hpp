#pragma once

// Point-in-time panels of prices, fundamentals, analyst recommendations and
// a benchmark index, keyed by CUSIP and trading date. A PanelStore is
// immutable after construction; PanelSnapshot restricts every accessor to
// observations available at or before a cutoff date.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "factorlab/calendar.hpp"
#include "factorlab/linalg.hpp"

namespace factorlab::data {

bool is_valid_cusip(const std::string& s);

struct FundamentalObs {
    Date obs_date;
    Date available_date;
    double value;
};

struct RecommendationObs {
    Date announce_date;
    double score;
};

struct IngestPaths {
    std::string prices;
    std::string fundamentals;
    std::string recommendations;
    std::string benchmark;
};

struct IngestDiagnostics {
    std::size_t rejected_rows = 0;
    std::size_t price_rows = 0;
    std::size_t fundamental_rows = 0;
    std::size_t recommendation_rows = 0;
    std::size_t benchmark_rows = 0;
    std::vector<std::string> notes;  // first few rejection reasons
};

class PanelSnapshot;

class PanelStore {
public:
    static PanelStore ingest(const IngestPaths& paths,
                             IngestDiagnostics* diag = nullptr,
                             int fundamental_lag_days = 0);

    const TradingCalendar& calendar() const { return calendar_; }
    std::size_t n_dates() const { return calendar_.size(); }
    std::size_t n_securities() const { return cusips_.size(); }
    const std::vector<std::string>& cusips() const { return cusips_; }
    std::optional<std::size_t> security_index(const std::string& cusip) const;

    // NaN when no observation exists
    double price(std::size_t sec_idx, std::size_t date_idx) const {
        return prices_(sec_idx, date_idx);
    }
    std::span<const double> price_series(std::size_t sec_idx) const {
        return prices_.row(sec_idx);
    }
    double benchmark_level(std::size_t date_idx) const { return benchmark_[date_idx]; }
    std::span<const double> benchmark_series() const { return benchmark_; }

    const std::vector<std::string>& factor_names() const { return factor_names_; }
    std::optional<std::size_t> factor_index(const std::string& name) const;
    const std::vector<FundamentalObs>& fundamentals(std::size_t factor_idx,
                                                    std::size_t sec_idx) const {
        return fundamentals_[factor_idx][sec_idx];
    }
    const std::vector<RecommendationObs>& recommendations(std::size_t sec_idx) const {
        return recommendations_[sec_idx];
    }

    // Throws InputError naming the nearest trading day when query_date is
    // not a calendar member.
    PanelSnapshot as_of(Date query_date) const;

    // Writes prices.csv, fundamentals.csv, recommendations.csv, benchmark.csv.
    void export_csv(const std::string& dir) const;

    bool equals(const PanelStore& other) const;

    // Copy with every observation whose availability date is strictly after
    // `cutoff` replaced by seeded random values (leak-detection harness).
    PanelStore perturbed_after(Date cutoff, std::uint64_t seed) const;

private:
    friend class PanelBuilder;
    friend class PanelSnapshot;

    TradingCalendar calendar_;
    std::vector<std::string> cusips_;  // sorted, unique
    linalg::Matrix prices_;            // n_securities x n_dates, NaN = missing
    std::vector<double> benchmark_;    // per date, NaN = missing
    std::vector<std::string> factor_names_;
    // [factor][security] -> observations sorted by obs_date
    std::vector<std::vector<std::vector<FundamentalObs>>> fundamentals_;
    std::vector<std::vector<RecommendationObs>> recommendations_;  // per security
};

// Assembles a PanelStore programmatically (synthetic generator, tests).
class PanelBuilder {
public:
    TradingCalendar calendar;
    std::vector<std::string> cusips;
    linalg::Matrix prices;  // n_securities x n_dates
    std::vector<double> benchmark;
    std::vector<std::string> factor_names;
    std::vector<std::vector<std::vector<FundamentalObs>>> fundamentals;
    std::vector<std::vector<RecommendationObs>> recommendations;

    // Validates invariants (positive prices, sorted unique keys, calendar
    // membership) and produces the immutable store.
    PanelStore build() &&;
};

class PanelSnapshot {
public:
    Date cutoff() const { return cutoff_; }
    std::size_t cutoff_index() const { return cutoff_idx_; }
    const PanelStore& store() const { return *store_; }

    // Prices dated <= cutoff (availability = observation date).
    std::span<const double> price_series(std::size_t sec_idx) const {
        return store_->prices_.row(sec_idx).subspan(0, cutoff_idx_ + 1);
    }
    std::span<const double> benchmark_series() const {
        return {store_->benchmark_.data(), cutoff_idx_ + 1};
    }

    // Fundamental observations with available_date <= cutoff, by obs_date.
    std::vector<FundamentalObs> visible_fundamentals(std::size_t factor_idx,
                                                     std::size_t sec_idx) const;
    // Recommendations with announce_date <= cutoff.
    std::vector<RecommendationObs> visible_recommendations(std::size_t sec_idx) const;

    std::size_t observation_count() const;

    // Canonical serialization of everything visible; equal bytes iff equal
    // visible content.
    std::string to_bytes() const;

private:
    friend class PanelStore;
    PanelSnapshot(const PanelStore* s, Date cutoff, std::size_t cutoff_idx)
        : store_(s), cutoff_(cutoff), cutoff_idx_(cutoff_idx) {}

    const PanelStore* store_;
    Date cutoff_;
    std::size_t cutoff_idx_;
};

}  // namespace factorlab::data
