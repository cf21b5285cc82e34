#include "factorlab/panel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "factorlab/csv.hpp"
#include "factorlab/errors.hpp"

namespace factorlab::data {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_value(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

void note_rejection(IngestDiagnostics* diag, const std::string& why) {
    if (!diag) return;
    ++diag->rejected_rows;
    if (diag->notes.size() < 20) diag->notes.push_back(why);
}

}  // namespace

bool is_valid_cusip(const std::string& s) {
    if (s.size() != 9) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::optional<std::size_t> PanelStore::security_index(const std::string& cusip) const {
    auto it = std::lower_bound(cusips_.begin(), cusips_.end(), cusip);
    if (it == cusips_.end() || *it != cusip) return std::nullopt;
    return static_cast<std::size_t>(it - cusips_.begin());
}

std::optional<std::size_t> PanelStore::factor_index(const std::string& name) const {
    auto it = std::find(factor_names_.begin(), factor_names_.end(), name);
    if (it == factor_names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - factor_names_.begin());
}

PanelStore PanelBuilder::build() && {
    PanelStore s;
    s.calendar_ = std::move(calendar);
    s.cusips_ = std::move(cusips);
    if (!std::is_sorted(s.cusips_.begin(), s.cusips_.end()) ||
        std::adjacent_find(s.cusips_.begin(), s.cusips_.end()) != s.cusips_.end()) {
        throw InputError("panel securities must be sorted and unique");
    }
    for (const auto& c : s.cusips_) {
        if (!is_valid_cusip(c)) throw InputError("malformed CUSIP: '" + c + "'");
    }
    if (prices.rows() != s.cusips_.size() || prices.cols() != s.calendar_.size()) {
        throw InputError("price matrix shape does not match panel dimensions");
    }
    for (double v : prices.flat()) {
        if (!std::isnan(v) && v <= 0.0) {
            throw InputError("panel prices must be strictly positive");
        }
    }
    s.prices_ = std::move(prices);
    if (benchmark.size() != s.calendar_.size()) {
        throw InputError("benchmark series length does not match calendar");
    }
    s.benchmark_ = std::move(benchmark);
    s.factor_names_ = std::move(factor_names);
    if (fundamentals.size() != s.factor_names_.size()) {
        throw InputError("fundamentals outer size must match factor names");
    }
    for (auto& per_factor : fundamentals) {
        if (per_factor.size() != s.cusips_.size()) {
            throw InputError("fundamentals inner size must match security count");
        }
        for (auto& obs : per_factor) {
            std::sort(obs.begin(), obs.end(),
                      [](const FundamentalObs& a, const FundamentalObs& b) {
                          return a.obs_date < b.obs_date;
                      });
            for (std::size_t i = 1; i < obs.size(); ++i) {
                if (obs[i].obs_date == obs[i - 1].obs_date) {
                    throw InputError("duplicate fundamental observation date " +
                                     format_date(obs[i].obs_date));
                }
            }
            for (const auto& o : obs) {
                if (!s.calendar_.contains(o.obs_date)) {
                    throw InputError("fundamental observation date " +
                                     format_date(o.obs_date) +
                                     " is not a trading day");
                }
            }
        }
    }
    s.fundamentals_ = std::move(fundamentals);
    if (recommendations.size() != s.cusips_.size()) {
        throw InputError("recommendations size must match security count");
    }
    for (auto& obs : recommendations) {
        std::sort(obs.begin(), obs.end(),
                  [](const RecommendationObs& a, const RecommendationObs& b) {
                      return a.announce_date < b.announce_date;
                  });
        for (std::size_t i = 1; i < obs.size(); ++i) {
            if (obs[i].announce_date == obs[i - 1].announce_date) {
                throw InputError("duplicate recommendation announcement " +
                                 format_date(obs[i].announce_date));
            }
        }
        for (const auto& o : obs) {
            if (!s.calendar_.contains(o.announce_date)) {
                throw InputError("recommendation announcement " +
                                 format_date(o.announce_date) +
                                 " is not a trading day");
            }
        }
    }
    s.recommendations_ = std::move(recommendations);
    return s;
}

PanelStore PanelStore::ingest(const IngestPaths& paths, IngestDiagnostics* diag,
                              int fundamental_lag_days) {
    // prices define the universe and the trading calendar
    auto prices_tab = csv::read_file(paths.prices, {"date", "cusip", "close"});

    struct PriceRow {
        Date date;
        std::string cusip;
        double close;
    };
    std::vector<PriceRow> price_rows;
    price_rows.reserve(prices_tab.rows.size());
    std::set<Date> date_set;
    std::set<std::string> cusip_set;
    for (std::size_t i = 0; i < prices_tab.rows.size(); ++i) {
        const auto& r = prices_tab.rows[i];
        const std::string where = paths.prices + " row " + std::to_string(i + 2);
        if (!is_valid_cusip(r[1])) {
            note_rejection(diag, where + ": malformed CUSIP '" + r[1] + "'");
            continue;
        }
        const Date d = parse_date(r[0]);
        const double close = csv::parse_double(r[2], where);
        if (!(close > 0.0) || !std::isfinite(close)) {
            note_rejection(diag, where + ": non-positive price " + r[2]);
            continue;
        }
        price_rows.push_back({d, r[1], close});
        date_set.insert(d);
        cusip_set.insert(r[1]);
        if (diag) ++diag->price_rows;
    }
    if (price_rows.empty()) throw InputError("no valid price rows in " + paths.prices);

    PanelBuilder b;
    b.calendar = TradingCalendar::from_dates({date_set.begin(), date_set.end()});
    b.cusips.assign(cusip_set.begin(), cusip_set.end());
    const std::size_t n_sec = b.cusips.size();
    const std::size_t n_dates = b.calendar.size();
    b.prices = linalg::Matrix(n_sec, n_dates, kNaN);
    b.benchmark.assign(n_dates, kNaN);
    b.recommendations.resize(n_sec);

    auto sec_of = [&](const std::string& c) -> std::size_t {
        return static_cast<std::size_t>(
            std::lower_bound(b.cusips.begin(), b.cusips.end(), c) - b.cusips.begin());
    };

    for (const auto& pr : price_rows) {
        const std::size_t si = sec_of(pr.cusip);
        const std::size_t di = *b.calendar.index_of(pr.date);
        if (!std::isnan(b.prices(si, di))) {
            throw InputError("duplicate price key (" + format_date(pr.date) + ", " +
                             pr.cusip + ") in " + paths.prices);
        }
        b.prices(si, di) = pr.close;
    }

    // fundamentals
    auto fund_tab = csv::read_file(
        paths.fundamentals, {"date", "cusip", "factor", "value", "available_date"});
    std::map<std::string, std::size_t> factor_idx;
    std::set<std::tuple<Date, std::string, std::string>> fund_keys;
    for (std::size_t i = 0; i < fund_tab.rows.size(); ++i) {
        const auto& r = fund_tab.rows[i];
        const std::string where = paths.fundamentals + " row " + std::to_string(i + 2);
        if (!is_valid_cusip(r[1])) {
            note_rejection(diag, where + ": malformed CUSIP '" + r[1] + "'");
            continue;
        }
        const Date obs = parse_date(r[0]);
        const Date avail = parse_date(r[4]);
        if (!b.calendar.contains(obs)) {
            note_rejection(diag, where + ": date " + r[0] + " is not a trading day");
            continue;
        }
        if (!cusip_set.count(r[1])) {
            note_rejection(diag, where + ": CUSIP '" + r[1] + "' has no price history");
            continue;
        }
        auto key = std::make_tuple(obs, r[1], r[2]);
        if (!fund_keys.insert(key).second) {
            throw InputError("duplicate fundamental key (" + r[0] + ", " + r[1] +
                             ", " + r[2] + ") in " + where);
        }
        const double value = csv::parse_double(r[3], where);
        auto [it, inserted] = factor_idx.emplace(r[2], b.factor_names.size());
        if (inserted) {
            b.factor_names.push_back(r[2]);
            b.fundamentals.emplace_back(n_sec);
        }
        b.fundamentals[it->second][sec_of(r[1])].push_back(
            {obs, avail + fundamental_lag_days, value});
        if (diag) ++diag->fundamental_rows;
    }

    // recommendations
    auto rec_tab =
        csv::read_file(paths.recommendations, {"announce_date", "cusip", "score"});
    for (std::size_t i = 0; i < rec_tab.rows.size(); ++i) {
        const auto& r = rec_tab.rows[i];
        const std::string where = paths.recommendations + " row " + std::to_string(i + 2);
        if (!is_valid_cusip(r[1])) {
            note_rejection(diag, where + ": malformed CUSIP '" + r[1] + "'");
            continue;
        }
        const Date ann = parse_date(r[0]);
        if (!b.calendar.contains(ann)) {
            note_rejection(diag, where + ": date " + r[0] + " is not a trading day");
            continue;
        }
        if (!cusip_set.count(r[1])) {
            note_rejection(diag, where + ": CUSIP '" + r[1] + "' has no price history");
            continue;
        }
        const double score = csv::parse_double(r[2], where);
        b.recommendations[sec_of(r[1])].push_back({ann, score});
        if (diag) ++diag->recommendation_rows;
    }

    // benchmark
    auto bench_tab = csv::read_file(paths.benchmark, {"date", "level"});
    for (std::size_t i = 0; i < bench_tab.rows.size(); ++i) {
        const auto& r = bench_tab.rows[i];
        const std::string where = paths.benchmark + " row " + std::to_string(i + 2);
        const Date d = parse_date(r[0]);
        auto di = b.calendar.index_of(d);
        if (!di) {
            note_rejection(diag, where + ": date " + r[0] + " is not a trading day");
            continue;
        }
        const double level = csv::parse_double(r[1], where);
        if (!(level > 0.0) || !std::isfinite(level)) {
            note_rejection(diag, where + ": non-positive level " + r[1]);
            continue;
        }
        if (!std::isnan(b.benchmark[*di])) {
            throw InputError("duplicate benchmark date " + r[0] + " in " + where);
        }
        b.benchmark[*di] = level;
        if (diag) ++diag->benchmark_rows;
    }

    return std::move(b).build();
}

PanelSnapshot PanelStore::as_of(Date query_date) const {
    auto idx = calendar_.index_of(query_date);
    if (!idx) {
        throw InputError("query date " + format_date(query_date) +
                         " is not a trading day; nearest is " +
                         format_date(calendar_.nearest(query_date)));
    }
    return PanelSnapshot(this, query_date, *idx);
}

void PanelStore::export_csv(const std::string& dir) const {
    {
        csv::Writer w(dir + "/prices.csv");
        w.row({"date", "cusip", "close"});
        for (std::size_t di = 0; di < calendar_.size(); ++di) {
            const std::string ds = format_date(calendar_.date(di));
            for (std::size_t si = 0; si < cusips_.size(); ++si) {
                const double p = prices_(si, di);
                if (std::isnan(p)) continue;
                w.row({ds, cusips_[si], csv::format_double(p)});
            }
        }
    }
    {
        csv::Writer w(dir + "/fundamentals.csv");
        w.row({"date", "cusip", "factor", "value", "available_date"});
        for (std::size_t fi = 0; fi < factor_names_.size(); ++fi) {
            for (std::size_t si = 0; si < cusips_.size(); ++si) {
                for (const auto& o : fundamentals_[fi][si]) {
                    w.row({format_date(o.obs_date), cusips_[si], factor_names_[fi],
                           csv::format_double(o.value), format_date(o.available_date)});
                }
            }
        }
    }
    {
        csv::Writer w(dir + "/recommendations.csv");
        w.row({"announce_date", "cusip", "score"});
        for (std::size_t si = 0; si < cusips_.size(); ++si) {
            for (const auto& o : recommendations_[si]) {
                w.row({format_date(o.announce_date), cusips_[si],
                       csv::format_double(o.score)});
            }
        }
    }
    {
        csv::Writer w(dir + "/benchmark.csv");
        w.row({"date", "level"});
        for (std::size_t di = 0; di < calendar_.size(); ++di) {
            if (std::isnan(benchmark_[di])) continue;
            w.row({format_date(calendar_.date(di)), csv::format_double(benchmark_[di])});
        }
    }
}

bool PanelStore::equals(const PanelStore& other) const {
    if (calendar_.dates() != other.calendar_.dates()) return false;
    if (cusips_ != other.cusips_) return false;
    if (factor_names_ != other.factor_names_) return false;
    for (std::size_t si = 0; si < cusips_.size(); ++si) {
        for (std::size_t di = 0; di < calendar_.size(); ++di) {
            if (!same_value(prices_(si, di), other.prices_(si, di))) return false;
        }
    }
    for (std::size_t di = 0; di < calendar_.size(); ++di) {
        if (!same_value(benchmark_[di], other.benchmark_[di])) return false;
    }
    for (std::size_t fi = 0; fi < factor_names_.size(); ++fi) {
        for (std::size_t si = 0; si < cusips_.size(); ++si) {
            const auto& a = fundamentals_[fi][si];
            const auto& b = other.fundamentals_[fi][si];
            if (a.size() != b.size()) return false;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[k].obs_date != b[k].obs_date ||
                    a[k].available_date != b[k].available_date ||
                    !same_value(a[k].value, b[k].value)) {
                    return false;
                }
            }
        }
    }
    for (std::size_t si = 0; si < cusips_.size(); ++si) {
        const auto& a = recommendations_[si];
        const auto& b = other.recommendations_[si];
        if (a.size() != b.size()) return false;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k].announce_date != b[k].announce_date ||
                !same_value(a[k].score, b[k].score)) {
                return false;
            }
        }
    }
    return true;
}

PanelStore PanelStore::perturbed_after(Date cutoff, std::uint64_t seed) const {
    PanelStore copy = *this;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (rng() >> 11) * 0x1.0p-53;  // [0, 1)
    };
    for (std::size_t di = 0; di < calendar_.size(); ++di) {
        if (calendar_.date(di) <= cutoff) continue;
        for (std::size_t si = 0; si < cusips_.size(); ++si) {
            if (!std::isnan(copy.prices_(si, di))) {
                copy.prices_(si, di) = 1.0 + 500.0 * uniform();
            }
        }
        if (!std::isnan(copy.benchmark_[di])) {
            copy.benchmark_[di] = 1.0 + 5000.0 * uniform();
        }
    }
    for (auto& per_factor : copy.fundamentals_) {
        for (auto& obs : per_factor) {
            for (auto& o : obs) {
                if (o.available_date > cutoff) o.value = 20.0 * uniform() - 10.0;
            }
        }
    }
    for (auto& obs : copy.recommendations_) {
        for (auto& o : obs) {
            if (o.announce_date > cutoff) o.score = 1.0 + 4.0 * uniform();
        }
    }
    return copy;
}

std::vector<FundamentalObs> PanelSnapshot::visible_fundamentals(
    std::size_t factor_idx, std::size_t sec_idx) const {
    std::vector<FundamentalObs> out;
    for (const auto& o : store_->fundamentals_[factor_idx][sec_idx]) {
        if (o.available_date <= cutoff_) out.push_back(o);
    }
    return out;
}

std::vector<RecommendationObs> PanelSnapshot::visible_recommendations(
    std::size_t sec_idx) const {
    std::vector<RecommendationObs> out;
    for (const auto& o : store_->recommendations_[sec_idx]) {
        if (o.announce_date <= cutoff_) out.push_back(o);
    }
    return out;
}

std::size_t PanelSnapshot::observation_count() const {
    std::size_t n = 0;
    for (std::size_t si = 0; si < store_->cusips_.size(); ++si) {
        for (std::size_t di = 0; di <= cutoff_idx_; ++di) {
            if (!std::isnan(store_->prices_(si, di))) ++n;
        }
        for (const auto& o : store_->recommendations_[si]) {
            if (o.announce_date <= cutoff_) ++n;
        }
    }
    for (std::size_t di = 0; di <= cutoff_idx_; ++di) {
        if (!std::isnan(store_->benchmark_[di])) ++n;
    }
    for (const auto& per_factor : store_->fundamentals_) {
        for (const auto& obs : per_factor) {
            for (const auto& o : obs) {
                if (o.available_date <= cutoff_) ++n;
            }
        }
    }
    return n;
}

std::string PanelSnapshot::to_bytes() const {
    std::ostringstream os;
    os << "cutoff " << format_date(cutoff_) << "\n";
    for (std::size_t si = 0; si < store_->cusips_.size(); ++si) {
        for (std::size_t di = 0; di <= cutoff_idx_; ++di) {
            const double p = store_->prices_(si, di);
            if (std::isnan(p)) continue;
            os << "p " << store_->cusips_[si] << ' '
               << format_date(store_->calendar_.date(di)) << ' '
               << csv::format_double(p) << '\n';
        }
    }
    for (std::size_t di = 0; di <= cutoff_idx_; ++di) {
        const double lv = store_->benchmark_[di];
        if (std::isnan(lv)) continue;
        os << "b " << format_date(store_->calendar_.date(di)) << ' '
           << csv::format_double(lv) << '\n';
    }
    for (std::size_t fi = 0; fi < store_->factor_names_.size(); ++fi) {
        for (std::size_t si = 0; si < store_->cusips_.size(); ++si) {
            for (const auto& o : store_->fundamentals_[fi][si]) {
                if (o.available_date > cutoff_) continue;
                os << "f " << store_->factor_names_[fi] << ' ' << store_->cusips_[si]
                   << ' ' << format_date(o.obs_date) << ' '
                   << csv::format_double(o.value) << '\n';
            }
        }
    }
    for (std::size_t si = 0; si < store_->cusips_.size(); ++si) {
        for (const auto& o : store_->recommendations_[si]) {
            if (o.announce_date > cutoff_) continue;
            os << "r " << store_->cusips_[si] << ' ' << format_date(o.announce_date)
               << ' ' << csv::format_double(o.score) << '\n';
        }
    }
    return os.str();
}

}  // namespace factorlab::data
