#pragma once

// Synthetic panel generator with planted factor structure. Months are
// exactly 21 trading days (days 01..21 of consecutive calendar months), so
// the first trading day of each month is simultaneously a rebalance date
// and a 21-day forward-return anchor. At every anchor the construction
// guarantees, exactly:
//
//   forward 21-day return of security i
//       = sum_f planted_beta_f * z_{i,f}  +  b_i * m  +  noise
//
// where z are the clipped cross-sectional z-scores of that month's raw
// factor values (identical to what the feature pipeline computes), b_i is a
// per-security market loading on the benchmark's forward month return m,
// and noise is i.i.d. N(0, noise_sigma^2). Between anchors prices follow a
// log-linear path plus a benchmark-coupled bridge and bridge noise, both of
// which vanish at the anchors.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "factorlab/panel.hpp"

namespace factorlab::data {

struct SyntheticSpec {
    int n_securities = 120;
    int n_days = 1512;
    std::uint64_t seed = 1;
    // factor name -> planted coefficient (monthly return per unit z-score);
    // zero-beta entries are noise factors
    std::vector<std::pair<std::string, double>> planted_betas = {
        {"value", 0.012}, {"growth", 0.0}, {"quality", 0.0}};
    double noise_sigma = 0.17;        // idiosyncratic monthly return std
    double market_vol = 0.03;         // benchmark monthly volatility
    double market_beta_sigma = 0.3;   // dispersion of market loadings around 1
    double intra_month_noise = 0.004; // daily bridge-noise std
    double factor_persistence = 0.9;  // month-over-month AR(1) of factor scores
    int fundamental_lag_days = 0;

    void validate() const;  // throws InputError
};

PanelStore generate_synthetic(const SyntheticSpec& spec);

// Writes the truth sidecar (header `factor,beta`).
void write_truth(const SyntheticSpec& spec, const std::string& path);

}  // namespace factorlab::data
