#pragma once
// Lower records of an i.i.d. stream. With p = 1 and L = 2 the old task is
// always the running minimum, so its resident times are inter-record times.

#include <cstdint>
#include <span>
#include <vector>

#include "prioq/rng.hpp"

namespace prioq {

struct RecordTrace {
  std::vector<std::uint64_t> record_times;  // T_1 = 1 < T_2 < ...
  std::vector<double> record_values;        // strictly decreasing
  std::vector<std::uint64_t> inter_record;  // Delta_k = T_k - T_{k-1}, k >= 2
  std::vector<std::uint8_t> indicators;     // I_t, t = 1..n
};

// Ties with the current minimum are not records.
RecordTrace extract_records(std::span<const double> stream);

// Exact joint law of (I_1, ..., I_t_max), by enumerating all t_max! rank
// orderings with equal weight. Bit t-1 of an outcome mask is I_t.
struct IndicatorLaw {
  std::size_t t_max = 0;
  std::uint64_t orderings = 0;        // t_max!
  std::vector<std::uint64_t> counts;  // indexed by outcome mask

  double probability(std::uint64_t mask) const;
  // P(I_t = 1) as an exact fraction count / orderings.
  std::uint64_t marginal_count(std::size_t t) const;
  // count(mask) == prod_t (I_t ? 1 : t - 1) for every mask, i.e. the law
  // is the product of Bernoulli(1/t) marginals with no rounding involved.
  bool is_product_of_marginals() const;
};

// Throws DomainError for t_max == 0 or t_max > 8.
IndicatorLaw indicator_law_oracle(std::size_t t_max);

// P(Delta_k / T_k > x | T_{k-1} = t) = t / floor(t / (1 - x)); 0 at x = 1.
double tata_conditional(std::uint64_t t, double x);

// Record times drawn directly from the gap law
//   P(T_k > m | T_{k-1} = t) = t / m,  i.e. T_k = floor(t / U) + 1,
// which reaches record k in O(k) work instead of ~e^k stream draws. Times
// are tracked exactly while below 2^52 and in log space beyond that.
// Index 0 is record 1; log_gaps[0] is NaN (Delta_1 is undefined).
struct RecordPath {
  std::vector<double> log_times;
  std::vector<double> log_gaps;
  std::vector<double> gap_ratios;  // Delta_k / T_k (NaN at k = 1)
};
RecordPath sample_record_path(std::size_t records, Rng& rng);

// Record times of a directly streamed Uniform(0,1) sequence, stopping at
// `records` records or `max_steps` draws, whichever comes first.
RecordTrace stream_records(std::size_t records, std::uint64_t max_steps, Rng& rng);

struct AsymptoticOptions {
  std::size_t lil_records = 10'000;  // length of the single long run
  std::size_t lil_first = 10;        // first k included in the band fraction
  double lil_halfwidth = 1.05;
  // 0: gap-law sampling. > 0: stream each run for at most this many draws.
  std::uint64_t stream_cap = 0;
};

struct AsymptoticReport {
  std::size_t n_runs = 0, k_target = 0, runs_completed = 0;
  bool partial = false;  // some streamed runs did not reach k_target
  // mean over runs of ln z_k / k
  double slln_times = 0, slln_gaps = 0, slln_stat = 0;
  // KS distance of (ln z_k - k) / sqrt(k) to N(0, 1)
  double clt_ks_times = 0, clt_ks_gaps = 0;
  // fraction of (ln z_k - k) / sqrt(2 k ln ln k) inside [-w, w] on one long run
  double lil_band_times = 0, lil_band_gaps = 0;
  // KS distance of Delta_k / T_k to Uniform(0, 1)
  double ratio_ks = 0;
};

// Throws DomainError for k_target < 10 or n_runs < 100.
AsymptoticReport asymptotic_tests(std::size_t n_runs, std::size_t k_target, Rng& rng,
                                  const AsymptoticOptions& options = {});

// Median over runs of ln Delta_k / k.
double median_log_gap_rate(std::size_t k, std::size_t n_runs, Rng& rng);

}  // namespace prioq
