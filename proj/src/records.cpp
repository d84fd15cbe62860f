#include "prioq/records.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prioq/ecdf.hpp"
#include "prioq/error.hpp"

namespace prioq {
namespace {

constexpr double kExactLimit = 4503599627370496.0;  // 2^52
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

RecordTrace extract_records(std::span<const double> stream) {
  RecordTrace tr;
  tr.indicators.reserve(stream.size());
  double current = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const std::uint64_t t = i + 1;
    if (stream[i] < current) {
      current = stream[i];
      if (!tr.record_times.empty()) tr.inter_record.push_back(t - tr.record_times.back());
      tr.record_times.push_back(t);
      tr.record_values.push_back(current);
      tr.indicators.push_back(1);
    } else {
      tr.indicators.push_back(0);
    }
  }
  return tr;
}

double IndicatorLaw::probability(std::uint64_t mask) const {
  return static_cast<double>(counts.at(mask)) / static_cast<double>(orderings);
}

std::uint64_t IndicatorLaw::marginal_count(std::size_t t) const {
  std::uint64_t c = 0;
  for (std::uint64_t mask = 0; mask < counts.size(); ++mask)
    if (mask >> (t - 1) & 1U) c += counts[mask];
  return c;
}

bool IndicatorLaw::is_product_of_marginals() const {
  for (std::uint64_t mask = 0; mask < counts.size(); ++mask) {
    std::uint64_t expect = 1;
    for (std::size_t t = 1; t <= t_max; ++t)
      expect *= (mask >> (t - 1) & 1U) ? 1 : (t - 1);
    if (counts[mask] != expect) return false;
  }
  return true;
}

IndicatorLaw indicator_law_oracle(std::size_t t_max) {
  if (t_max == 0 || t_max > 8) throw DomainError("indicator_law_oracle: t_max must be in 1..8");
  IndicatorLaw law;
  law.t_max = t_max;
  law.counts.assign(std::size_t{1} << t_max, 0);
  std::vector<int> ranks(t_max);
  std::iota(ranks.begin(), ranks.end(), 0);
  do {
    std::uint64_t mask = 0;
    int running = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < t_max; ++i) {
      if (ranks[i] < running) {
        running = ranks[i];
        mask |= std::uint64_t{1} << i;
      }
    }
    ++law.counts[mask];
    ++law.orderings;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return law;
}

double tata_conditional(std::uint64_t t, double x) {
  if (t == 0) throw DomainError("tata_conditional: t must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("tata_conditional: x must lie in [0, 1]");
  if (x == 1.0) return 0.0;
  const double td = static_cast<double>(t);
  return td / std::floor(td / (1.0 - x));
}

RecordPath sample_record_path(std::size_t records, Rng& rng) {
  RecordPath path;
  path.log_times.reserve(records);
  path.log_gaps.reserve(records);
  path.gap_ratios.reserve(records);
  if (records == 0) return path;
  path.log_times.push_back(0.0);
  path.log_gaps.push_back(kNaN);
  path.gap_ratios.push_back(kNaN);

  double t = 1.0;  // exact while below 2^52
  bool exact = true;
  double log_t = 0.0;
  for (std::size_t k = 2; k <= records; ++k) {
    const double u = rng.uniform_pos();
    if (exact) {
      const double next = std::floor(t / u) + 1.0;
      if (next < kExactLimit) {
        const double gap = next - t;
        path.log_times.push_back(std::log(next));
        path.log_gaps.push_back(std::log(gap));
        path.gap_ratios.push_back(gap / next);
        t = next;
        log_t = std::log(next);
        continue;
      }
      exact = false;
    }
    // Beyond 2^52 the floor and +1 are below double resolution.
    const double log_next = log_t - std::log(u);
    const double ratio = -std::expm1(log_t - log_next);  // 1 - T_{k-1} / T_k
    path.log_times.push_back(log_next);
    path.log_gaps.push_back(log_next + std::log(ratio));
    path.gap_ratios.push_back(ratio);
    log_t = log_next;
  }
  return path;
}

RecordTrace stream_records(std::size_t records, std::uint64_t max_steps, Rng& rng) {
  RecordTrace tr;
  double current = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 1; t <= max_steps && tr.record_times.size() < records; ++t) {
    const double x = rng.uniform();
    if (x < current) {
      current = x;
      if (!tr.record_times.empty()) tr.inter_record.push_back(t - tr.record_times.back());
      tr.record_times.push_back(t);
      tr.record_values.push_back(x);
    }
  }
  return tr;
}

AsymptoticReport asymptotic_tests(std::size_t n_runs, std::size_t k_target, Rng& rng,
                                  const AsymptoticOptions& options) {
  if (k_target < 10) throw DomainError("asymptotic_tests: k_target must be >= 10");
  if (n_runs < 100) throw DomainError("asymptotic_tests: n_runs must be >= 100");

  AsymptoticReport rep;
  rep.n_runs = n_runs;
  rep.k_target = k_target;
  const double k = static_cast<double>(k_target);
  const double root_k = std::sqrt(k);

  std::vector<double> z_times, z_gaps, ratios;
  double sum_times = 0.0, sum_gaps = 0.0;
  for (std::size_t run = 0; run < n_runs; ++run) {
    double log_t, log_gap, ratio;
    if (options.stream_cap == 0) {
      const RecordPath path = sample_record_path(k_target, rng);
      log_t = path.log_times.back();
      log_gap = path.log_gaps.back();
      ratio = path.gap_ratios.back();
    } else {
      const RecordTrace tr = stream_records(k_target, options.stream_cap, rng);
      if (tr.record_times.size() < k_target) continue;
      const double tk = static_cast<double>(tr.record_times.back());
      const double dk = static_cast<double>(tr.inter_record.back());
      log_t = std::log(tk);
      log_gap = std::log(dk);
      ratio = dk / tk;
    }
    ++rep.runs_completed;
    sum_times += log_t / k;
    sum_gaps += log_gap / k;
    z_times.push_back((log_t - k) / root_k);
    z_gaps.push_back((log_gap - k) / root_k);
    ratios.push_back(ratio);
  }
  rep.partial = rep.runs_completed < n_runs;
  if (rep.runs_completed == 0) return rep;

  const double runs = static_cast<double>(rep.runs_completed);
  rep.slln_times = sum_times / runs;
  rep.slln_gaps = sum_gaps / runs;
  rep.slln_stat = 0.5 * (rep.slln_times + rep.slln_gaps);
  rep.clt_ks_times = ks_distance(z_times, standard_normal_cdf);
  rep.clt_ks_gaps = ks_distance(z_gaps, standard_normal_cdf);
  rep.ratio_ks = ks_distance(ratios, [](double x) { return std::clamp(x, 0.0, 1.0); });

  const RecordPath long_run = sample_record_path(options.lil_records, rng);
  std::size_t inside_t = 0, inside_g = 0, total = 0;
  for (std::size_t i = options.lil_first - 1; i < long_run.log_times.size(); ++i) {
    const double kk = static_cast<double>(i + 1);
    const double envelope = std::sqrt(2.0 * kk * std::log(std::log(kk)));
    if (std::fabs((long_run.log_times[i] - kk) / envelope) <= options.lil_halfwidth) ++inside_t;
    if (std::fabs((long_run.log_gaps[i] - kk) / envelope) <= options.lil_halfwidth) ++inside_g;
    ++total;
  }
  if (total > 0) {
    rep.lil_band_times = static_cast<double>(inside_t) / static_cast<double>(total);
    rep.lil_band_gaps = static_cast<double>(inside_g) / static_cast<double>(total);
  }
  return rep;
}

double median_log_gap_rate(std::size_t k, std::size_t n_runs, Rng& rng) {
  if (k < 2 || n_runs == 0) throw DomainError("median_log_gap_rate: need k >= 2 and runs > 0");
  std::vector<double> rates;
  rates.reserve(n_runs);
  for (std::size_t i = 0; i < n_runs; ++i)
    rates.push_back(sample_record_path(k, rng).log_gaps.back() / static_cast<double>(k));
  const auto mid = rates.begin() + static_cast<std::ptrdiff_t>(rates.size() / 2);
  std::nth_element(rates.begin(), mid, rates.end());
  if (rates.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(rates.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace prioq
