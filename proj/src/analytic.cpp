#include "prioq/analytic.hpp"

#include <cmath>
#include <limits>

#include "prioq/error.hpp"
#include "prioq/selection.hpp"

namespace prioq {
namespace {

void require_open_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": p must lie in [0,1]");
}

// a^m - b^m for a = (1 + p) / 2, b = (1 - p) / 2 without cancellation at
// small p: b^m * expm1(m * ln(a / b)) with ln(a / b) = 2 atanh(p).
double power_gap(double p, double m) {
  const double a = 0.5 * (1.0 + p), b = 0.5 * (1.0 - p);
  const double log_ratio = 2.0 * std::atanh(p);
  if (m * log_ratio < 1.0) return std::pow(b, m) * std::expm1(m * log_ratio);
  return std::pow(a, m) - std::pow(b, m);
}

// (1 - p^2) / (4 p)
double barabasi_prefactor(double p) { return (1.0 - p * p) / (4.0 * p); }

// sum_{m >= start} x^m / m, summed until the remainder bound
// x^M / (M (1 - x)) drops below `eps`. Returns {sum, remainder bound, terms}.
SeriesValue log_series_tail(double x, std::uint64_t start, double eps = 1e-18) {
  double sum = 0.0, term_pow = std::pow(x, static_cast<double>(start));
  std::uint64_t m = start;
  std::uint64_t n = 0;
  while (true) {
    const double bound = term_pow / (static_cast<double>(m) * (1.0 - x));
    if (bound < eps || term_pow == 0.0) return {sum, bound, n};
    sum += term_pow / static_cast<double>(m);
    term_pow *= x;
    ++m;
    ++n;
    if (n > 100'000'000) return {sum, bound, n};
  }
}

}  // namespace

TauRegime barabasi_regime(double p) {
  require_open_unit(p, "barabasi_regime");
  if (p == 0.0) return TauRegime::geometric;
  if (p == 1.0) return TauRegime::record_limit;
  return TauRegime::mixed;
}

double barabasi_stationary_cdf(double p, const PriorityDistribution& dist, double x) {
  require_open_unit(p, "barabasi_stationary_cdf");
  if (p == 1.0)
    throw DegenerateError("barabasi_stationary_cdf: p = 1 has only the degenerate solution");
  if (!(x >= dist.lo() && x <= dist.hi()))
    throw DomainError("barabasi_stationary_cdf: x outside the support");
  const double r = dist.cdf(x);
  return (1.0 + p) * r / (1.0 - p + 2.0 * p * r);
}

double barabasi_stationary_density(double p, const PriorityDistribution& dist, double x) {
  require_open_unit(p, "barabasi_stationary_density");
  if (p == 1.0)
    throw DegenerateError("barabasi_stationary_density: p = 1 has only the degenerate solution");
  const double r = dist.cdf(x);
  const double den = 1.0 - p + 2.0 * p * r;
  return (1.0 + p) * (1.0 - p) * dist.pdf(x) / (den * den);
}

OldTaskDensity barabasi_stationary_old_density(double p, const PriorityDistribution& dist) {
  if (p == 1.0)
    throw DegenerateError("barabasi_stationary_old_density: p = 1 has only the degenerate solution");
  std::vector<double> breaks(dist.breakpoints().begin(), dist.breakpoints().end());
  return OldTaskDensity::from_function(
      dist.lo(), dist.hi(),
      [p, dist](double x) { return barabasi_stationary_density(p, dist, x); },
      std::move(breaks));
}

double barabasi_tau_pmf(double p, std::uint64_t k) {
  require_open_unit(p, "barabasi_tau_pmf");
  if (k == 0) throw DomainError("barabasi_tau_pmf: k must be >= 1");
  if (p == 0.0) return std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(k, 2000)));
  if (p == 1.0) return k == 1 ? 1.0 : 0.0;
  const double c = barabasi_prefactor(p);
  if (k == 1) return 1.0 - 2.0 * c * std::atanh(p);  // ln((1+p)/(1-p)) = 2 atanh p
  const double m = static_cast<double>(k - 1);
  return c * power_gap(p, m) / m;
}

SeriesValue barabasi_tau_mass(double p, std::uint64_t kmax) {
  require_open_unit(p, "barabasi_tau_mass");
  if (kmax == 0) kmax = 1;
  if (p == 0.0 || p == 1.0) {
    double s = 0.0;
    for (std::uint64_t k = 1; k <= kmax; ++k) s += barabasi_tau_pmf(p, k);
    const double tail = p == 0.0 ? std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(kmax, 2000))) : 0.0;
    return {s + tail, 0.0, kmax};
  }
  double s = 0.0;
  for (std::uint64_t k = 1; k <= kmax; ++k) s += barabasi_tau_pmf(p, k);
  // Terms k > kmax are m = k - 1 >= kmax.
  const double c = barabasi_prefactor(p);
  const SeriesValue ta = log_series_tail(0.5 * (1.0 + p), kmax);
  const SeriesValue tb = log_series_tail(0.5 * (1.0 - p), kmax);
  return {s + c * (ta.value - tb.value), c * (ta.tail_bound + tb.tail_bound),
          kmax + ta.terms};
}

ExpectedTau barabasi_expected_tau(double p, std::uint64_t kmax) {
  require_open_unit(p, "barabasi_expected_tau");
  if (p == 1.0)
    return {std::numeric_limits<double>::infinity(), false, 0.0};
  if (p == 0.0) return {2.0, true, 0.0};
  if (kmax == 0) kmax = 1;
  double s = 0.0;
  for (std::uint64_t k = 1; k <= kmax; ++k)
    s += static_cast<double>(k) * barabasi_tau_pmf(p, k);
  // k * pmf(k) = C (a^m - b^m) (1 + 1/m) with m = k - 1; for m >= kmax the
  // geometric part sums to a^kmax / (1 - a) - b^kmax / (1 - b).
  const double a = 0.5 * (1.0 + p), b = 0.5 * (1.0 - p);
  const double c = barabasi_prefactor(p);
  const double km = static_cast<double>(kmax);
  const double geometric = std::pow(a, km) / (1.0 - a) - std::pow(b, km) / (1.0 - b);
  const SeriesValue ta = log_series_tail(a, kmax);
  const SeriesValue tb = log_series_tail(b, kmax);
  return {s + c * (geometric + ta.value - tb.value), true,
          c * (ta.tail_bound + tb.tail_bound)};
}

GeneralTauLaw::GeneralTauLaw(const SelectionProtocol& protocol,
                             const PriorityDistribution& dist, const OldTaskDensity& r1,
                             std::optional<QuadratureGrid> grid)
    : grid_(grid ? std::move(*grid) : QuadratureGrid::standard(dist.lo(), dist.hi())) {
  if (grid_.lo() != dist.lo() || grid_.hi() != dist.hi())
    throw ContractError("GeneralTauLaw: grid must span the arrival support");
  const std::size_t n = grid_.size();
  mass_weights_.resize(n);
  q_.resize(n);
  q1_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid_.node(i);
    mass_weights_[i] = grid_.weight(i) * dist.pdf(x);
    q_[i] = q(protocol, dist, x);
    q1_[i] = q1(protocol, r1, x);
  }
}

double GeneralTauLaw::pmf(std::uint64_t k) const {
  if (k == 0) throw DomainError("GeneralTauLaw::pmf: k must be >= 1");
  double s = 0.0;
  if (k == 1) {
    for (std::size_t i = 0; i < q_.size(); ++i) s += mass_weights_[i] * (1.0 - q1_[i]);
    return s;
  }
  const double e = static_cast<double>(k - 2);
  for (std::size_t i = 0; i < q_.size(); ++i)
    s += mass_weights_[i] * q1_[i] * (1.0 - q_[i]) * std::pow(q_[i], e);
  return s;
}

std::vector<double> GeneralTauLaw::table(std::uint64_t kmax) const {
  std::vector<double> out;
  out.reserve(kmax);
  for (std::uint64_t k = 1; k <= kmax; ++k) out.push_back(pmf(k));
  return out;
}

double GeneralTauLaw::tail_mass(std::uint64_t kmax) const {
  if (kmax == 0) return 1.0;
  // sum_{k > kmax} q1 (1 - q) q^(k-2) = q1 q^(kmax - 1)
  const double e = static_cast<double>(kmax - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < q_.size(); ++i)
    s += mass_weights_[i] * q1_[i] * std::pow(q_[i], e);
  return s;
}

SeriesValue GeneralTauLaw::mass(std::uint64_t kmax) const {
  double s = 0.0;
  for (std::uint64_t k = 1; k <= kmax; ++k) s += pmf(k);
  return {s + tail_mass(kmax), 0.0, kmax};
}

ExpectedTau GeneralTauLaw::expected() const {
  if (!(sup_q() < 1.0)) return {std::numeric_limits<double>::infinity(), false, 0.0};
  double s = 0.0;
  for (std::size_t i = 0; i < q_.size(); ++i) {
    const double qi = q_[i], q1i = q1_[i];
    s += mass_weights_[i] * ((1.0 - q1i) + q1i * (2.0 - qi) / (1.0 - qi));
  }
  return {s, true, 0.0};
}

double GeneralTauLaw::sup_q() const {
  double m = 0.0;
  for (double v : q_) m = std::max(m, v);
  return m;
}

double tau_pmf_general(const SelectionProtocol& protocol, const PriorityDistribution& dist,
                       const OldTaskDensity& r1, std::uint64_t k) {
  return GeneralTauLaw(protocol, dist, r1).pmf(k);
}

}  // namespace prioq
