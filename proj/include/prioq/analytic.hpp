#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prioq/density.hpp"
#include "prioq/distribution.hpp"
#include "prioq/protocol.hpp"
#include "prioq/quadrature.hpp"

namespace prioq {

// A truncated infinite sum: value includes a tail estimate, tail_bound
// bounds the error of that estimate.
struct SeriesValue {
  double value;
  double tail_bound;
  std::uint64_t terms;
};

struct ExpectedTau {
  double value;  // +inf when finite == false
  bool finite;
  double tail_bound;
};

enum class TauRegime {
  geometric,     // p = 0: uniform selection, tau ~ Geometric(1/2)
  mixed,         // 0 < p < 1: closed form with 1/(k-1) decay and cutoff
  record_limit,  // p = 1: no stationary law, record process
};
TauRegime barabasi_regime(double p);

// --- Barabasi protocol, L = 2 -------------------------------------------

// Stationary CDF of the old task's priority:
//   1 - E[(1 - R(x))^X] = (1 + p) R(x) / (1 - p + 2 p R(x)),
//   X ~ Geometric((1 - p) / (1 + p)).
// Throws DegenerateError for p = 1 and DomainError outside the support.
double barabasi_stationary_cdf(double p, const PriorityDistribution& dist, double x);
double barabasi_stationary_density(double p, const PriorityDistribution& dist, double x);
OldTaskDensity barabasi_stationary_old_density(double p, const PriorityDistribution& dist);

// P(tau = k) in closed form for 0 < p < 1. p = 0 gives 2^-k exactly; p = 1
// gives the pointwise limit (1 at k = 1, 0 otherwise), see barabasi_regime().
double barabasi_tau_pmf(double p, std::uint64_t k);

// sum_{k >= 1} P(tau = k): explicit terms up to kmax plus the tail
// C * sum_{m >= kmax} (a^m - b^m) / m summed to a certified remainder.
SeriesValue barabasi_tau_mass(double p, std::uint64_t kmax = 200);

// E(tau) with the geometric part of the tail in closed form. Infinite-mean
// flag at p = 1.
ExpectedTau barabasi_expected_tau(double p, std::uint64_t kmax = 200);

// --- General protocol, L = 2 --------------------------------------------

// Waiting-time law of a new task for an arbitrary protocol, given the old
// task's stationary density r1:
//   P(tau = 1) = integral (1 - q1(x)) dR(x)
//   P(tau = k) = integral q1(x) (1 - q(x)) q(x)^(k-2) dR(x),  k > 1.
// q and q1 are tabulated once on the outer quadrature grid.
class GeneralTauLaw {
 public:
  // The outer integral over the arrival law uses `grid` if given, else the
  // standard 256-node grid on the support of `dist`.
  GeneralTauLaw(const SelectionProtocol& protocol, const PriorityDistribution& dist,
                const OldTaskDensity& r1,
                std::optional<QuadratureGrid> grid = std::nullopt);

  double pmf(std::uint64_t k) const;
  std::vector<double> table(std::uint64_t kmax) const;  // entries k = 1..kmax
  // P(tau > kmax), exact through the geometric sum in q.
  double tail_mass(std::uint64_t kmax) const;
  // sum_{k <= kmax} pmf + tail_mass(kmax)
  SeriesValue mass(std::uint64_t kmax) const;
  // E(tau) = integral [(1 - q1) + q1 (2 - q) / (1 - q)] dR.
  ExpectedTau expected() const;
  double sup_q() const;

  const QuadratureGrid& grid() const { return grid_; }
  std::span<const double> q_values() const { return q_; }
  std::span<const double> q1_values() const { return q1_; }

 private:
  QuadratureGrid grid_;
  std::vector<double> mass_weights_;  // w_i r(x_i)
  std::vector<double> q_, q1_;
};

double tau_pmf_general(const SelectionProtocol& protocol,
                       const PriorityDistribution& dist, const OldTaskDensity& r1,
                       std::uint64_t k);

}  // namespace prioq
