#include "prioq/operator_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "prioq/csv.hpp"
#include "prioq/error.hpp"
#include "prioq/selection.hpp"
#include "prioq/simd/kernels.hpp"

namespace prioq {
namespace {

template <class Fn>
void for_rows(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, n == 0 ? 1 : n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk, end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

// M_ij = K(i, j) * w_j for a row-major kernel.
std::vector<double> weight_columns(std::span<const double> kernel,
                                   std::span<const double> w) {
  const std::size_t n = w.size();
  std::vector<double> out(kernel.begin(), kernel.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] *= w[j];
  return out;
}

}  // namespace

KernelAssembly assemble(const SelectionProtocol& protocol, const PriorityDistribution& dist,
                        const QuadratureGrid& grid, std::optional<double> c1_split,
                        std::size_t threads) {
  if (protocol.discontinuity() == Discontinuity::diagonal)
    throw UnsupportedConfiguration(
        "assemble: protocols with a diagonal discontinuity are handled in closed form");
  if (grid.lo() != dist.lo() || grid.hi() != dist.hi())
    throw ContractError("assemble: grid must span the arrival support");

  KernelAssembly a{.grid = grid};
  const std::size_t n = grid.size();
  const auto x = grid.nodes();

  a.alpha.resize(n * n);
  a.k_tilde.resize(n * n);
  a.g.resize(n);
  a.f.resize(n);
  a.q.resize(n);

  std::vector<double> v(n * n);
  for_rows(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) v[i * n + j] = protocol(x[i], x[j]);
    a.q[i] = q(protocol, dist, x[i]);
  });
  a.grid_sup_v = *std::max_element(v.begin(), v.end());

  a.c1_split = c1_split.value_or(protocol.kind() == ProtocolKind::custom
                                     ? 1.0 - a.grid_sup_v
                                     : protocol.default_split());
  if (!(a.c1_split > 0.0 && a.c1_split < 1.0))
    throw DomainError("assemble: c1_split must lie in (0, 1)");

  for (std::size_t i = 0; i < n; ++i) {
    const double denom = 1.0 - a.q[i];
    if (!(denom > 0.0))
      throw ContractError("assemble: 1 - q(x) is not positive; protocol violates its bound");
    a.g[i] = dist.pdf(x[i]) / denom;
    a.f[i] = a.c1_split * a.g[i];
  }

  for_rows(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double al = 1.0 - v[i * n + j] - a.c1_split;
      a.alpha[i * n + j] = al;
      a.k_tilde[i * n + j] = al * a.g[j];
    }
  });
  a.alpha_changes_sign =
      std::any_of(a.alpha.begin(), a.alpha.end(), [](double al) { return al < 0.0; });
  return a;
}

double hs_norm(const KernelAssembly& a) {
  const std::size_t n = a.size();
  const auto w = a.grid.weights();
  std::span<const double> kt(a.k_tilde);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = kt.subspan(i * n, n);
    s += w[i] * simd::dot3(row, row, w);
  }
  return std::sqrt(s);
}

double fixed_point_residual(const KernelAssembly& a, std::span<const double> r1) {
  const std::size_t n = a.size();
  if (r1.size() != n) throw ContractError("fixed_point_residual: size mismatch");
  const auto w = a.grid.weights();
  std::span<const double> alpha(a.alpha);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double integral = a.g[i] * simd::dot3(alpha.subspan(i * n, n), w, r1);
    worst = std::max(worst, std::fabs(r1[i] - integral - a.f[i]));
  }
  return worst;
}

NeumannSolution solve(const KernelAssembly& a, const SolveOptions& options) {
  const double hs = hs_norm(a);
  if (!(hs < 1.0)) {
    std::ostringstream msg;
    msg << "Neumann series not certified: Hilbert-Schmidt norm " << format_number(hs)
        << " >= 1";
    throw DivergenceError(msg.str(), hs);
  }
  const std::size_t n = a.size();
  const auto w = a.grid.weights();
  const std::vector<double> op = weight_columns(a.k_tilde, w);

  std::vector<double> h(n, 1.0), next(n), sum(n, 1.0), gh(n);
  NeumannSolution sol{.grid = a.grid};
  sol.hs_norm = hs;
  std::size_t terms = 0;
  while (terms < options.max_terms) {
    simd::matvec(op, n, n, h, next);
    h.swap(next);
    ++terms;
    simd::axpy(1.0, h, sum);
    for (std::size_t i = 0; i < n; ++i) gh[i] = a.g[i] * h[i];
    if (a.c1_split * simd::weighted_abs_sum(w, gh) < options.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.n_terms = terms;

  sol.r1_raw.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.r1_raw[i] = a.c1_split * a.g[i] * sum[i];
  sol.raw_mass = a.grid.integrate(sol.r1_raw);
  sol.residual = fixed_point_residual(a, sol.r1_raw);

  const double f_norm = std::sqrt(simd::dot3(w, a.f, a.f));
  sol.tail_bound = f_norm * std::pow(hs, static_cast<double>(terms + 1)) / (1.0 - hs);

  sol.r1 = sol.r1_raw;
  if (options.normalize) {
    for (double& v : sol.r1) v /= sol.raw_mass;
    sol.normalized = true;
  }
  return sol;
}

OldTaskDensity NeumannSolution::density(double mass_tolerance) const {
  std::vector<double> values = r1;
  for (double& v : values) v = std::max(v, 0.0);
  return OldTaskDensity::from_grid(grid, std::move(values), mass_tolerance);
}

std::vector<double> solve_direct(const KernelAssembly& a) {
  const std::size_t n = a.size();
  const auto w = a.grid.weights();
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd system(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n; ++j)
      system(ii, static_cast<Eigen::Index>(j)) =
          (i == j ? 1.0 : 0.0) - a.alpha[i * n + j] * a.g[i] * w[j];
    rhs(ii) = a.f[i];
  }
  const Eigen::VectorXd sol = system.partialPivLu().solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

std::vector<RegionPoint> scan_region(std::span<const double> c_values,
                                     std::span<const double> p_values, std::size_t nodes) {
  std::vector<RegionPoint> out;
  out.reserve(c_values.size() * p_values.size());
  for (double c : c_values) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("scan_region: c must lie in (0, 1)");
    const auto dist = PriorityDistribution::uniform(c, 1.0);
    const auto grid = QuadratureGrid::standard(c, 1.0, nodes);
    for (double p : p_values) {
      if (!(p >= 0.0 && p < 1.0)) throw DomainError("scan_region: p must lie in [0, 1)");
      const auto protocol = SelectionProtocol::proportional(p, c, 1.0);
      const double hs = hs_norm(assemble(protocol, dist, grid, 0.5 * (1.0 - p)));
      out.push_back({p, c, hs, hs < 1.0});
    }
  }
  return out;
}

double proportional_q(double p, double c, double x) {
  return 0.5 * (1.0 + p) - p * x / (1.0 - c) * std::log((1.0 + x) / (c + x));
}

double proportional_q_prime(double p, double c, double x) {
  return -p / (1.0 - c) *
         (std::log((1.0 + x) / (c + x)) + x * (1.0 / (1.0 + x) - 1.0 / (c + x)));
}

ProportionalBounds::ProportionalBounds(double p, double c, const OldTaskDensity& r1)
    : p_(p), c_(c) {
  if (!(p > 0.0 && p < 1.0 && c > 0.0 && c < 1.0))
    throw DomainError("tau bounds: need 0 < p < 1 and 0 < c < 1");
  q_c_ = proportional_q(p, c, c);
  q_1_ = proportional_q(p, c, 1.0);
  const auto protocol = SelectionProtocol::proportional(p, c, 1.0);
  const double q1_at_1 = q1(protocol, r1, 1.0);
  m_ = -q1_at_1 * (1.0 - q_c_) / ((1.0 - c) * proportional_q_prime(p, c, c));
  M_ = -1.0 / ((1.0 - c) * proportional_q_prime(p, c, 1.0));
  k0_ = -1.0 / std::log(q_c_);
}

TauBounds ProportionalBounds::at(std::uint64_t k) const {
  if (k < 2) throw UnsupportedConfiguration("tau bounds hold for k > 1 only");
  const double e = static_cast<double>(k - 1);
  const double b = (std::pow(q_c_, e) - std::pow(q_1_, e)) / e;
  return {m_ * b, M_ * b, k0_};
}

ProportionalStationary proportional_stationary(double p, double c, const QuadratureGrid& grid,
                                               const SolveOptions& options) {
  const auto dist = PriorityDistribution::uniform(c, 1.0);
  const auto protocol = SelectionProtocol::proportional(p, c, 1.0);
  ProportionalStationary out{.assembly = assemble(protocol, dist, grid),
                             .r1 = {},
                             .hs_norm = 0.0,
                             .used_series = false,
                             .series = std::nullopt};
  out.hs_norm = hs_norm(out.assembly);
  if (out.hs_norm < 1.0) {
    out.series = solve(out.assembly, options);
    out.r1 = out.series->r1_raw;
    out.used_series = true;
  } else {
    out.r1 = solve_direct(out.assembly);
  }
  return out;
}

TauBounds tau_bounds(double p, double c, std::uint64_t k) {
  const auto grid = QuadratureGrid::standard(c, 1.0);
  const auto st = proportional_stationary(p, c, grid);
  std::vector<double> values = st.r1;
  const double mass = grid.integrate(values);
  for (double& v : values) v = std::max(v, 0.0) / mass;
  return ProportionalBounds(p, c, OldTaskDensity::from_grid(grid, std::move(values))).at(k);
}

}  // namespace prioq
