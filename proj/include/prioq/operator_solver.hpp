#pragma once
// Stationary density of the old task's priority for a general selection
// protocol (L = 2), as the solution of the second-kind integral equation
//
//   r1(x) = integral K(x, y) r1(y) dy + f(x),
//   K(x, y) = alpha(x, y) g(x),  alpha = 1 - v(x, y) - c1,
//   g(x) = r(x) / (1 - q(x)),    f = c1 g,
//
// summed as the Neumann series r1 = c1 g (1 + H_1 + H_2 + ...) with
// H_n = Ã^n 1 and Ã the operator with kernel alpha(x, y) g(y). Convergence
// is certified by the Hilbert-Schmidt norm of that kernel being < 1.
//
// All integrals are discretised on one composite Gauss-Legendre grid
// (Nystrom method). Iterated kernels are never formed: each H_n is one
// matrix-vector product.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prioq/density.hpp"
#include "prioq/distribution.hpp"
#include "prioq/protocol.hpp"
#include "prioq/quadrature.hpp"

namespace prioq {

struct KernelAssembly {
  QuadratureGrid grid;
  double c1_split = 0.0;
  std::vector<double> alpha{};    // n x n, alpha(x_i, y_j), row-major
  std::vector<double> g{};        // g(x_i)
  std::vector<double> f{};        // c1_split * g(x_i)
  std::vector<double> k_tilde{};  // n x n, alpha(x_i, y_j) g(y_j)
  std::vector<double> q{};        // q(x_i); g's denominator is 1 - q
  bool alpha_changes_sign = false;
  double grid_sup_v = 0.0;

  std::size_t size() const { return grid.size(); }
};

// Throws UnsupportedConfiguration for protocols with a diagonal
// discontinuity, DomainError for c1_split outside (0, 1), and
// ContractError if some 1 - q(x_i) <= 0. Rows are independent, so any
// `threads` value gives bitwise identical results.
KernelAssembly assemble(const SelectionProtocol& protocol,
                        const PriorityDistribution& dist, const QuadratureGrid& grid,
                        std::optional<double> c1_split = std::nullopt,
                        std::size_t threads = 1);

// sqrt(double integral of Ã-kernel squared), tensor-product quadrature.
double hs_norm(const KernelAssembly& assembly);

struct SolveOptions {
  double tol = 1e-10;
  std::size_t max_terms = 200;
  bool normalize = false;
};

struct NeumannSolution {
  QuadratureGrid grid;
  std::vector<double> r1{};      // raw series, or unit-mass if normalized
  std::vector<double> r1_raw{};  // always the raw series
  std::size_t n_terms = 0;     // applications of Ã performed
  double hs_norm = 0.0;
  double tail_bound = 0.0;     // ||c1 g||_2 hs^(n+1) / (1 - hs)
  double residual = 0.0;       // sup |r1_raw - (A r1_raw + f)| on the grid
  double raw_mass = 0.0;
  bool converged = false;      // false: max_terms reached before tol
  bool normalized = false;

  OldTaskDensity density(double mass_tolerance = OldTaskDensity::kDefaultMassTolerance) const;
};

// Throws DivergenceError (certificate = hs norm) when hs_norm >= 1.
NeumannSolution solve(const KernelAssembly& assembly, const SolveOptions& options = {});

// Cross-check route: dense LU solve of (I - A) r1 = f on the same grid.
std::vector<double> solve_direct(const KernelAssembly& assembly);

// sup_i |r1_i - sum_j w_j K(x_i, y_j) r1_j - f_i|
double fixed_point_residual(const KernelAssembly& assembly, std::span<const double> r1);

// --- Proportional protocol on Uniform(c, 1) -----------------------------

struct RegionPoint {
  double p, c, hs_norm;
  bool converges;
};

// hs_norm with c1_split = (1 - p) / 2 for every (p, c); converges = hs < 1.
std::vector<RegionPoint> scan_region(std::span<const double> c_values,
                                     std::span<const double> p_values,
                                     std::size_t nodes = 256);

// Closed forms for v = p x / (x + y) + (1 - p) / 2 with R = Uniform(c, 1):
//   q(x)  = (1 + p) / 2 - p x / (1 - c) ln((1 + x) / (c + x))
double proportional_q(double p, double c, double x);
double proportional_q_prime(double p, double c, double x);

struct TauBounds {
  double lower, upper, k0;
};

// Bounds m B_k <= P(tau = k) <= M B_k for k > 1 with
//   B_k = (q(c)^(k-1) - q(1)^(k-1)) / (k - 1),
//   m = q1(1) (1 - q(c)) / ((1 - c) |q'(c)|),  M = 1 / ((1 - c) |q'(1)|),
// and the cutoff k0 = -1 / ln q(c). |q'| is largest at x = c, which is what
// makes m a lower bound (see README, "Known errata").
class ProportionalBounds {
 public:
  ProportionalBounds(double p, double c, const OldTaskDensity& r1);

  // Throws UnsupportedConfiguration for k = 1.
  TauBounds at(std::uint64_t k) const;
  double m() const { return m_; }
  double M() const { return M_; }
  double k0() const { return k0_; }
  double q_at_c() const { return q_c_; }
  double q_at_1() const { return q_1_; }

 private:
  double p_, c_;
  double q_c_, q_1_, m_, M_, k0_;
};

// Stationary density for Proportional(p) on Uniform(c, 1): Neumann series
// when the HS norm certifies it, otherwise the direct solve (reported via
// `used_series`).
struct ProportionalStationary {
  KernelAssembly assembly;
  std::vector<double> r1;  // raw values on the grid
  double hs_norm;
  bool used_series;
  std::optional<NeumannSolution> series;
};
ProportionalStationary proportional_stationary(double p, double c,
                                               const QuadratureGrid& grid,
                                               const SolveOptions& options = {});

// Convenience: tau_bounds(p, c, k) with r1 from proportional_stationary on
// the standard 256-node grid.
TauBounds tau_bounds(double p, double c, std::uint64_t k);

}  // namespace prioq
