#include "prioq/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "prioq/simd/kernels.hpp"

namespace prioq {
namespace {

GaussRule compute_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // One more derivative evaluation at the converged root.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre_rule(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

QuadratureGrid QuadratureGrid::composite(double lo, double hi,
                                         std::size_t panels, std::size_t order,
                                         double grading) {
  if (!(hi > lo)) throw std::invalid_argument("QuadratureGrid: need lo < hi");
  if (panels == 0 || order == 0)
    throw std::invalid_argument("QuadratureGrid: panels and order must be > 0");
  if (!(grading >= 1.0))
    throw std::invalid_argument("QuadratureGrid: grading must be >= 1");

  QuadratureGrid g;
  g.lo_ = lo;
  g.hi_ = hi;
  g.order_ = order;

  std::vector<double> widths(panels);
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    widths[k] = std::pow(grading, static_cast<double>(k));
    total += widths[k];
  }
  g.edges_.resize(panels + 1);
  g.edges_[0] = lo;
  double acc = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    acc += widths[k];
    g.edges_[k + 1] = lo + (hi - lo) * (acc / total);
  }
  g.edges_[panels] = hi;

  const GaussRule& rule = gauss_legendre_rule(order);
  g.nodes_.reserve(panels * order);
  g.weights_.reserve(panels * order);
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = g.edges_[k], b = g.edges_[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < order; ++j) {
      g.nodes_.push_back(mid + half * rule.nodes[j]);
      g.weights_.push_back(half * rule.weights[j]);
    }
  }

  g.bary_.resize(order);
  for (std::size_t j = 0; j < order; ++j) {
    const double t = rule.nodes[j];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    g.bary_[j] = sign * std::sqrt((1.0 - t * t) * rule.weights[j]);
  }
  return g;
}

QuadratureGrid QuadratureGrid::standard(double lo, double hi, std::size_t nodes,
                                        double grading) {
  constexpr std::size_t order = 16;
  if (nodes < order || nodes % order != 0)
    throw std::invalid_argument("QuadratureGrid::standard: nodes must be a multiple of 16");
  return composite(lo, hi, nodes / order, order, grading);
}

double QuadratureGrid::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
  return s;
}

double QuadratureGrid::integrate(std::span<const double> values) const {
  return simd::dot(weights_, values);
}

double QuadratureGrid::interpolate(std::span<const double> values,
                                   double x) const {
  if (values.size() != nodes_.size())
    throw std::invalid_argument("interpolate: value count does not match grid");
  if (x < lo_ || x > hi_) throw std::domain_error("interpolate: x outside grid");
  // Panel containing x.
  std::size_t k = 0;
  while (k + 1 < panels() && x > edges_[k + 1]) ++k;
  const std::size_t base = k * order_;
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < order_; ++j) {
    const double diff = x - nodes_[base + j];
    if (diff == 0.0) return values[base + j];
    const double t = bary_[j] / diff;
    num += t * values[base + j];
    den += t;
  }
  return num / den;
}

namespace {

struct KronrodEstimate {
  double value, error, l1;
};

// 15-point Gauss embedded in 31-point Kronrod; tables from Boost.
KronrodEstimate kronrod_31(const std::function<double(double)>& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using gauss = boost::math::quadrature::gauss<double, 15>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double f0 = f(mid);
  double k = f0 * wk[0], g = f0 * wg[0], l1 = std::fabs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (std::fabs(fp) + std::fabs(fm)) * wk[i];
    if (i % 2 == 0) g += (fp + fm) * wg[i / 2];
  }
  return {half * k, half * std::fabs(k - g), half * l1};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             const KronrodEstimate& est, double abs_tol, double total_width, int depth) {
  constexpr double rel_tol = 1e-13;
  constexpr double floor_factor = 50.0 * std::numeric_limits<double>::epsilon();
  const double share = abs_tol * (b - a) / total_width;
  if (depth == 0 || est.error <= share || est.error <= rel_tol * std::fabs(est.value) ||
      est.error <= floor_factor * est.l1)
    return est.value;
  const double m = 0.5 * (a + b);
  if (!(m > a && m < b)) return est.value;
  const auto left = kronrod_31(f, a, m);
  const auto right = kronrod_31(f, m, b);
  return adapt(f, a, m, left, abs_tol, total_width, depth - 1) +
         adapt(f, m, b, right, abs_tol, total_width, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, std::span<const double> breaks) {
  constexpr int max_depth = 40;
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: need a <= b");
  if (b == a) return 0.0;
  std::vector<double> cuts{a};
  std::vector<double> sorted(breaks.begin(), breaks.end());
  std::sort(sorted.begin(), sorted.end());
  for (double c : sorted)
    if (c > cuts.back() && c < b) cuts.push_back(c);
  cuts.push_back(b);

  std::vector<KronrodEstimate> first(cuts.size() - 1);
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    first[i] = kronrod_31(f, cuts[i], cuts[i + 1]);
    l1 += first[i].l1;
  }
  const double abs_tol = 1e-13 * l1;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adapt(f, cuts[i], cuts[i + 1], first[i], abs_tol, b - a, max_depth);
  return total;
}

}  // namespace prioq
