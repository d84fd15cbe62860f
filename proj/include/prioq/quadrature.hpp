#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace prioq {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], increasing
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule, Newton iteration on P_n.
const GaussRule& gauss_legendre_rule(std::size_t n);

// Composite Gauss-Legendre nodes and weights on [lo, hi].
//
// The interval is cut into `panels` panels of `order` nodes each. With
// grading == 1 the panels have equal width; with grading > 1 each panel is
// `grading` times wider than its left neighbour, concentrating nodes near
// lo. Invariants: nodes strictly increasing inside (lo, hi), weights > 0,
// sum of weights == hi - lo to rounding.
class QuadratureGrid {
 public:
  static QuadratureGrid composite(double lo, double hi, std::size_t panels,
                                  std::size_t order, double grading = 1.0);
  // Default used throughout: 256 nodes as 16 panels x 16 nodes.
  static QuadratureGrid standard(double lo, double hi, std::size_t nodes = 256,
                                 double grading = 1.0);

  std::size_t size() const { return nodes_.size(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t panels() const { return edges_.size() - 1; }
  std::size_t order() const { return order_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> edges() const { return edges_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  // sum_i w_i f(x_i)
  double integrate(const std::function<double(double)>& f) const;
  // sum_i w_i values_i
  double integrate(std::span<const double> values) const;

  // Panel-wise barycentric Lagrange interpolation of nodal values. Exact
  // for piecewise polynomials of degree < order on the panel partition.
  double interpolate(std::span<const double> values, double x) const;

 private:
  double lo_ = 0.0, hi_ = 0.0;
  std::size_t order_ = 0;
  std::vector<double> edges_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> bary_;  // barycentric weights for one reference panel
};

// Adaptive 1-D integral of f over [a, b], with optional interior break
// points (discontinuities or kinks) that are integrated across separately.
// Relative tolerance ~1e-13.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, std::span<const double> breaks = {});

}  // namespace prioq
