#pragma once

#include <functional>
#include <span>
#include <vector>

#include "prioq/quadrature.hpp"

namespace prioq {

// A probability density on [lo, hi] for the old task's priority, validated
// on construction: nonnegative and unit mass within `mass_tolerance`.
// Throws ContractError otherwise.
class OldTaskDensity {
 public:
  static constexpr double kDefaultMassTolerance = 1e-6;

  static OldTaskDensity from_function(double lo, double hi,
                                      std::function<double(double)> pdf,
                                      std::vector<double> breakpoints = {},
                                      double mass_tolerance = kDefaultMassTolerance);

  // Nodal values on a composite Gauss-Legendre grid, evaluated between
  // nodes by panel-wise Lagrange interpolation.
  static OldTaskDensity from_grid(const QuadratureGrid& grid,
                                  std::vector<double> values,
                                  double mass_tolerance = kDefaultMassTolerance);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double operator()(double y) const { return pdf_(y); }
  std::span<const double> breakpoints() const { return breaks_; }
  double mass() const { return mass_; }

  // CDF tabulated at `points` equally spaced abscissae (adaptive integration
  // between neighbours, linear in between), scaled so that F(hi) = 1.
  std::function<double(double)> cumulative(std::size_t points = 4097) const;

 private:
  OldTaskDensity() = default;
  void validate(double mass_tolerance);

  double lo_ = 0.0, hi_ = 1.0;
  std::function<double(double)> pdf_;
  std::vector<double> breaks_;
  double mass_ = 0.0;
};

}  // namespace prioq
