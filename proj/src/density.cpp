#include "prioq/density.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "prioq/error.hpp"

namespace prioq {

OldTaskDensity OldTaskDensity::from_function(double lo, double hi,
                                             std::function<double(double)> pdf,
                                             std::vector<double> breakpoints,
                                             double mass_tolerance) {
  if (!(hi > lo)) throw ContractError("density: need lo < hi");
  if (!pdf) throw ContractError("density: empty function");
  OldTaskDensity d;
  d.lo_ = lo;
  d.hi_ = hi;
  d.pdf_ = std::move(pdf);
  d.breaks_ = std::move(breakpoints);
  std::sort(d.breaks_.begin(), d.breaks_.end());
  d.mass_ = integrate_adaptive(d.pdf_, lo, hi, d.breaks_);
  d.validate(mass_tolerance);
  return d;
}

OldTaskDensity OldTaskDensity::from_grid(const QuadratureGrid& grid,
                                         std::vector<double> values,
                                         double mass_tolerance) {
  if (values.size() != grid.size())
    throw ContractError("density: value count does not match grid");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ContractError("density: negative or non-finite nodal value");
  OldTaskDensity d;
  d.lo_ = grid.lo();
  d.hi_ = grid.hi();
  d.mass_ = grid.integrate(values);
  auto shared = std::make_shared<std::pair<QuadratureGrid, std::vector<double>>>(
      grid, std::move(values));
  d.pdf_ = [shared](double y) {
    return std::max(0.0, shared->first.interpolate(shared->second, y));
  };
  auto edges = grid.edges();
  d.breaks_.assign(edges.begin() + 1, edges.end() - 1);
  d.validate(mass_tolerance);
  return d;
}

std::function<double(double)> OldTaskDensity::cumulative(std::size_t points) const {
  if (points < 2) throw ContractError("density: cumulative needs >= 2 points");
  const std::size_t cells = points - 1;
  const double h = (hi_ - lo_) / static_cast<double>(cells);
  auto table = std::make_shared<std::vector<double>>(points, 0.0);
  auto it = breaks_.begin();
  std::vector<double> local;
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = lo_ + h * static_cast<double>(i);
    const double b = i + 1 == cells ? hi_ : a + h;
    local.clear();
    while (it != breaks_.end() && *it <= a) ++it;
    for (auto jt = it; jt != breaks_.end() && *jt < b; ++jt) local.push_back(*jt);
    (*table)[i + 1] = (*table)[i] + integrate_adaptive(pdf_, a, b, local);
  }
  const double total = table->back();
  for (double& v : *table) v /= total;
  const double lo = lo_, hi = hi_;
  return [table, lo, hi, h, cells](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double s = (x - lo) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(s), cells - 1);
    const double t = s - static_cast<double>(i);
    return (*table)[i] + t * ((*table)[i + 1] - (*table)[i]);
  };
}

void OldTaskDensity::validate(double mass_tolerance) {
  constexpr int samples = 257;
  for (int i = 0; i < samples; ++i) {
    const double y = lo_ + (hi_ - lo_) * i / (samples - 1);
    const double v = pdf_(y);
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ContractError("density: negative or non-finite value at y=" +
                          std::to_string(y));
  }
  if (!(std::fabs(mass_ - 1.0) <= mass_tolerance))
    throw ContractError("density: mass " + std::to_string(mass_) +
                        " is not 1 within tolerance");
}

}  // namespace prioq
