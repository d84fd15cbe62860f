#include "prioq/selection.hpp"

#include <vector>

#include "prioq/error.hpp"

namespace prioq {

double q(const SelectionProtocol& protocol, const PriorityDistribution& dist,
         double s) {
  if (!(s >= dist.lo() && s <= dist.hi()))
    throw DomainError("q: s outside the support of the arrival law");
  std::vector<double> breaks(dist.breakpoints().begin(), dist.breakpoints().end());
  if (protocol.discontinuity() == Discontinuity::diagonal) breaks.push_back(s);
  return integrate_adaptive(
      [&](double y) { return protocol(y, s) * dist.pdf(y); }, dist.lo(), dist.hi(),
      breaks);
}

double q1(const SelectionProtocol& protocol, const OldTaskDensity& old_density,
          double s) {
  std::vector<double> breaks(old_density.breakpoints().begin(),
                             old_density.breakpoints().end());
  if (protocol.discontinuity() == Discontinuity::diagonal) breaks.push_back(s);
  return integrate_adaptive(
      [&](double y) { return (1.0 - protocol(s, y)) * old_density(y); },
      old_density.lo(), old_density.hi(), breaks);
}

}  // namespace prioq
