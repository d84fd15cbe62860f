#pragma once

#include "prioq/density.hpp"
#include "prioq/distribution.hpp"
#include "prioq/protocol.hpp"

namespace prioq {

// q(s) = P(new task executed | old task has priority s)
//      = integral of v(y, s) dR(y).
// Throws DomainError if s is outside the support of `dist`.
double q(const SelectionProtocol& protocol, const PriorityDistribution& dist,
         double s);

// q1(s) = P(old task executed | new task has priority s)
//       = integral of (1 - v(s, y)) r1(y) dy.
// Always >= 1 - protocol.sup_bound().
double q1(const SelectionProtocol& protocol, const OldTaskDensity& old_density,
          double s);

}  // namespace prioq
