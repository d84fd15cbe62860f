#include "prioq/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "prioq/csv.hpp"
#include "prioq/error.hpp"

namespace prioq {
namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("protocol: p must lie in [0,1]");
}

constexpr int kAuditPoints = 64;
constexpr double kAuditSlack = 1e-12;

}  // namespace

SelectionProtocol SelectionProtocol::barabasi(double p) {
  check_p(p);
  SelectionProtocol s;
  s.kind_ = ProtocolKind::barabasi;
  s.name_ = "barabasi";
  s.p_ = p;
  const double coin = 0.5 * (1.0 - p);
  s.v_ = [p, coin](double x, double y) { return (x > y ? p : 0.0) + coin; };
  s.sup_bound_ = 0.5 * (1.0 + p);
  s.default_split_ = coin;
  s.discontinuity_ = p > 0.0 ? Discontinuity::diagonal : Discontinuity::none;
  return s;
}

SelectionProtocol SelectionProtocol::highest_first() { return barabasi(1.0); }

SelectionProtocol SelectionProtocol::proportional(double p, double lo, double hi) {
  check_p(p);
  if (!(lo >= 0.0 && hi > lo)) throw DomainError("proportional: need 0 <= lo < hi");
  SelectionProtocol s;
  s.kind_ = ProtocolKind::proportional;
  s.name_ = "proportional";
  s.p_ = p;
  const double coin = 0.5 * (1.0 - p);
  s.v_ = [p, coin](double x, double y) {
    const double sum = x + y;
    return (sum > 0.0 ? p * x / sum : 0.5 * p) + coin;
  };
  s.sup_bound_ = p * hi / (hi + lo) + coin;
  s.default_split_ = coin;
  return s;
}

SelectionProtocol SelectionProtocol::custom(std::string name,
                                            std::function<double(double, double)> v,
                                            double sup_bound,
                                            Discontinuity discontinuity, double lo,
                                            double hi) {
  if (!v) throw ContractError("custom protocol: v is empty");
  if (!(hi > lo)) throw DomainError("custom protocol: need lo < hi");
  if (!(sup_bound >= 0.0 && sup_bound <= 1.0))
    throw ContractError("custom protocol: sup_bound must lie in [0,1]");

  std::vector<double> pts(kAuditPoints);
  for (int i = 0; i < kAuditPoints; ++i)
    pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (kAuditPoints - 1);

  double grid_sup = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double val = v(pts[i], pts[j]);
      if (!(val >= -kAuditSlack && val <= 1.0 + kAuditSlack))
        throw ContractError("custom protocol: v outside [0,1]");
      if (val > sup_bound + kAuditSlack)
        throw ContractError("custom protocol: v exceeds the declared sup_bound");
      grid_sup = std::max(grid_sup, val);
      if (i > 0 && val < v(pts[i - 1], pts[j]) - kAuditSlack)
        throw ContractError("custom protocol: v(., y) is not nondecreasing");
      if (j > 0 && val > v(pts[i], pts[j - 1]) + kAuditSlack)
        throw ContractError("custom protocol: v(x, .) is not nonincreasing");
    }
  }

  SelectionProtocol s;
  s.kind_ = ProtocolKind::custom;
  s.name_ = std::move(name);
  s.v_ = std::move(v);
  s.p_ = std::nan("");
  s.sup_bound_ = sup_bound;
  s.default_split_ = 1.0 - grid_sup;
  s.discontinuity_ = discontinuity;
  return s;
}

std::string SelectionProtocol::describe() const {
  if (kind_ == ProtocolKind::custom) return name_;
  return name_ + "(" + format_number(p_) + ")";
}

}  // namespace prioq
