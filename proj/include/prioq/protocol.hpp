#pragma once

#include <functional>
#include <memory>
#include <string>

namespace prioq {

enum class ProtocolKind { barabasi, proportional, custom };
enum class Discontinuity { none, diagonal };

// v(x, y): probability that the new task (priority x) is executed when the
// old task has priority y. v is nondecreasing in x, nonincreasing in y and
// bounded by sup_bound(), which is < 1 whenever the protocol keeps some
// randomness (p < 1).
class SelectionProtocol {
 public:
  // p * 1{x > y} + (1 - p) / 2
  static SelectionProtocol barabasi(double p);
  // Barabasi(1). Only meaningful for the record process.
  static SelectionProtocol highest_first();
  // p * x / (x + y) + (1 - p) / 2 for priorities in [lo, hi].
  static SelectionProtocol proportional(double p, double lo = 0.0, double hi = 1.0);
  // User protocol. Monotonicity and the claimed bound are audited on a
  // 64 x 64 grid over [lo, hi]^2; throws ContractError on violation.
  static SelectionProtocol custom(std::string name,
                                  std::function<double(double, double)> v,
                                  double sup_bound, Discontinuity discontinuity,
                                  double lo, double hi);

  double operator()(double x_new, double y_old) const { return v_(x_new, y_old); }

  ProtocolKind kind() const { return kind_; }
  double p() const { return p_; }
  double sup_bound() const { return sup_bound_; }
  Discontinuity discontinuity() const { return discontinuity_; }
  // Splitting constant c1 for the operator equation: (1 - p) / 2 for the
  // built-in mixed protocols, 1 - (grid sup of v) for custom ones.
  double default_split() const { return default_split_; }
  const std::string& name() const { return name_; }
  std::string describe() const;

 private:
  SelectionProtocol() = default;

  ProtocolKind kind_ = ProtocolKind::custom;
  std::string name_;
  std::function<double(double, double)> v_;
  double p_ = 0.0;
  double sup_bound_ = 1.0;
  double default_split_ = 0.0;
  Discontinuity discontinuity_ = Discontinuity::none;
};

}  // namespace prioq
