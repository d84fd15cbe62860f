#pragma once
// Reference computations that share no code with the library: plain
// composite Simpson sums and direct series evaluation.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// sum_k (1 - (1 - R)^k) theta (1 - theta)^(k - 1), theta = (1 - p) / (1 + p)
inline double stationary_cdf_series(double p, double R, int terms = 10000) {
  const double theta = (1.0 - p) / (1.0 + p);
  double s = 0.0, geo = theta, surv = 1.0 - R;
  double pow_surv = surv;
  for (int k = 1; k <= terms; ++k) {
    s += (1.0 - pow_surv) * geo;
    geo *= 1.0 - theta;
    pow_surv *= surv;
  }
  return s;
}

// Waiting-time pmf of the Barabasi protocol with Uniform(0, 1) arrivals,
// built from its ingredients and integrated by Simpson:
//   q(x) = p (1 - x) + (1 - p) / 2,  q1(x) = (1 + p) / 2 - p F1(x),
//   F1 the stationary old-task CDF.
inline double barabasi_pmf(double p, std::uint64_t k) {
  auto F1 = [p](double x) { return (1 + p) * x / (1 - p + 2 * p * x); };
  auto q = [p](double x) { return p * (1 - x) + (1 - p) / 2; };
  auto q1 = [&](double x) { return (1 + p) / 2 - p * F1(x); };
  if (k == 1) return simpson([&](double x) { return 1 - q1(x); }, 0, 1);
  return simpson(
      [&](double x) { return q1(x) * (1 - q(x)) * std::pow(q(x), double(k - 2)); }, 0, 1);
}

// q(x) for v = p x / (x + y) + (1 - p) / 2 with Uniform(c, 1) arrivals.
inline double proportional_q(double p, double c, double x) {
  return (1 + p) / 2 - p * x / (1 - c) * std::log((1 + x) / (c + x));
}

// Hilbert-Schmidt norm of alpha(x, y) g(y), alpha = p y / (x + y), on a
// tensor Simpson grid.
inline double proportional_hs_norm(double p, double c, int n = 600) {
  const double r = 1.0 / (1.0 - c);
  auto g = [&](double y) { return r / (1.0 - proportional_q(p, c, y)); };
  return std::sqrt(simpson(
      [&](double x) {
        return simpson(
            [&](double y) {
              const double k = p * y / (x + y) * g(y);
              return k * k;
            },
            c, 1.0, n);
      },
      c, 1.0, n));
}

}  // namespace oracle
