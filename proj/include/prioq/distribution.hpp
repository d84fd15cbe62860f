#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "prioq/rng.hpp"

namespace prioq {

// Law R of arrival priorities: an absolutely continuous distribution on a
// bounded support [lo, hi] with a square-integrable density r.
class PriorityDistribution {
 public:
  // Uniform on [lo, hi]; Uniform(c, 1) is the shifted law used with the
  // proportional protocol.
  static PriorityDistribution uniform(double lo = 0.0, double hi = 1.0);

  // Piecewise-linear density through (x_i, pdf_i), x strictly increasing,
  // pdf >= 0. The table is rescaled to unit mass (exact for a piecewise
  // linear density).
  static PriorityDistribution tabulated(std::vector<double> x,
                                        std::vector<double> pdf);

  // Two-column CSV "x,pdf". Lines starting with '#' and a non-numeric
  // header row are skipped. Throws IoError if the file cannot be read.
  static PriorityDistribution from_csv(const std::filesystem::path& path);

  double lo() const;
  double hi() const;
  double cdf(double x) const;
  double pdf(double x) const;
  double quantile(double u) const;
  double sample(Rng& rng) const { return quantile(rng.uniform()); }

  // Interior points where the density has a kink; quadrature splits here.
  std::span<const double> breakpoints() const;

  bool is_uniform() const { return std::holds_alternative<Uniform>(law_); }
  std::string describe() const;

 private:
  struct Uniform {
    double lo, hi;
  };
  struct Tabulated {
    std::vector<double> x, pdf, cdf;
    std::vector<double> interior;
  };
  explicit PriorityDistribution(std::variant<Uniform, Tabulated> law)
      : law_(std::move(law)) {}

  std::variant<Uniform, Tabulated> law_;
};

}  // namespace prioq
