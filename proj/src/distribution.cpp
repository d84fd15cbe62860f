#include "prioq/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prioq/csv.hpp"
#include "prioq/error.hpp"

namespace prioq {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

PriorityDistribution PriorityDistribution::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw DomainError("uniform: need finite lo < hi");
  if (lo < 0.0) throw DomainError("uniform: priorities must be non-negative");
  return PriorityDistribution(Uniform{lo, hi});
}

PriorityDistribution PriorityDistribution::tabulated(std::vector<double> x,
                                                     std::vector<double> pdf) {
  if (x.size() != pdf.size() || x.size() < 2)
    throw ContractError("tabulated: need at least two (x, pdf) rows");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(pdf[i]))
      throw ContractError("tabulated: non-finite entry");
    if (pdf[i] < 0.0) throw ContractError("tabulated: negative density");
    if (i > 0 && !(x[i] > x[i - 1]))
      throw ContractError("tabulated: x must be strictly increasing");
  }
  if (x.front() < 0.0) throw DomainError("tabulated: priorities must be non-negative");

  std::vector<double> cdf(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (x[i] - x[i - 1]);
  const double mass = cdf.back();
  if (!(mass > 0.0)) throw ContractError("tabulated: density has zero mass");
  for (auto& v : pdf) v /= mass;
  for (auto& v : cdf) v /= mass;
  cdf.back() = 1.0;

  std::vector<double> interior(x.begin() + 1, x.end() - 1);
  return PriorityDistribution(
      Tabulated{std::move(x), std::move(pdf), std::move(cdf), std::move(interior)});
}

PriorityDistribution PriorityDistribution::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open density table: " + path.string());
  std::vector<double> xs, ps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    double a = 0.0, b = 0.0;
    if (comma == std::string::npos ||
        !parse_double(std::string_view(line).substr(0, comma), a) ||
        !parse_double(std::string_view(line).substr(comma + 1), b)) {
      if (xs.empty()) continue;  // header row
      throw IoError("malformed density row " + std::to_string(line_no) + " in " +
                    path.string());
    }
    xs.push_back(a);
    ps.push_back(b);
  }
  return tabulated(std::move(xs), std::move(ps));
}

double PriorityDistribution::lo() const {
  return std::visit(overloaded{[](const Uniform& u) { return u.lo; },
                               [](const Tabulated& t) { return t.x.front(); }},
                    law_);
}

double PriorityDistribution::hi() const {
  return std::visit(overloaded{[](const Uniform& u) { return u.hi; },
                               [](const Tabulated& t) { return t.x.back(); }},
                    law_);
}

double PriorityDistribution::cdf(double x) const {
  return std::visit(
      overloaded{
          [x](const Uniform& u) {
            if (x <= u.lo) return 0.0;
            if (x >= u.hi) return 1.0;
            return (x - u.lo) / (u.hi - u.lo);
          },
          [x](const Tabulated& t) {
            if (x <= t.x.front()) return 0.0;
            if (x >= t.x.back()) return 1.0;
            const auto k = static_cast<std::size_t>(
                std::upper_bound(t.x.begin(), t.x.end(), x) - t.x.begin() - 1);
            const double h = x - t.x[k];
            const double slope = (t.pdf[k + 1] - t.pdf[k]) / (t.x[k + 1] - t.x[k]);
            return std::min(1.0, t.cdf[k] + t.pdf[k] * h + 0.5 * slope * h * h);
          }},
      law_);
}

double PriorityDistribution::pdf(double x) const {
  return std::visit(
      overloaded{
          [x](const Uniform& u) {
            return (x >= u.lo && x <= u.hi) ? 1.0 / (u.hi - u.lo) : 0.0;
          },
          [x](const Tabulated& t) {
            if (x < t.x.front() || x > t.x.back()) return 0.0;
            if (x == t.x.back()) return t.pdf.back();
            const auto k = static_cast<std::size_t>(
                std::upper_bound(t.x.begin(), t.x.end(), x) - t.x.begin() - 1);
            const double s = (x - t.x[k]) / (t.x[k + 1] - t.x[k]);
            return t.pdf[k] + s * (t.pdf[k + 1] - t.pdf[k]);
          }},
      law_);
}

double PriorityDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0,1]");
  return std::visit(
      overloaded{
          [u](const Uniform& d) { return d.lo + u * (d.hi - d.lo); },
          [u](const Tabulated& t) {
            if (u <= 0.0) return t.x.front();
            if (u >= 1.0) return t.x.back();
            auto k = static_cast<std::size_t>(
                std::upper_bound(t.cdf.begin(), t.cdf.end(), u) - t.cdf.begin() - 1);
            k = std::min(k, t.x.size() - 2);
            // Solve cdf_k + a h + b h^2 / 2 = u on the segment.
            const double width = t.x[k + 1] - t.x[k];
            const double a = t.pdf[k];
            const double b = (t.pdf[k + 1] - t.pdf[k]) / width;
            const double need = u - t.cdf[k];
            double h;
            if (std::fabs(b) < 1e-300) {
              h = a > 0.0 ? need / a : 0.0;
            } else {
              const double disc = std::max(0.0, a * a + 2.0 * b * need);
              // Stable root of b/2 h^2 + a h - need = 0.
              h = 2.0 * need / (a + std::sqrt(disc));
            }
            return t.x[k] + std::clamp(h, 0.0, width);
          }},
      law_);
}

std::span<const double> PriorityDistribution::breakpoints() const {
  if (const auto* t = std::get_if<Tabulated>(&law_)) return t->interior;
  return {};
}

std::string PriorityDistribution::describe() const {
  return std::visit(
      overloaded{[](const Uniform& u) {
                   return "uniform(" + format_number(u.lo) + "," +
                          format_number(u.hi) + ")";
                 },
                 [](const Tabulated& t) {
                   return "tabulated(" + std::to_string(t.x.size()) + " rows on [" +
                          format_number(t.x.front()) + "," +
                          format_number(t.x.back()) + "])";
                 }},
      law_);
}

}  // namespace prioq
