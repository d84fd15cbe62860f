#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "prioq/analytic.hpp"
#include "prioq/error.hpp"
#include "prioq/operator_solver.hpp"
#include "prioq/selection.hpp"

using namespace prioq;

namespace {

KernelAssembly proportional_assembly(double p, double c, std::size_t nodes = 256,
                                     std::optional<double> split = std::nullopt,
                                     std::size_t threads = 1) {
  return assemble(SelectionProtocol::proportional(p, c, 1.0), PriorityDistribution::uniform(c, 1.0),
                  QuadratureGrid::standard(c, 1.0, nodes), split, threads);
}

}  // namespace

TEST_SUITE("operator-solver") {
  TEST_CASE("assembly of the proportional kernel") {
    const double p = 0.9, c = 0.2;
    const auto a = proportional_assembly(p, c);
    const auto x = a.grid.nodes();
    const std::size_t n = a.size();
    CHECK(a.c1_split == doctest::Approx((1 - p) / 2));
    CHECK_FALSE(a.alpha_changes_sign);
    for (std::size_t i = 0; i < n; i += 17) {
      CHECK(a.g[i] == doctest::Approx(1.25 / (1 - oracle::proportional_q(p, c, x[i]))).epsilon(1e-8));
      CHECK(a.f[i] == a.c1_split * a.g[i]);
      CHECK(1 - a.q[i] >= 1 - SelectionProtocol::proportional(p, c, 1).sup_bound());
      for (std::size_t j = 0; j < n; j += 13) {
        CHECK(a.alpha[i * n + j] == doctest::Approx(p * x[j] / (x[i] + x[j])).epsilon(1e-14));
        CHECK(a.alpha[i * n + j] >= 0.0);
        CHECK(a.k_tilde[i * n + j] == doctest::Approx(a.alpha[i * n + j] * a.g[j]).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("assembly for p = 0 and flagged splits") {
    const auto a = proportional_assembly(0.0, 0.3);
    for (double v : a.alpha) CHECK(v == 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.g[i] == doctest::Approx(2.0 / 0.7).epsilon(1e-14));
      CHECK(a.f[i] == doctest::Approx(1.0 / 0.7).epsilon(1e-14));
    }
    CHECK(proportional_assembly(0.9, 0.2, 256, 0.3).alpha_changes_sign);
    CHECK_THROWS_AS(proportional_assembly(0.9, 0.2, 256, 1.2), DomainError);
    CHECK_THROWS_AS(assemble(SelectionProtocol::barabasi(0.5), PriorityDistribution::uniform(),
                             QuadratureGrid::standard(0, 1)),
                    UnsupportedConfiguration);
  }

  TEST_CASE("row-parallel assembly is bitwise independent of threads") {
    const auto a = proportional_assembly(0.8, 0.1, 256, std::nullopt, 1);
    const auto b = proportional_assembly(0.8, 0.1, 256, std::nullopt, 4);
    CHECK(a.k_tilde == b.k_tilde);
    CHECK(a.g == b.g);
    CHECK(hs_norm(a) == hs_norm(b));
  }

  TEST_CASE("hilbert-schmidt norm") {
    CHECK(hs_norm(proportional_assembly(0.0, 0.2)) == 0.0);
    const double hs = hs_norm(proportional_assembly(0.9, 0.2));
    CHECK(hs < 1.0);
    CHECK(hs == doctest::Approx(0.9168517862844658).epsilon(1e-10));
    CHECK(hs == doctest::Approx(oracle::proportional_hs_norm(0.9, 0.2)).epsilon(1e-7));
    CHECK(hs_norm(proportional_assembly(0.5, 0.2)) < hs_norm(proportional_assembly(0.7, 0.2)));
    CHECK(hs_norm(proportional_assembly(0.7, 0.2)) < hs);
  }

  TEST_CASE("p = 0 collapses the series") {
    for (double c : {0.01, 0.2, 0.6}) {
      const auto sol = solve(proportional_assembly(0.0, c));
      CHECK(sol.n_terms == 1);
      CHECK(sol.converged);
      CHECK(sol.residual < 1e-14);
      for (double v : sol.r1) CHECK(v == doctest::Approx(1 / (1 - c)).epsilon(1e-14));
    }
  }

  TEST_CASE("converged solution: residual, mass, positivity, tail bound") {
    for (double p : {0.5, 0.7, 0.9}) {
      const auto a = proportional_assembly(p, 0.2);
      const SolveOptions opts{1e-10, 200, false};
      const auto sol = solve(a, opts);
      CHECK(sol.converged);
      CHECK(sol.residual < 10 * opts.tol);
      CHECK(sol.raw_mass >= 0.999);
      CHECK(sol.raw_mass <= 1.001);
      for (double v : sol.r1) CHECK(v >= 0.0);
      const double f_norm = std::sqrt(a.grid.integrate([&] {
        std::vector<double> f2(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) f2[i] = a.f[i] * a.f[i];
        return f2;
      }()));
      CHECK(sol.tail_bound ==
            doctest::Approx(f_norm * std::pow(sol.hs_norm, sol.n_terms + 1.0) / (1 - sol.hs_norm)));
      const auto direct = solve_direct(a);
      for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(std::fabs(direct[i] - sol.r1_raw[i]) <= sol.tail_bound + 1e-10);
      CHECK(fixed_point_residual(a, direct) < 1e-12);
    }
  }

  TEST_CASE("normalization and truncation") {
    const auto a = proportional_assembly(0.9, 0.2);
    const auto norm = solve(a, {1e-10, 200, true});
    CHECK(norm.normalized);
    CHECK(std::fabs(a.grid.integrate(norm.r1) - 1.0) < 1e-12);
    CHECK(norm.r1_raw != norm.r1);
    const auto cut = solve(a, {1e-10, 5, false});
    CHECK_FALSE(cut.converged);
    CHECK(cut.n_terms == 5);
    CHECK(cut.tail_bound > norm.tail_bound);
  }

  TEST_CASE("divergence is refused with the certificate") {
    const auto a = proportional_assembly(0.999, 0.001);
    try {
      solve(a);
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      CHECK(e.certificate() >= 1.0);
      CHECK(e.certificate() == doctest::Approx(hs_norm(a)));
    }
  }

  TEST_CASE("grid refinement") {
    const auto coarse = solve(proportional_assembly(0.9, 0.2, 256));
    const auto fine = solve(proportional_assembly(0.9, 0.2, 512));
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.grid.size(); ++i)
      worst = std::max(worst, std::fabs(coarse.grid.interpolate(coarse.r1_raw, fine.grid.node(i)) -
                                        fine.r1_raw[i]));
    CHECK(worst < 1e-4);
  }

  TEST_CASE("region scan") {
    const std::vector<double> cs{0.5}, ps{0.01};
    const auto small = scan_region(cs, ps);
    REQUIRE(small.size() == 1);
    CHECK(small[0].converges);
    const std::vector<double> zero{0.0};
    for (const auto& pt : scan_region(std::vector<double>{0.1, 0.4}, zero)) {
      CHECK(pt.hs_norm == 0.0);
      CHECK(pt.converges);
    }
    std::vector<double> grid_p;
    for (int i = 1; i <= 99; i += 2) grid_p.push_back(i / 100.0);
    for (double c : {0.05, 0.25}) {
      const auto table = scan_region(std::vector<double>{c}, grid_p);
      bool seen_false = false;
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0) CHECK(table[i].hs_norm > table[i - 1].hs_norm);
        if (!table[i].converges) seen_false = true;
        else CHECK_FALSE(seen_false);
      }
    }
  }

  TEST_CASE("closed-form q and its derivative") {
    const double p = 0.9, c = 0.2;
    const auto pr = SelectionProtocol::proportional(p, c, 1.0);
    const auto d = PriorityDistribution::uniform(c, 1.0);
    for (double x : {0.2, 0.35, 0.6, 1.0}) {
      CHECK(proportional_q(p, c, x) == doctest::Approx(q(pr, d, x)).epsilon(1e-12));
      const double h = 1e-5;
      const double xl = std::max(c, x - h), xr = std::min(1.0, x + h);
      const double fd = (oracle::proportional_q(p, c, xr) - oracle::proportional_q(p, c, xl)) / (xr - xl);
      CHECK(proportional_q_prime(p, c, x) == doctest::Approx(fd).epsilon(1e-4));
      CHECK(proportional_q_prime(p, c, x) < 0.0);
    }
  }

  TEST_CASE("waiting-time bounds and cutoff") {
    const double p = 0.9, c = 0.2;
    const auto grid = QuadratureGrid::standard(c, 1.0);
    const auto stat = proportional_stationary(p, c, grid, {1e-12, 1000, true});
    CHECK(stat.used_series);
    const auto r1 = stat.series->density();
    const ProportionalBounds bounds(p, c, r1);
    CHECK(bounds.q_at_c() == doctest::Approx(0.95 - 0.225 * std::log(3.0)).epsilon(1e-14));
    CHECK(bounds.k0() == doctest::Approx(-1 / std::log(0.95 - 0.225 * std::log(3.0))));
    CHECK(std::fabs(bounds.k0() - 2.84) < 0.005);
    CHECK_THROWS_AS(bounds.at(1), UnsupportedConfiguration);

    const GeneralTauLaw law(SelectionProtocol::proportional(p, c, 1.0), PriorityDistribution::uniform(c, 1.0),
                            r1, grid);
    for (std::uint64_t k = 2; k <= 50; ++k) {
      const auto b = bounds.at(k);
      CHECK(b.lower <= law.pmf(k));
      CHECK(law.pmf(k) <= b.upper);
    }
    const auto quick = tau_bounds(p, c, 7);
    CHECK(quick.lower == doctest::Approx(bounds.at(7).lower).epsilon(1e-9));

    // The lower constant needs the slope of q at c. Taken at 1 it is too
    // large and the bound fails from k = 3 on.
    const double q1_at_1 = q1(SelectionProtocol::proportional(p, c, 1.0), r1, 1.0);
    const double m_at_1 = -q1_at_1 * (1 - bounds.q_at_c()) / ((1 - c) * proportional_q_prime(p, c, 1.0));
    const double B3 = (std::pow(bounds.q_at_c(), 2) - std::pow(bounds.q_at_1(), 2)) / 2;
    CHECK(m_at_1 * B3 > law.pmf(3));
    CHECK(bounds.m() < m_at_1);
  }

  TEST_CASE("cutoff grows toward the corner (1, 0)") {
    double prev = 0.0;
    for (auto [p, c] : {std::pair{0.5, 0.5}, {0.9, 0.2}, {0.99, 0.05}, {0.999, 0.001}}) {
      const double k0 = -1 / std::log(proportional_q(p, c, c));
      CHECK(k0 > prev);
      prev = k0;
    }
    CHECK(prev > 100.0);
  }

  TEST_CASE("outside the certified region the direct route is used") {
    const auto grid = QuadratureGrid::standard(0.001, 1.0);
    const auto stat = proportional_stationary(0.999, 0.001, grid);
    CHECK_FALSE(stat.used_series);
    CHECK(stat.hs_norm >= 1.0);
    CHECK(fixed_point_residual(stat.assembly, stat.r1) < 1e-9);
    for (double v : stat.r1) CHECK(v >= 0.0);
  }
}
