#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "prioq/analytic.hpp"
#include "prioq/error.hpp"
#include "prioq/operator_solver.hpp"
#include "prioq/selection.hpp"
#include "prioq/simulator.hpp"
#include "prioq/ecdf.hpp"

using namespace prioq;

TEST_SUITE("analytic") {
  TEST_CASE("stationary cdf against the geometric-mixture series") {
    const auto u = PriorityDistribution::uniform();
    CHECK(barabasi_stationary_cdf(0.5, u, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(oracle::stationary_cdf_series(0.5, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
    for (double p : {0.0, 0.1, 0.3, 0.7, 0.95}) {
      double prev = 0.0;
      for (int i = 0; i <= 50; ++i) {
        const double x = i / 50.0;
        const double F = barabasi_stationary_cdf(p, u, x);
        CHECK(F == doctest::Approx(oracle::stationary_cdf_series(p, x)).epsilon(1e-12));
        CHECK(F >= prev);
        prev = F;
        if (p == 0.0) CHECK(F == doctest::Approx(x));
      }
      CHECK(barabasi_stationary_cdf(p, u, 0.0) == 0.0);
      CHECK(barabasi_stationary_cdf(p, u, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const auto tab = PriorityDistribution::tabulated({0.0, 0.4, 1.0}, {0.5, 2.0, 0.5});
    CHECK(barabasi_stationary_cdf(0.6, tab, 0.4) ==
          doctest::Approx(oracle::stationary_cdf_series(0.6, tab.cdf(0.4))).epsilon(1e-12));
    CHECK_THROWS_AS(barabasi_stationary_cdf(1.0, u, 0.5), DegenerateError);
    CHECK_THROWS_AS(barabasi_stationary_cdf(0.5, u, 1.5), DomainError);
  }

  TEST_CASE("stationary density solves the stationary equation") {
    for (const auto& dist : {PriorityDistribution::uniform(),
                             PriorityDistribution::tabulated({0.0, 0.4, 1.0}, {0.5, 2.0, 0.5})}) {
      for (double p : {0.1, 0.5, 0.9}) {
        const auto protocol = SelectionProtocol::barabasi(p);
        const auto r1 = barabasi_stationary_old_density(p, dist);
        const auto grid = QuadratureGrid::standard(dist.lo(), dist.hi());
        double worst = 0.0;
        for (double x : grid.nodes()) {
          const double lhs = barabasi_stationary_density(p, dist, x) * (1 - q(protocol, dist, x));
          worst = std::max(worst, std::fabs(lhs - dist.pdf(x) * q1(protocol, r1, x)));
        }
        CHECK(worst < 1e-8);
      }
    }
  }

  TEST_CASE("closed-form pmf: limits, regime, normalization") {
    for (std::uint64_t k = 1; k <= 30; ++k) {
      CHECK(barabasi_tau_pmf(0.0, k) == std::ldexp(1.0, -static_cast<int>(k)));
      CHECK(barabasi_tau_pmf(1e-7, k) == doctest::Approx(std::ldexp(1.0, -static_cast<int>(k))).epsilon(1e-5));
    }
    CHECK(barabasi_tau_pmf(1.0, 1) == 1.0);
    CHECK(barabasi_tau_pmf(1.0, 5) == 0.0);
    CHECK(barabasi_regime(0.0) == TauRegime::geometric);
    CHECK(barabasi_regime(0.4) == TauRegime::mixed);
    CHECK(barabasi_regime(1.0) == TauRegime::record_limit);
    CHECK_THROWS_AS(barabasi_tau_pmf(0.5, 0), DomainError);
    for (double p : {1e-4, 0.2, 0.5, 0.9, 0.99, 0.999}) {
      const auto m = barabasi_tau_mass(p);
      CHECK(std::fabs(m.value - 1.0) <= 1e-12);
      CHECK(m.tail_bound < 1e-15);
    }
  }

  TEST_CASE("closed-form pmf against direct integration") {
    for (double p : {0.3, 0.5, 0.9}) {
      for (std::uint64_t k : {1u, 2u, 3u, 7u, 20u, 50u})
        CHECK(barabasi_tau_pmf(p, k) == doctest::Approx(oracle::barabasi_pmf(p, k)).epsilon(1e-9));
    }
  }

  TEST_CASE("near p = 1 the pmf decays like 1/(k-1)") {
    double lo = 1e300, hi = 0.0;
    for (std::uint64_t k = 10; k <= 100; ++k) {
      const double v = (k - 1.0) * barabasi_tau_pmf(0.999, k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK((hi - lo) / hi < 0.10);
  }

  TEST_CASE("burstiness grows with p") {
    CHECK(barabasi_tau_pmf(0.9, 1) > barabasi_tau_pmf(0.5, 1));
    auto tail = [](double p) {
      double s = 0.0;
      for (std::uint64_t k = 1; k <= 10; ++k) s += barabasi_tau_pmf(p, k);
      return 1.0 - s;
    };
    CHECK(tail(0.9) > tail(0.5));
  }

  TEST_CASE("expected waiting time") {
    CHECK(std::fabs(barabasi_expected_tau(0.5).value - 2.0) < 1e-9);
    CHECK(std::fabs(barabasi_expected_tau(0.0).value - 2.0) < 1e-12);
    CHECK(std::fabs(barabasi_expected_tau(0.99).value - 2.0) < 1e-9);
    const auto inf = barabasi_expected_tau(1.0);
    CHECK_FALSE(inf.finite);
    CHECK(std::isinf(inf.value));
  }

  TEST_CASE("general law reduces to the closed form") {
    const auto u = PriorityDistribution::uniform();
    for (double p : {0.5, 0.8}) {
      const auto r1 = barabasi_stationary_old_density(p, u);
      const GeneralTauLaw law(SelectionProtocol::barabasi(p), u, r1);
      for (std::uint64_t k = 1; k <= 50; ++k)
        CHECK(std::fabs(law.pmf(k) - barabasi_tau_pmf(p, k)) < 1e-6);
      CHECK(std::fabs(law.mass(40).value - 1.0) < 1e-8);
      CHECK(law.expected().value == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(tau_pmf_general(SelectionProtocol::barabasi(p), u, r1, 3) ==
            doctest::Approx(law.pmf(3)).epsilon(1e-14));
    }
    const auto flat = OldTaskDensity::from_function(0.2, 1.0, [](double) { return 1.25; });
    const GeneralTauLaw zero(SelectionProtocol::proportional(0.0, 0.2, 1.0),
                             PriorityDistribution::uniform(0.2, 1.0), flat);
    for (std::uint64_t k = 1; k <= 30; ++k)
      CHECK(zero.pmf(k) == doctest::Approx(std::ldexp(1.0, -static_cast<int>(k))).epsilon(1e-13));
    CHECK_THROWS_AS(zero.pmf(0), DomainError);
  }

  TEST_CASE("general law for the proportional protocol") {
    const double p = 0.9, c = 0.2;
    const auto grid = QuadratureGrid::standard(c, 1.0);
    const auto stat = proportional_stationary(p, c, grid, {1e-12, 1000, true});
    const auto r1 = stat.series->density();
    const auto pr = SelectionProtocol::proportional(p, c, 1.0);
    const auto dist = PriorityDistribution::uniform(c, 1.0);
    const GeneralTauLaw law(pr, dist, r1, grid);
    CHECK(std::fabs(law.mass(60).value - 1.0) < 1e-8);
    CHECK(std::fabs(law.expected().value - 2.0) < 1e-3);

    SimulationConfig cfg;
    cfg.protocol = pr;
    cfg.dist = dist;
    cfg.steps = 1'010'000;
    cfg.seed = 5;
    cfg.keep_samples = false;
    cfg.keep_event_trace = false;
    const auto sim = run(cfg);
    const double n = static_cast<double>(sim.histogram.total_executed);
    for (std::uint64_t k = 1; k <= 30; ++k) {
      const double pk = law.pmf(k);
      CHECK(std::fabs(sim.histogram.probability(k) - pk) < 3 * binomial_sigma(pk, n));
    }
  }
}
