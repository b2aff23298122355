#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>

#include "qrgxy/rg_map.hpp"

using namespace qrgxy;

TEST_SUITE("rg_map") {

TEST_CASE("block projector") {
  SUBCASE("orthonormal columns") {
    for (double g : {0.1, 0.5, 1.0, -0.7}) {
      const Mat p = block_projector(g);
      CHECK(max_abs(p.transposed() * p - Mat::identity(2)) < 1e-12);
    }
  }
  SUBCASE("projected block Hamiltonian is E0 times the identity") {
    for (double g : {1.0, 0.5, 0.2}) {
      const Mat p = block_projector(g);
      const Mat h = build_block_hamiltonian({1.0, g}).entries;
      const double e0 = ground_energy_analytic({1.0, g});
      Mat want = Mat::identity(2);
      want *= e0;
      CHECK(max_abs(p.transposed() * (h * p) - want) < 1e-10);
    }
    CHECK(ground_energy_analytic({1.0, 1.0}) == -2.0);
  }
}

TEST_CASE("eta factors: closed combinations vs projected operators") {
  SUBCASE("component-wise agreement up to one global sign") {
    for (double g = 0.1; g <= 0.95; g += 0.1) {
      const EtaFactors c = eta_factors_closed(g);
      const EtaFactors o = eta_factors_operator(g);
      auto diff = [&](double s) {
        return std::max({std::abs(c.eta1x - s * o.eta1x), std::abs(c.eta1y - s * o.eta1y),
                         std::abs(c.etacx - s * o.etacx), std::abs(c.etacy - s * o.etacy)});
      };
      CHECK(std::min(diff(1.0), diff(-1.0)) <= 1e-8);
    }
  }
  SUBCASE("frozen spot values at gamma = 0.5") {
    const EtaFactors o = eta_factors_operator(0.5);
    CHECK(o.eta1x == doctest::Approx(0.9745860938788589).epsilon(1e-11));
    CHECK(o.eta1y == doctest::Approx(-0.004443593733527).epsilon(1e-9));
    CHECK(o.etacx == doctest::Approx(-0.9929480775498629).epsilon(1e-11));
    CHECK(o.etacy == doctest::Approx(0.013581943810292).epsilon(1e-9));
  }
  SUBCASE("Ising point") {
    const EtaFactors o = eta_factors_operator(1.0);
    CHECK(o.eta1x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(o.eta1y) < 1e-12);
    CHECK(std::abs(o.etacx) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(o.etacy) < 1e-12);
  }
}

TEST_CASE("rg step") {
  SUBCASE("fixed points of the closed form") {
    CHECK(rg_step(0.0).gamma_prime == 0.0);
    CHECK(rg_step(1.0).gamma_prime == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rg_step(-1.0).gamma_prime == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("flows toward the Ising point") {
    const double gp = rg_step(0.5).gamma_prime;
    CHECK(gp > 0.5);
    CHECK(gp < 1.0);
    CHECK(gp == doctest::Approx(0.9998752753089905).epsilon(1e-12));
    CHECK(rg_step(0.5).j_ratio == doctest::Approx(0.739505530831893).epsilon(1e-12));
  }
  SUBCASE("odd in gamma") {
    for (double g = 0.05; g <= 1.2; g += 0.05)
      CHECK(rg_step(-g).gamma_prime == doctest::Approx(-rg_step(g).gamma_prime).epsilon(1e-14));
  }
  SUBCASE("repelled from the critical point") {
    for (double g = 0.02; g < 1.0; g += 0.02)
      CHECK(std::abs(rg_step(g).gamma_prime) > std::abs(g));
  }
  SUBCASE("j ratio is positive inside the physical window") {
    for (double g = -0.99; g <= 0.99; g += 0.03) CHECK(rg_step(g).j_ratio > 0.0);
  }
  SUBCASE("reproducible from the corner eta ratio") {
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9, -0.4}) {
      const EtaFactors e = eta_factors_operator(g);
      const double num = (1.0 + g) * e.etacx * e.etacx - (1.0 - g) * e.etacy * e.etacy;
      const double den = (1.0 + g) * e.etacx * e.etacx + (1.0 - g) * e.etacy * e.etacy;
      CHECK(rg_step(g).gamma_prime == doctest::Approx(num / den).epsilon(1e-12));
    }
  }
  SUBCASE("rejects out-of-range input") {
    CHECK_THROWS_AS(rg_step(1.51), std::invalid_argument);
  }
}

TEST_CASE("fixed points") {
  SUBCASE("the three physical fixed points") {
    const std::vector<double> roots = fixed_points(-1.2, 1.2);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0] + 1.0) <= 1e-8);
    CHECK(std::abs(roots[1]) <= 1e-8);
    CHECK(std::abs(roots[2] - 1.0) <= 1e-8);
  }
  SUBCASE("no interior root") { CHECK(fixed_points(0.1, 0.9).empty()); }
  SUBCASE("oddness forces the root at zero") {
    const std::vector<double> roots = fixed_points(-0.2, 0.2);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0]) <= 1e-10);
  }
  SUBCASE("rejects an empty interval") {
    CHECK_THROWS_AS(fixed_points(0.5, 0.5), std::invalid_argument);
  }
}

TEST_CASE("rg iterate") {
  SUBCASE("fixed starting points give constant trajectories") {
    for (double g0 : {0.0, 1.0, -1.0}) {
      const RGTrajectory t = rg_iterate(g0, 6);
      REQUIRE(t.steps.size() == 7);
      for (const auto& s : t.steps) CHECK(s.gamma == doctest::Approx(g0).epsilon(1e-10));
    }
  }
  SUBCASE("monotone flow from 0.1 saturates") {
    const RGTrajectory t = rg_iterate(0.1, 8);
    for (std::size_t k = 1; k < t.steps.size(); ++k)
      CHECK(t.steps[k].gamma >= t.steps[k - 1].gamma);
    CHECK(t.steps[2].gamma > t.steps[1].gamma);  // strict while away from the fixed point
    CHECK(t.steps[8].gamma > 0.99);
  }
  SUBCASE("cumulative coupling is the product of the per-step ratios") {
    const RGTrajectory t = rg_iterate(0.3, 5);
    double prod = 1.0;
    double g = 0.3;
    for (int k = 0; k < 5; ++k) {
      const RGStepResult s = rg_step(g);
      prod *= s.j_ratio;
      g = s.gamma_prime;
    }
    CHECK(t.steps[5].j_cumulative == doctest::Approx(prod).epsilon(1e-14));
    CHECK(t.steps[0].j_cumulative == 1.0);
  }
  SUBCASE("effective sizes are powers of five") {
    CHECK(RGTrajectory::effective_size(0) == 5.0);
    CHECK(RGTrajectory::effective_size(3) == 625.0);
  }
  SUBCASE("rejects too many iterations") {
    CHECK_THROWS_AS(rg_iterate(0.1, 65), std::invalid_argument);
  }
}

TEST_CASE("two-block effective coupling") {
  SUBCASE("pure Ising bond projects to gamma_eff = 1") {
    const std::array<CornerBond, 1> bonds{{{2, 3}}};
    const PairCoupling p = effective_pair_coupling(1.0, bonds);
    CHECK(p.gamma_eff == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.max_non_xy <= 1e-10);
  }
  SUBCASE("gamma_eff is bond-multiplicity invariant, j_eff is additive") {
    const std::array<CornerBond, 1> one{{{2, 3}}};
    const std::array<CornerBond, 2> two{{{2, 3}, {2, 4}}};
    const PairCoupling p1 = effective_pair_coupling(0.5, one);
    const PairCoupling p2 = effective_pair_coupling(0.5, two);
    CHECK(p2.gamma_eff == doctest::Approx(p1.gamma_eff).epsilon(1e-10));
    CHECK(p2.j_eff == doctest::Approx(2.0 * p1.j_eff).epsilon(1e-12));
  }
  SUBCASE("matches the closed-form recursion") {
    const std::array<CornerBond, 1> bonds{{{4, 5}}};
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const PairCoupling p = effective_pair_coupling(g, bonds);
      const RGStepResult s = rg_step(g);
      CHECK(std::abs(p.gamma_eff - s.gamma_prime) <= 1e-8);
      CHECK(p.j_eff == doctest::Approx(s.j_ratio).epsilon(1e-10));
      CHECK(p.max_non_xy <= 1e-10);
    }
  }
  SUBCASE("every single corner-corner bond projects identically") {
    PairCoupling first{};
    bool have_first = false;
    for (int a = 2; a <= 5; ++a)
      for (int b = 2; b <= 5; ++b) {
        const std::array<CornerBond, 1> bond{{{a, b}}};
        const PairCoupling p = effective_pair_coupling(0.35, bond);
        if (!have_first) {
          first = p;
          have_first = true;
          continue;
        }
        CHECK(p.gamma_eff == doctest::Approx(first.gamma_eff).epsilon(1e-12));
        CHECK(p.j_eff == doctest::Approx(first.j_eff).epsilon(1e-12));
      }
  }
  SUBCASE("rejects bad bond lists") {
    CHECK_THROWS_AS(effective_pair_coupling(0.5, {}), std::invalid_argument);
    const std::array<CornerBond, 1> bad{{{1, 3}}};
    CHECK_THROWS_AS(effective_pair_coupling(0.5, bad), std::invalid_argument);
    const std::array<CornerBond, 7> many{
        {{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}};
    CHECK_THROWS_AS(effective_pair_coupling(0.5, many), std::invalid_argument);
  }
}

}  // TEST_SUITE
