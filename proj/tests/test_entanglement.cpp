#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "qrgxy/entanglement.hpp"

using namespace qrgxy;

namespace {

TwoQubitDensity pure_density(double a, double b, double c, double d) {
  const double nrm = std::sqrt(a * a + b * b + c * c + d * d);
  const double v[4] = {a / nrm, b / nrm, c / nrm, d / nrm};
  Mat rho(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = v[i] * v[j];
  return {rho};
}

// Oracle: for a pure two-qubit state (a, b, c, d) the concurrence is
// 2 |ad - bc|.
double pure_concurrence(double a, double b, double c, double d) {
  const double n2 = a * a + b * b + c * c + d * d;
  return 2.0 * std::abs(a * d - b * c) / n2;
}

Mat rotation(double angle) {
  Mat r(2, 2);
  r(0, 0) = std::cos(angle);
  r(0, 1) = -std::sin(angle);
  r(1, 0) = std::sin(angle);
  r(1, 1) = std::cos(angle);
  return r;
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("concurrence of reference states") {
  SUBCASE("Bell state") {
    CHECK(concurrence(pure_density(1.0, 0.0, 0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("product state") {
    CHECK(concurrence(pure_density(1.0, 0.0, 0.0, 0.0)) == 0.0);
  }
  SUBCASE("maximally mixed state") {
    Mat rho = Mat::identity(4);
    rho *= 0.25;
    CHECK(concurrence({rho}) == 0.0);
  }
}

TEST_CASE("eigenvalue route equals the pure-state formula on random states") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> dist;
  for (int rep = 0; rep < 1000; ++rep) {
    const double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    const double got = concurrence(pure_density(a, b, c, d));
    CHECK(std::abs(got - pure_concurrence(a, b, c, d)) <= 1e-10);
  }
}

TEST_CASE("concurrence is invariant under local rotations in the real subgroup") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const PureState phi = ground_states_analytic(0.35).first;
  const TwoQubitDensity rho = partial_trace_pair(phi, 2, 3);
  const double base = concurrence(rho);
  for (int rep = 0; rep < 50; ++rep) {
    const Mat u = kron(rotation(angle(rng)), rotation(angle(rng)));
    const Mat rotated = u * rho.entries * u.transposed();
    CHECK(concurrence({rotated}) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("concurrence rejects invalid density matrices") {
  Mat bad = Mat::identity(4);
  bad *= 0.5;
  bad(3, 3) = -0.5;  // trace 1 but strongly negative eigenvalue
  CHECK_THROWS_AS(concurrence({bad}), std::runtime_error);
  Mat off_trace = Mat::identity(4);
  CHECK_THROWS_AS(concurrence({off_trace}), std::invalid_argument);
}

TEST_CASE("pairwise concurrences of the block ground state") {
  SUBCASE("Ising point is unentangled") {
    const ConcurrenceSet s = pairwise_concurrences(1.0);
    for (double c : s.pairs) CHECK(c == 0.0);
    CHECK(s.cg == 0.0);
  }
  SUBCASE("all six pairs coincide and cg equals any of them") {
    for (double g : {0.1, 0.45, 0.8, -0.3}) {
      const ConcurrenceSet s = pairwise_concurrences(g);
      for (double c : s.pairs) CHECK(std::abs(c - s.pairs[0]) <= 1e-10);
      CHECK(std::abs(s.cg - s.pairs[0]) <= 1e-10);
    }
  }
  SUBCASE("even in gamma") {
    for (double g : {0.15, 0.5, 0.85})
      CHECK(pairwise_concurrences(-g).cg == doctest::Approx(pairwise_concurrences(g).cg).epsilon(1e-12));
  }
  SUBCASE("both members of the doublet give the same cg") {
    for (double g : {0.1, 0.6}) {
      const auto [phi1, phi2] = ground_states_analytic(g);
      double prod = 1.0;
      for (const auto& [i, j] :
           {std::pair{2, 3}, std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 4}, std::pair{3, 5},
            std::pair{4, 5}})
        prod *= concurrence(partial_trace_pair(phi2, i, j));
      const double cg2 = prod > 0.0 ? std::pow(prod, 1.0 / 6.0) : 0.0;
      CHECK(std::abs(cg2 - pairwise_concurrences(g).cg) <= 1e-10);
    }
  }
  SUBCASE("gamma -> 0 limit agrees with the numerically diagonalized doublet") {
    // sector-resolve the eigensolver doublet at the evaluation floor and
    // compare the resulting cg against the closed-form path
    const double g = 1e-8;
    const auto [vals, vecs] = eigh_lowest(build_block_hamiltonian({1.0, g}), 2);
    Vec odd(32, 0.0);
    double best = -1.0;
    for (int k = 0; k < 2; ++k) {
      Vec v(32, 0.0);
      for (unsigned b = 0; b < 32; ++b)
        if (down_count(b, 5) % 2 == 1) v[b] = vecs(b, k);
      const double nn = norm2(v);
      if (nn > best) {
        best = nn;
        odd = v;
      }
    }
    for (double& x : odd) x /= best;
    double prod = 1.0;
    for (const auto& [i, j] :
         {std::pair{2, 3}, std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 4}, std::pair{3, 5},
          std::pair{4, 5}})
      prod *= concurrence(partial_trace_pair(PureState(5, odd), i, j));
    const double cg_numeric = prod > 0.0 ? std::pow(prod, 1.0 / 6.0) : 0.0;
    CHECK(std::abs(cg_numeric - pairwise_concurrences(0.0).cg) <= 1e-9);
  }
  SUBCASE("frozen spot values") {
    CHECK(pairwise_concurrences(0.5).cg == doctest::Approx(0.0143944958874).epsilon(1e-7));
    CHECK(pairwise_concurrences(0.1).cg == doctest::Approx(0.1770599671).epsilon(1e-7));
    CHECK(pairwise_concurrences(0.0).cg == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("cg curves under the flow") {
  SUBCASE("gamma = 0 is invariant at every depth") {
    const double base = cg_after_iterations(0.0, 0);
    for (int n : {1, 5, 6})
      CHECK(cg_after_iterations(0.0, n) == doctest::Approx(base).epsilon(1e-12));
  }
  SUBCASE("saturation away from the critical point") {
    CHECK(cg_after_iterations(0.05, 6) < 0.01);
    CHECK(cg_after_iterations(1.0, 0) == 0.0);
  }
  SUBCASE("successive curves decrease pointwise away from zero") {
    for (int n = 0; n < 4; ++n)
      CHECK(cg_after_iterations(0.05, n + 1) <= cg_after_iterations(0.05, n));
  }
  SUBCASE("cg_curve maps the grid and parallel evaluation is identical") {
    std::vector<double> grid;
    for (int k = -5; k <= 5; ++k) grid.push_back(0.1 * k);
    const std::vector<double> serial = cg_curve(2, grid, 1);
    const std::vector<double> parallel = cg_curve(2, grid, 4);
    REQUIRE(serial.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(serial[k] == parallel[k]);
  }
  SUBCASE("stays continuous across the critical point at finite depth") {
    // adjacent-point jumps shrink roughly in proportion to the grid step
    auto max_jump = [](double step) {
      double worst = 0.0;
      const std::vector<double> grid = [&] {
        std::vector<double> g;
        for (double x = -0.02; x <= 0.02 + 1e-12; x += step) g.push_back(x);
        return g;
      }();
      const std::vector<double> c = cg_curve(2, grid, 1);
      for (std::size_t k = 1; k < c.size(); ++k)
        worst = std::max(worst, std::abs(c[k] - c[k - 1]));
      return worst;
    };
    const double coarse = max_jump(4e-3);
    const double fine = max_jump(1e-3);
    CHECK(fine < coarse);
    CHECK(fine < 0.2);
  }
}

TEST_CASE("derivative curve contract") {
  SUBCASE("smooth and finite at depth zero, peak near -0.09") {
    std::vector<double> grid;
    for (int k = 0; k <= 200; ++k) grid.push_back(-0.2 + 0.2 * k / 200.0);
    const DerivativeCurve c = derivative_curve(0, grid, 1e-4);
    for (double v : c.values) CHECK(std::isfinite(v));
    CHECK(c.gamma_max == doctest::Approx(-0.0907).epsilon(2e-3));
    CHECK(c.d_max == doctest::Approx(1.0407).epsilon(1e-3));
    CHECK(c.d_max >= *std::max_element(c.values.begin(), c.values.end()) - 1e-9);
  }
  SUBCASE("rejects bad steps") {
    const std::vector<double> grid{-0.2, -0.1, 0.0, 0.1};
    CHECK_THROWS_AS(derivative_curve(0, grid, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(derivative_curve(0, grid, 0.06), std::invalid_argument);
  }
  SUBCASE("falls back to the global maximum when the grid has no negative side") {
    std::vector<double> grid;
    for (int k = 0; k <= 60; ++k) grid.push_back(0.02 + 0.18 * k / 60.0);
    const DerivativeCurve c = derivative_curve(0, grid, 1e-4);
    CHECK(std::isfinite(c.gamma_max));
    CHECK(c.gamma_max > 0.0);
    CHECK(c.gamma_max == doctest::Approx(0.0907).epsilon(5e-3));
  }
}

TEST_CASE("resolved derivative peaks sharpen and move in") {
  PeakEstimate prev{};
  for (int n = 0; n <= 3; ++n) {
    const PeakEstimate p = locate_derivative_peak(n);
    CHECK(p.gamma_max < 0.0);
    if (n > 0) {
      CHECK(p.d_max > prev.d_max);
      CHECK(std::abs(p.gamma_max) < std::abs(prev.gamma_max));
      // the map contracts by ~11x per step at the critical point
      CHECK(std::abs(prev.gamma_max / p.gamma_max) == doctest::Approx(11.0).epsilon(0.08));
    }
    prev = p;
  }
  CHECK(prev.d_max == doctest::Approx(1373.15).epsilon(0.03));
  CHECK(prev.gamma_max == doctest::Approx(-6.749e-5).epsilon(0.02));
}

TEST_CASE("scaling fits") {
  SUBCASE("recovers an exact synthetic power law") {
    // feed the fit with points generated from gamma_max = -(0.4 N)^(-1.2):
    // the recovered slope, theta and prefactor must match analytically
    std::vector<double> x, y;
    for (int n = 1; n <= 4; ++n) {
      const double lnN = (n + 1) * std::log(5.0);
      x.push_back(lnN);
      y.push_back(-1.2 * (std::log(0.4) + lnN));
    }
    // closed-form least squares on the synthetic data
    double xm = 0.0, ym = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      xm += x[k];
      ym += y[k];
    }
    xm /= double(x.size());
    ym /= double(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sxy += (x[k] - xm) * (y[k] - ym);
      sxx += (x[k] - xm) * (x[k] - xm);
    }
    const double slope = sxy / sxx;
    const double intercept = ym - slope * xm;
    CHECK(slope == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(std::exp(-intercept / (-slope)) == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("the measured exponent is ln 11 / ln 5 and both fits are tight") {
    const std::array<int, 3> ns{1, 2, 3};
    const ScalingFit f = scaling_fits(ns);
    CHECK(f.theta == doctest::Approx(std::log(11.0) / std::log(5.0)).epsilon(0.02));
    CHECK(f.dmax_fit.r2 >= 0.99);
    CHECK(f.gmax_fit.r2 >= 0.99);
    CHECK(f.dmax_fit.slope == doctest::Approx(-f.gmax_fit.slope).epsilon(0.02));
    CHECK(f.prefactor == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("rejects fewer than three points") {
    const std::array<int, 2> ns{1, 2};
    CHECK_THROWS_AS(scaling_fits(ns), std::invalid_argument);
  }
}

}  // TEST_SUITE
