#include "qrgxy/rg_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrgxy {

namespace {

constexpr double kGammaFloor = 1e-8;

struct CouplingCombos {
  double a;  // (etacx + etacy) / 2
  double b;  // (etacx - etacy) / 2
};

CouplingCombos corner_combos(const std::array<double, 10>& c) {
  const double a = 3.0 * c[9] * c[3] + 3.0 * c[0] * c[6] + c[1] * c[7] + c[2] * c[8];
  const double b = c[9] * c[4] + c[0] * c[5] + 3.0 * c[1] * c[6] + 3.0 * c[3] * c[8];
  return {a, b};
}

RGStepResult rg_step_raw(double gamma) {
  const CouplingCombos ab = corner_combos(ground_coefficients(gamma).c);
  const double sum = ab.a * ab.a + ab.b * ab.b;
  const double cross = 2.0 * ab.a * ab.b;
  RGStepResult r;
  r.gamma_prime = (cross + gamma * sum) / (sum + gamma * cross);
  r.j_ratio = sum + gamma * cross;
  if (!std::isfinite(r.gamma_prime) || !std::isfinite(r.j_ratio))
    throw std::runtime_error("rg_step: non-finite result");
  return r;
}

}  // namespace

Mat block_projector(double gamma) {
  auto [phi1, phi2] = ground_states_analytic(gamma);
  Mat p(32, 2);
  for (unsigned b = 0; b < 32; ++b) {
    p(b, 0) = phi1.amplitudes[b];
    p(b, 1) = phi2.amplitudes[b];
  }
  return p;
}

EtaFactors eta_factors_closed(double gamma) {
  const std::array<double, 10>& c = ground_coefficients(gamma).c;
  EtaFactors e;
  e.eta1x = 4.0 * c[9] * c[1] + c[2] * c[5] + 6.0 * c[3] * c[6] + c[4] * c[7] + 4.0 * c[0] * c[8];
  e.eta1y = 4.0 * c[9] * c[1] - c[2] * c[5] - 6.0 * c[3] * c[6] - c[4] * c[7] + 4.0 * c[0] * c[8];
  const CouplingCombos ab = corner_combos(c);
  e.etacx = ab.a + ab.b;
  e.etacy = ab.a - ab.b;
  return e;
}

EtaFactors eta_factors_operator(double gamma) {
  const Mat p = block_projector(gamma);
  const Mat pt = p.transposed();

  auto project = [&](Axis axis, int site) {
    Mat op(32, 32);
    const unsigned bit = 1u << (5 - site);
    for (unsigned col = 0; col < 32; ++col) {
      if (axis == Axis::X) {
        op(col ^ bit, col) = 1.0;
      } else {
        // i*sigma_y action
        op(col ^ bit, col) = ((col & bit) != 0) ? 1.0 : -1.0;
      }
    }
    return pt * (op * p);  // 2x2 in the (phi1, phi2) basis
  };

  auto scalar = [&](Axis axis, int site) {
    const Mat m = project(axis, site);
    const double eta = m(0, 1);
    // expected shape: eta * sigma'_x, or eta * (i sigma'_y) for the y axis
    Mat expect(2, 2);
    expect(0, 1) = eta;
    expect(1, 0) = (axis == Axis::X) ? eta : -eta;
    if (frobenius_norm(m - expect) > 1e-8)
      throw std::runtime_error("eta_factors_operator: projected operator not proportional to the effective Pauli matrix");
    return eta;
  };

  EtaFactors e;
  e.eta1x = scalar(Axis::X, 1);
  e.eta1y = scalar(Axis::Y, 1);
  e.etacx = scalar(Axis::X, 2);
  e.etacy = scalar(Axis::Y, 2);
  for (int site = 3; site <= 5; ++site) {
    if (std::abs(scalar(Axis::X, site) - e.etacx) > 1e-10 ||
        std::abs(scalar(Axis::Y, site) - e.etacy) > 1e-10)
      throw std::runtime_error("eta_factors_operator: corner scalars differ");
  }
  return e;
}

RGStepResult rg_step(double gamma) {
  if (!std::isfinite(gamma) || std::abs(gamma) > 1.5)
    throw std::invalid_argument("rg_step: |gamma| must be finite and <= 1.5");
  if (std::abs(gamma) < kGammaFloor) {
    // odd map, fixed point at zero: use the linearization so that
    // gamma = 0 stays exactly invariant
    const RGStepResult at_floor = rg_step_raw(kGammaFloor);
    return {gamma * (at_floor.gamma_prime / kGammaFloor), at_floor.j_ratio};
  }
  return rg_step_raw(gamma);
}

std::vector<double> fixed_points(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("fixed_points: need lo < hi");
  constexpr int kPoints = 2001;
  auto f = [](double g) { return rg_step(g).gamma_prime - g; };

  std::vector<double> roots;
  double prev_x = lo, prev_f = f(lo);
  for (int k = 1; k < kPoints; ++k) {
    const double x = lo + (hi - lo) * double(k) / double(kPoints - 1);
    const double fx = f(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (prev_f * fx < 0.0) {
      double a = prev_x, b = x, fa = prev_f;
      while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);

  // merge near-duplicates from adjacent brackets
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-8) out.push_back(r);
  return out;
}

RGTrajectory rg_iterate(double gamma0, int n) {
  if (n < 0 || n > 64) throw std::invalid_argument("rg_iterate: n must be in 0..64");
  RGTrajectory t;
  t.gamma0 = gamma0;
  t.steps.reserve(std::size_t(n) + 1);
  double g = gamma0, jc = 1.0;
  t.steps.push_back({g, jc});
  for (int k = 0; k < n; ++k) {
    if (std::abs(g) > 1.5) throw std::runtime_error("rg_iterate: flow left |gamma| <= 1.5");
    const RGStepResult s = rg_step(g);
    g = s.gamma_prime;
    jc *= s.j_ratio;
    if (!std::isfinite(g) || !std::isfinite(jc))
      throw std::runtime_error("rg_iterate: non-finite intermediate");
    t.steps.push_back({g, jc});
  }
  return t;
}

PairCoupling effective_pair_coupling(double gamma, std::span<const CornerBond> bonds) {
  if (bonds.empty() || bonds.size() > 6)
    throw std::invalid_argument("effective_pair_coupling: need 1..6 bonds");
  for (const auto& [a, b] : bonds)
    if (a < 2 || a > 5 || b < 2 || b > 5)
      throw std::invalid_argument("effective_pair_coupling: corners must be in 2..5");

  // ten-qubit bond Hamiltonian, block 1 = sites 1..5, block 2 = sites 6..10
  Mat h(1024, 1024);
  for (const auto& [a, b] : bonds) {
    const Mat xx = two_site_coupling(Axis::X, a, 5 + b, 10).entries;
    const Mat yy = two_site_coupling(Axis::Y, a, 5 + b, 10).entries;
    for (std::size_t r = 0; r < 1024; ++r)
      for (std::size_t s = 0; s < 1024; ++s)
        h(r, s) += 0.25 * ((1.0 + gamma) * xx(r, s) + (1.0 - gamma) * yy(r, s));
  }

  const Mat p1 = block_projector(gamma);
  const Mat p = kron(p1, p1);  // 1024 x 4
  const Mat heff = p.transposed() * (h * p);

  // decompose over {I, X, iY, Z} x {I, X, iY, Z}
  const Mat paulis[4] = {Mat::identity(2), pauli(Axis::X).m, pauli(Axis::Y).m, pauli(Axis::Z).m};
  double cxx = 0.0, cyy = 0.0, max_other = 0.0;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      const Mat basis = kron(paulis[u], paulis[v]);
      const double coef = trace(basis.transposed() * heff) / 4.0;
      if (u == 1 && v == 1) {
        cxx = coef;
      } else if (u == 2 && v == 2) {
        cyy = -coef;  // sigma_y sigma_y = -(i sigma_y)(i sigma_y)
      } else {
        max_other = std::max(max_other, std::abs(coef));
      }
    }
  if (max_other > 1e-10)
    throw std::runtime_error("effective_pair_coupling: projected operator has non-XY components");

  PairCoupling out;
  out.j_eff = 2.0 * (cxx + cyy);
  out.gamma_eff = (cxx - cyy) / (cxx + cyy);
  out.max_non_xy = max_other;
  return out;
}

}  // namespace qrgxy
