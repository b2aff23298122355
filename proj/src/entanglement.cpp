#include "qrgxy/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrgxy/parallel.hpp"

namespace qrgxy {

namespace {

// sigma_y (x) sigma_y as a real matrix, i.e. -(i sigma_y) (x) (i sigma_y)
const Mat& spin_flip_matrix() {
  static const Mat m = two_site_coupling(Axis::Y, 1, 2, 2).entries;
  return m;
}

Mat symmetric_sqrt(const Mat& rho) {
  const EighResult ed = eigh(rho);
  for (double v : ed.values)
    if (v < -1e-8) throw std::runtime_error("concurrence: density matrix has a negative eigenvalue");
  Mat s(4, 4);
  for (int k = 0; k < 4; ++k) {
    const double r = std::sqrt(std::max(ed.values[k], 0.0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s(i, j) += r * ed.vectors(i, k) * ed.vectors(j, k);
  }
  return s;
}

constexpr std::array<std::pair<int, int>, 6> kCornerPairs = {
    {{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};

}  // namespace

double concurrence(const TwoQubitDensity& rho) {
  if (rho.entries.rows() != 4 || rho.entries.cols() != 4)
    throw std::invalid_argument("concurrence: density matrix must be 4x4");
  if (std::abs(trace(rho.entries) - 1.0) > 1e-10)
    throw std::invalid_argument("concurrence: density matrix trace != 1");

  // The sqrt(lambda_i) of rho * rho~ are |mu_i| for the symmetric matrix
  // B = sqrt(rho) f sqrt(rho): rho rho~ is similar to B^2. Reading them off
  // B keeps near-zero eigenvalues at machine accuracy, where the sqrt of an
  // eigenvalue of the product would amplify their noise to ~1e-8.
  const Mat root = symmetric_sqrt(rho.entries);
  Mat b = root * spin_flip_matrix() * root;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) b(i, j) = b(j, i) = 0.5 * (b(i, j) + b(j, i));
  const EighResult ed = eigh(b);

  double s[4];
  for (int k = 0; k < 4; ++k) s[k] = std::abs(ed.values[k]);
  std::sort(s, s + 4);
  return std::max(s[3] - s[2] - s[1] - s[0], 0.0);
}

ConcurrenceSet pairwise_concurrences(double gamma) {
  const PureState phi1 = ground_states_analytic(gamma).first;
  ConcurrenceSet out;
  double product = 1.0;
  for (std::size_t k = 0; k < kCornerPairs.size(); ++k) {
    const auto [i, j] = kCornerPairs[k];
    out.pairs[k] = concurrence(partial_trace_pair(phi1, i, j));
    product *= out.pairs[k];
  }
  out.cg = (product > 0.0) ? std::pow(product, 1.0 / 6.0) : 0.0;
  return out;
}

double cg_after_iterations(double gamma, int n) {
  double g = gamma;
  for (int k = 0; k < n; ++k) g = rg_step(g).gamma_prime;
  return pairwise_concurrences(g).cg;
}

std::vector<double> cg_curve(int n, std::span<const double> grid, int threads) {
  if (n < 0) throw std::invalid_argument("cg_curve: n must be >= 0");
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { out[i] = cg_after_iterations(grid[i], n); });
  return out;
}

namespace {

double abs_central_diff(double gamma, int n, double h) {
  return std::abs(cg_after_iterations(gamma + h, n) - cg_after_iterations(gamma - h, n)) / (2.0 * h);
}

// Golden-section maximum of f on [a, b], assumed unimodal there.
template <typename F>
double golden_max(F&& f, double a, double b, double width) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DerivativeCurve derivative_curve(int n, std::span<const double> grid, double h, int threads) {
  if (n < 0) throw std::invalid_argument("derivative_curve: n must be >= 0");
  if (!(h > 0.0)) throw std::invalid_argument("derivative_curve: h must be > 0");
  if (grid.size() < 3) throw std::invalid_argument("derivative_curve: need at least 3 grid points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i + 1] - grid[i] > 2.0 * h))
      throw std::invalid_argument("derivative_curve: grid spacing must exceed 2h");

  DerivativeCurve out;
  out.n = n;
  out.grid.assign(grid.begin(), grid.end());
  out.values.resize(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { out.values[i] = abs_central_diff(grid[i], n, h); });

  // refine the maximum on the gamma < 0 side (gamma_c = 0); fall back to the
  // global maximum if the grid has no negative part
  std::size_t best = 0;
  bool have_negative = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) {
      if (!have_negative || out.values[i] > out.values[best]) best = i;
      have_negative = true;
    }
  }
  if (!have_negative)
    best = std::size_t(std::max_element(out.values.begin(), out.values.end()) - out.values.begin());

  const double lo = (best > 0) ? grid[best - 1] : grid[best];
  double hi = (best + 1 < grid.size()) ? grid[best + 1] : grid[best];
  if (have_negative) hi = std::min(hi, 0.0);
  out.gamma_max = golden_max([&](double g) { return abs_central_diff(g, n, h); }, lo, hi, 1e-6);
  out.d_max = abs_central_diff(out.gamma_max, n, h);
  return out;
}

PeakEstimate locate_derivative_peak(int n, double h0) {
  if (n < 0) throw std::invalid_argument("locate_derivative_peak: n must be >= 0");
  if (!(h0 > 0.0)) throw std::invalid_argument("locate_derivative_peak: h0 must be > 0");

  // march out from zero until cg has dropped to half its central value;
  // that fixes the scale of the peak region
  const double c0 = cg_after_iterations(0.0, n);
  double t = 1e-9;
  while (t < 1.0 && cg_after_iterations(-t, n) > 0.5 * c0) t *= 2.0;
  t = std::min(t, 1.0);

  const double lo = -4.0 * t, hi = 0.0;
  const double width = std::max(1e-4 * t, 1e-13);

  double h = std::min(h0, t / 64.0);
  PeakEstimate prev{0.0, -1.0, 0.0};
  for (int round = 0; round < 48; ++round) {
    auto f = [&](double g) { return abs_central_diff(g, n, h); };
    const double gmax = golden_max(f, lo, hi, width);
    const PeakEstimate cur{gmax, f(gmax), h};
    if (prev.d_max > 0.0 && std::abs(cur.d_max - prev.d_max) <= 0.01 * cur.d_max &&
        std::abs(cur.gamma_max - prev.gamma_max) <= 0.01 * std::abs(cur.gamma_max))
      return cur;
    prev = cur;
    h *= 0.5;
    if (h < 1e-12)
      throw std::runtime_error("locate_derivative_peak: step size underflow before convergence");
  }
  throw std::runtime_error("locate_derivative_peak: did not converge");
}

ScalingFit scaling_fits(std::span<const int> n_list, double h0) {
  if (n_list.size() < 3) throw std::invalid_argument("scaling_fits: need at least 3 iterations");

  ScalingFit out;
  out.points.reserve(n_list.size());
  for (int n : n_list) {
    const PeakEstimate p = locate_derivative_peak(n, h0);
    ScalingPoint pt;
    pt.n = n;
    pt.ln_size = (double(n) + 1.0) * std::log(5.0);
    pt.gamma_max = p.gamma_max;
    pt.d_max = p.d_max;
    out.points.push_back(pt);
  }

  auto fit = [](std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      xm += x[i];
      ym += y[i];
    }
    xm /= double(m);
    ym /= double(m);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sxy += (x[i] - xm) * (y[i] - ym);
      sxx += (x[i] - xm) * (x[i] - xm);
      syy += (y[i] - ym) * (y[i] - ym);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - (f.slope * x[i] + f.intercept);
      ss_res += r * r;
    }
    f.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return f;
  };

  std::vector<double> lnN, lnD, lnG;
  for (const ScalingPoint& p : out.points) {
    if (!(p.d_max > 0.0)) throw std::runtime_error("scaling_fits: non-positive derivative maximum");
    if (!(p.gamma_max < 0.0))
      throw std::runtime_error("scaling_fits: gamma_max on the wrong side of gamma_c");
    lnN.push_back(p.ln_size);
    lnD.push_back(std::log(p.d_max));
    lnG.push_back(std::log(-p.gamma_max));  // gamma_c - gamma_max with gamma_c = 0
  }
  out.dmax_fit = fit(lnN, lnD);
  out.gmax_fit = fit(lnN, lnG);
  out.theta = -out.gmax_fit.slope;
  // intercept = -theta * ln(prefactor)
  out.prefactor = std::exp(-out.gmax_fit.intercept / out.theta);
  return out;
}

}  // namespace qrgxy
