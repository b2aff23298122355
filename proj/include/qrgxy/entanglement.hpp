#pragma once

#include <array>
#include <span>
#include <vector>

#include "qrgxy/rg_map.hpp"

namespace qrgxy {

/// Two-qubit concurrence C = max(sqrt(l4) - sqrt(l3) - sqrt(l2) - sqrt(l1), 0)
/// where l1 <= ... <= l4 are the eigenvalues of rho * rho~ and
/// rho~ = (sigma_y x sigma_y) rho (sigma_y x sigma_y) (rho is real here, so
/// the conjugation drops out). The product eigenvalues are obtained from the
/// symmetric similarity sqrt(rho) rho~ sqrt(rho); eigenvalues of rho below
/// -1e-8 are rejected, small negatives are clamped to zero.
double concurrence(const TwoQubitDensity& rho);

/// The six corner-pair concurrences of the block ground state phi1 and
/// their geometric mean cg (zero if any pair vanishes).
struct ConcurrenceSet {
  std::array<double, 6> pairs{};  // C23, C24, C25, C34, C35, C45
  double cg = 0.0;
};
ConcurrenceSet pairwise_concurrences(double gamma);

/// cg evaluated at the coupling reached after n rg steps from gamma.
double cg_after_iterations(double gamma, int n);

/// cg_after_iterations mapped over a grid.
std::vector<double> cg_curve(int n, std::span<const double> grid, int threads = 1);

/// |d cg_n / d gamma| by central differences of step h on a grid, with the
/// maximum on the gamma < 0 side refined by golden-section search to width
/// 1e-6. Requires h > 0 and grid spacing > 2h.
struct DerivativeCurve {
  int n = 0;
  std::vector<double> grid;
  std::vector<double> values;
  double gamma_max = 0.0;
  double d_max = 0.0;
};
DerivativeCurve derivative_curve(int n, std::span<const double> grid, double h, int threads = 1);

/// Fully resolved derivative peak on the gamma < 0 side. The bracket is
/// found by marching out from zero until cg_n has dropped to half its
/// central value, and the finite-difference step starts at h0 and is halved
/// until two successive (gamma_max, d_max) estimates agree to 1%. The peak
/// contracts by roughly 11x per iteration, far below any fixed grid, so
/// this is the instrument the scaling fits use.
struct PeakEstimate {
  double gamma_max = 0.0;
  double d_max = 0.0;
  double h = 0.0;
};
PeakEstimate locate_derivative_peak(int n, double h0 = 1e-4);

/// Least-squares fits ln d_max vs ln N and ln(gamma_c - gamma_max) vs ln N
/// with N = 5^(n+1) and gamma_c = 0; theta = -slope of the second fit and
/// gamma_max = gamma_c - (prefactor * N)^(-theta).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
struct ScalingPoint {
  int n = 0;
  double ln_size = 0.0;
  double gamma_max = 0.0;
  double d_max = 0.0;
};
struct ScalingFit {
  std::vector<ScalingPoint> points;
  LineFit dmax_fit;
  LineFit gmax_fit;
  double theta = 0.0;
  double prefactor = 0.0;
};
ScalingFit scaling_fits(std::span<const int> n_list, double h0 = 1e-4);

}  // namespace qrgxy
