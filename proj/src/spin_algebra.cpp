#include "qrgxy/spin_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qrgxy {

PauliMatrix pauli(Axis axis) {
  Mat m(2, 2);
  switch (axis) {
    case Axis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      return {m, false};
    case Axis::Y:
      // i*sigma_y: |up> -> -|down>, |down> -> +|up>
      m(0, 1) = 1.0;
      m(1, 0) = -1.0;
      return {m, true};
    case Axis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      return {m, false};
  }
  throw std::invalid_argument("pauli: bad axis");
}

PureState::PureState(int n_qubits, Vec amps) : n(n_qubits), amplitudes(std::move(amps)) {
  if (n < 1 || n > 10) throw std::invalid_argument("PureState: qubit count out of range");
  if (amplitudes.size() != (std::size_t{1} << n))
    throw std::invalid_argument("PureState: amplitude vector is not 2^n long");
  const double nrm = norm2(amplitudes);
  if (std::abs(nrm - 1.0) > 1e-12)
    throw std::invalid_argument("PureState: not normalized (|norm-1| = " +
                                std::to_string(std::abs(nrm - 1.0)) + ")");
}

int down_count(unsigned basis_index, int n) {
  return std::popcount(basis_index & ((1u << n) - 1u));
}

DenseOperator two_site_coupling(Axis axis, int i, int j, int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("two_site_coupling: qubit count out of range");
  if (i < 1 || j <= i || j > n) throw std::invalid_argument("two_site_coupling: bad site pair");
  const std::size_t dim = std::size_t{1} << n;
  const unsigned bi = 1u << (n - i);  // site 1 = most significant bit
  const unsigned bj = 1u << (n - j);
  Mat m(dim, dim);
  if (axis == Axis::Z) {
    for (std::size_t c = 0; c < dim; ++c) {
      const int par = int((c >> (n - i)) & 1u) + int((c >> (n - j)) & 1u);
      m(c, c) = (par % 2 == 0) ? 1.0 : -1.0;
    }
    return {n, m};
  }
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t r = c ^ bi ^ bj;
    double s = 1.0;
    if (axis == Axis::Y) {
      // per-site i*sigma_y column factors: up -> -1, down -> +1; the pair of
      // i factors contributes the extra -1
      const double fi = ((c & bi) != 0) ? 1.0 : -1.0;
      const double fj = ((c & bj) != 0) ? 1.0 : -1.0;
      s = -fi * fj;
    }
    m(r, c) = s;
  }
  return {n, m};
}

namespace {

void require_symmetric(const Mat& h, const char* who) {
  if (h.rows() != h.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
  const double scale = std::max(1.0, max_abs(h));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i + 1; j < h.cols(); ++j)
      if (std::abs(h(i, j) - h(j, i)) > 1e-12 * scale)
        throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
}

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EighResult eigh(const Mat& h) {
  require_symmetric(h, "eigh");
  const std::size_t d = h.rows();
  Mat a = h;
  Mat v = Mat::identity(d);
  const double tol = 1e-13 * std::max(frobenius_norm(h), 1e-300);
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
  }
  if (off_diagonal_norm(a) > tol)
    throw std::runtime_error("eigh: Jacobi iteration did not converge in 100 sweeps");

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EighResult out;
  out.values.resize(d);
  out.vectors = Mat(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < d; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  out.sweeps = sweep;
  return out;
}

std::pair<Vec, Mat> eigh_lowest(const DenseOperator& h, std::size_t k) {
  if (h.entries.rows() > 1024) throw std::invalid_argument("eigh_lowest: dimension > 1024");
  if (k == 0 || k > h.entries.rows()) throw std::invalid_argument("eigh_lowest: bad k");
  EighResult full = eigh(h.entries);
  Vec vals(full.values.begin(), full.values.begin() + k);
  Mat vecs(full.vectors.rows(), k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < full.vectors.rows(); ++r) vecs(r, c) = full.vectors(r, c);
  return {std::move(vals), std::move(vecs)};
}

TwoQubitDensity partial_trace_pair(const PureState& state, int i, int j) {
  if (state.n != 5) throw std::invalid_argument("partial_trace_pair: state must have 5 qubits");
  if (i < 1 || j <= i || j > 5) throw std::invalid_argument("partial_trace_pair: bad site pair");
  const double nrm = norm2(state.amplitudes);
  if (std::abs(nrm - 1.0) > 1e-12)
    throw std::invalid_argument("partial_trace_pair: state not normalized");

  const int n = 5;
  int env_sites[3];
  int m = 0;
  for (int s = 1; s <= n; ++s)
    if (s != i && s != j) env_sites[m++] = s;

  // basis index of (pair bits a, environment bits e)
  auto index_of = [&](unsigned a, unsigned e) {
    unsigned z = 0;
    z |= ((a >> 1) & 1u) << (n - i);
    z |= (a & 1u) << (n - j);
    for (int t = 0; t < 3; ++t) z |= ((e >> (2 - t)) & 1u) << (n - env_sites[t]);
    return z;
  };

  Mat rho(4, 4);
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = a; b < 4; ++b) {
      double s = 0.0;
      for (unsigned e = 0; e < 8; ++e)
        s += state.amplitudes[index_of(a, e)] * state.amplitudes[index_of(b, e)];
      rho(a, b) = rho(b, a) = s;
    }
  return {rho};
}

double projector_distance(const Mat& p, const Mat& q) {
  auto check = [](const Mat& m, const char* name) {
    if (m.rows() != m.cols()) throw std::invalid_argument("projector_distance: not square");
    if (frobenius_norm(m - m.transposed()) > 1e-8)
      throw std::invalid_argument(std::string("projector_distance: ") + name + " not symmetric");
    if (frobenius_norm(m * m - m) > 1e-8)
      throw std::invalid_argument(std::string("projector_distance: ") + name + " not idempotent");
  };
  check(p, "P");
  check(q, "Q");
  if (p.rows() != q.rows()) throw std::invalid_argument("projector_distance: shape mismatch");
  return frobenius_norm(p - q);
}

}  // namespace qrgxy
