#pragma once

#include <utility>

#include "qrgxy/linalg.hpp"

namespace qrgxy {

enum class Axis { X, Y, Z };

/// 2x2 Pauli matrix in the real representation. For Axis::Y the stored
/// matrix is i*sigma_y and imaginary_unit is set: sigma_y only ever enters
/// the model in pairs, so the remaining factor i*i = -1 is folded in where
/// the pair is assembled. Everything downstream stays real symmetric.
struct PauliMatrix {
  Mat m;
  bool imaginary_unit = false;
};
PauliMatrix pauli(Axis axis);

/// Multi-qubit pure state over the computational z basis.
/// Site 1 is the most significant bit; bit 0 = up, bit 1 = down.
struct PureState {
  int n = 0;
  Vec amplitudes;

  /// Validates length 2^n and unit Euclidean norm (1e-12).
  PureState(int n_qubits, Vec amps);
};

/// Real 2^n x 2^n operator in the z basis.
struct DenseOperator {
  int n = 0;
  Mat entries;
};

/// Real symmetric 4x4 reduced density matrix of a qubit pair.
struct TwoQubitDensity {
  Mat entries;
};

/// sigma_i^eps sigma_j^eps embedded into n qubits (identity elsewhere).
/// For Axis::Y the result is the genuine sigma_y x sigma_y real matrix,
/// i.e. -(i sigma_y)(i sigma_y). Requires 1 <= i < j <= n <= 10.
DenseOperator two_site_coupling(Axis axis, int i, int j, int n);

/// Full symmetric eigendecomposition by cyclic Jacobi sweeps.
/// Eigenvalues ascending, eigenvectors in the columns of `vectors`.
/// Tolerance: off-diagonal Frobenius norm <= 1e-13 * ||H||_F, at most
/// 100 sweeps; throws std::runtime_error if that is not reached.
struct EighResult {
  Vec values;
  Mat vectors;
  int sweeps = 0;
};
EighResult eigh(const Mat& h);

/// k lowest eigenpairs of a symmetric operator (dimension <= 1024).
/// Throws std::invalid_argument for non-symmetric input.
std::pair<Vec, Mat> eigh_lowest(const DenseOperator& h, std::size_t k);

/// Reduced density matrix of sites (i, j) of a 5-qubit pure state,
/// with site i as the first tensor factor.
TwoQubitDensity partial_trace_pair(const PureState& state, int i, int j);

/// Frobenius distance between two orthogonal projectors; zero iff they
/// project onto the same subspace. Inputs must be symmetric and
/// idempotent within 1e-8.
double projector_distance(const Mat& p, const Mat& q);

/// Number of down spins (set bits) of a basis index for an n-qubit register.
int down_count(unsigned basis_index, int n);

}  // namespace qrgxy
