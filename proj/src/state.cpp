#include "qbat/state.hpp"

#include <cmath>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"

namespace qbat {

void QuantumState::validate() const {
  if (d_a < 2 || d_b < 2) throw InputError("state: dimensions must be >= 2");
  if (rho.rows() != dim() || rho.cols() != dim())
    throw InputError("state: matrix size does not match dims");
  if (!rho.allFinite()) throw InputError("state: non-finite entries");
  if (hermiticity_residual(rho) > tol::kHermiticity)
    throw InputError("state: not Hermitian within tolerance");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol::kTrace)
    throw InputError("state: trace differs from 1");
  auto eig = hermitian_eig(rho);
  if (eig.eigenvalues(0) < tol::kPsdFloor)
    throw InputError("state: negative eigenvalue below admissible floor");
}

Mat QuantumState::reduced_a() const { return partial_trace(rho, {d_a, d_b}, 1); }
Mat QuantumState::reduced_b() const { return partial_trace(rho, {d_a, d_b}, 0); }

void BipartiteHamiltonian::validate() const {
  if (d_a < 2 || d_b < 2) throw InputError("hamiltonian: dimensions must be >= 2");
  if (h_local_a.rows() != d_a || h_local_a.cols() != d_a ||
      h_local_b.rows() != d_b || h_local_b.cols() != d_b ||
      v_int.rows() != dim() || v_int.cols() != dim())
    throw InputError("hamiltonian: part sizes do not match dims");
  if (!h_local_a.allFinite() || !h_local_b.allFinite() || !v_int.allFinite())
    throw InputError("hamiltonian: non-finite entries");
  if (hermiticity_residual(h_local_a) > tol::kHermiticity ||
      hermiticity_residual(h_local_b) > tol::kHermiticity ||
      hermiticity_residual(v_int) > tol::kHermiticity)
    throw InputError("hamiltonian: part not Hermitian within tolerance");
  Mat tra = partial_trace(v_int, {d_a, d_b}, 0);
  Mat trb = partial_trace(v_int, {d_a, d_b}, 1);
  if (tra.cwiseAbs().maxCoeff() > tol::kPartialTraceZero ||
      trb.cwiseAbs().maxCoeff() > tol::kPartialTraceZero)
    throw InputError("hamiltonian: interaction has nonvanishing partial trace");
}

Mat BipartiteHamiltonian::total() const {
  return kron(h_local_a, identity(d_b)) + kron(identity(d_a), h_local_b) + v_int;
}

void check_matching_dims(const QuantumState& state, const BipartiteHamiltonian& ham) {
  if (state.d_a != ham.d_a || state.d_b != ham.d_b)
    throw InputError("state/hamiltonian dimension mismatch");
}

}  // namespace qbat
