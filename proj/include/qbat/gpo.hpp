#pragma once

#include "qbat/state.hpp"

namespace qbat {

// Generalized Pauli operators (generalized Gell-Mann construction) for one
// d-level system: d^2-1 traceless Hermitian matrices with tr[s_i s_j] = 2 d_ij.
// Ordering is fixed (and serialized): symmetric off-diagonals, then
// antisymmetric, then diagonal.
struct GpoBasis {
  int dim = 0;
  std::vector<Mat> elements;
};

GpoBasis gpo_basis(int d);

// Bloch-vector representation of a bipartite state and Hamiltonian.
// Conventions:
//   r_a[i]    = tr[(s_a^i (x) 1) rho]
//   t_mat(i,j)= tr[(s_a^i (x) s_b^j) rho]
//   h_a[i]    = (1/2) tr[s_a^i H_a]           (H_a = h_a . s_a + offset)
//   v_mat(j,i)= (1/4) tr[V_ab (s_a^i (x) s_b^j)]   -- note the swapped indices:
//               rows run over the B basis, columns over the A basis.
// offset_a/offset_b carry any identity component of the local terms so the
// round-trip is exact even for non-traceless inputs.
struct BlochDecomposition {
  int d_a = 0;
  int d_b = 0;
  RealVec r_a, r_b;    // lengths d_a^2-1, d_b^2-1 (dimensionless)
  RealVec h_a, h_b;    // energy
  RealMat t_mat;       // (d_a^2-1) x (d_b^2-1)
  RealMat v_mat;       // (d_b^2-1) x (d_a^2-1), swapped-index convention
  double offset_a = 0.0;
  double offset_b = 0.0;

  // E = offset_a + offset_b + h_a.r_a + h_b.r_b + tr[V T]
  double energy() const;
};

BlochDecomposition bloch_decompose(const QuantumState& state,
                                   const BipartiteHamiltonian& ham);

// Inverse maps (no validation; used for fixtures and round-trip tests).
Mat state_matrix_from_bloch(int d_a, int d_b, const RealVec& r_a,
                            const RealVec& r_b, const RealMat& t_mat);
BipartiteHamiltonian ham_from_bloch(int d_a, int d_b, const RealVec& h_a,
                                    const RealVec& h_b, const RealMat& v_mat);

// tr[H rho], evaluated directly on the matrices.
double energy(const QuantumState& state, const BipartiteHamiltonian& ham);

}  // namespace qbat
