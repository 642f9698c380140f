#pragma once

#include "qbat/linalg.hpp"

namespace qbat {

// Density operator on a bipartite d_a x d_b Hilbert space.
struct QuantumState {
  int d_a = 0;
  int d_b = 0;
  Mat rho;

  int dim() const { return d_a * d_b; }
  // Throws InputError on Hermiticity/trace/PSD violations. Eigenvalues above
  // the -1e-9 floor but below zero are tolerated here and clipped where
  // spectra are consumed.
  void validate() const;
  Mat reduced_a() const;  // tr_b[rho]
  Mat reduced_b() const;  // tr_a[rho]
};

// H = H_a (x) 1 + 1 (x) H_b + V_ab with tr_a[V] = tr_b[V] = 0.
struct BipartiteHamiltonian {
  int d_a = 0;
  int d_b = 0;
  Mat h_local_a;  // d_a x d_a
  Mat h_local_b;  // d_b x d_b
  Mat v_int;      // (d_a d_b) x (d_a d_b)

  int dim() const { return d_a * d_b; }
  void validate() const;
  Mat total() const;  // full operator on the joint space
};

void check_matching_dims(const QuantumState& state, const BipartiteHamiltonian& ham);

}  // namespace qbat
