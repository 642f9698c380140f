#pragma once

#include "qbat/state.hpp"

namespace qbat {

struct ErgotropyResult {
  double value = 0.0;        // extracted work, >= 0
  QuantumState passive_state;
  Mat optimal_unitary;       // U = sum_k |eps_k><r_k|
};

// Closed-form global ergotropy: pair descending rho-eigenvalues with
// ascending eigenvalues of H = H_a + H_b + V_ab.
ErgotropyResult global_ergotropy(const QuantumState& state,
                                 const BipartiteHamiltonian& ham);

// Max-pairing energy minus min-pairing energy over global unitaries.
double global_capacity(const QuantumState& state,
                       const BipartiteHamiltonian& ham);

// Extended parallel ergotropy coincides with global ergotropy: the closure of
// products of local unitaries interleaved with free evolution generates every
// global unitary, so the definitional alias is exact.
double extended_parallel_ergotropy(const QuantumState& state,
                                   const BipartiteHamiltonian& ham);

// Eigenvalues of rho sorted descending, with tiny negatives clipped to zero.
RealVec clipped_spectrum_descending(const Mat& rho);

}  // namespace qbat
