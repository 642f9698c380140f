#pragma once

#include <cstdint>

#include "qbat/constants.hpp"
#include "qbat/state.hpp"

namespace qbat {

// Parallel capacity of a state: max-over-product-unitaries energy minus
// min-over-product-unitaries energy, each side obtained with the direct
// local-unitary optimizer, so the result is a certified lower bound on the
// true parallel capacity.
double parallel_capacity_lower(const QuantumState& state,
                               const BipartiteHamiltonian& ham,
                               int restarts = tol::kDefaultRestarts,
                               std::uint64_t seed = 0);

// Entanglement gap of sign*H: min over product states |phi>|psi> of the
// energy, minus the ground energy, via an alternating eigenvector see-saw
// (fix one side, take the minimal eigenvector of the contracted operator,
// alternate to convergence 1e-10, multi-restart). Always >= 0 up to solver
// noise.
double entanglement_gap(const BipartiteHamiltonian& ham, int sign,
                        int restarts = 32, std::uint64_t seed = 0);

// Maximum parallel capacity over separable states:
//   C_1 = (E_max - E_0) - gap(+H) - gap(-H).
double capacity_ceiling_c1(const BipartiteHamiltonian& ham, int restarts = 32,
                           std::uint64_t seed = 0);

// Work-fluctuation entanglement criterion in its state-structure form:
//   (d^4/16) ||T||_F^2 > s_1(d, R_a, R_b),
// with the two-qubit reduction
//   ||T||_F^2 > 1 - | |R_a|^2 - |R_b|^2 |^2.
// Requires d_a = d_b.
bool fluctuation_criterion(const QuantumState& state,
                           const BipartiteHamiltonian& ham);

struct WitnessReport {
  double parallel_capacity = 0.0;  // lower bound via optimization
  double ceiling_c1 = 0.0;
  double h_norm_inf = 0.0;  // spectral width E_max - E_0
  double gap_plus = 0.0;    // entanglement gap of +H
  double gap_minus = 0.0;   // entanglement gap of -H
  bool capacity_detects = false;
  bool fluctuation_detects = false;
  // whether a max-over-states capacity search exceeded the separable ceiling,
  // i.e. the Hamiltonian can discriminate at all; when false, capacity-based
  // non-detection carries no information
  bool hamiltonian_discriminates = false;
};

WitnessReport witness_report(const QuantumState& state,
                             const BipartiteHamiltonian& ham,
                             int restarts = tol::kDefaultRestarts,
                             std::uint64_t seed = 0,
                             double margin = tol::kDetectionMargin);

}  // namespace qbat
