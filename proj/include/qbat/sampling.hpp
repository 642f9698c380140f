#pragma once

#include "qbat/rng.hpp"
#include "qbat/state.hpp"

namespace qbat {

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

Vec bell_vector(Bell which);

// rho = X X^dag / tr[X X^dag] with i.i.d. standard complex Gaussian X.
QuantumState ginibre_state(int d_a, int d_b, Rng& rng);

// H with v_mat entries i.i.d. standard normal in the GPO product basis;
// local Bloch vectors likewise when include_local, exactly zero otherwise.
BipartiteHamiltonian random_hamiltonian(int d_a, int d_b, bool include_local,
                                        Rng& rng);

// (1-p)/4 * 1 + p |psi><psi| for the chosen Bell state.
QuantumState werner_state(double p, Bell which);

// H_Ant = omega * sum_j s^j (x) s^j over the full GPO set of dimension d.
BipartiteHamiltonian antiferromagnetic_hamiltonian(double omega, int d);

// H = (w_a/2) s_z (x) 1 + (w_b/2) 1 (x) s_z + (g/2)(s_x s_x + s_y s_y).
BipartiteHamiltonian flipflop_hamiltonian(double omega_a, double omega_b,
                                          double g);

// Diagonal 2-qubit Hamiltonian with eigenvectors |00>,|11>,|10>,|01> at
// energies e0 < e1 < e2 <= e3 (ordering enforced).
BipartiteHamiltonian bell_diagonal_hamiltonian(double e0, double e1, double e2,
                                               double e3);

}  // namespace qbat
