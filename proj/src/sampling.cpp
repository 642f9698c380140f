#include "qbat/sampling.hpp"

#include <cmath>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"
#include "qbat/gpo.hpp"

namespace qbat {

Vec bell_vector(Bell which) {
  Vec v = Vec::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case Bell::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case Bell::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case Bell::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case Bell::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

QuantumState ginibre_state(int d_a, int d_b, Rng& rng) {
  if (d_a < 2 || d_b < 2) throw InputError("ginibre_state: dims must be >= 2");
  const int n = d_a * d_b;
  Mat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Mat rho = x * x.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;  // kill rounding skew
  return QuantumState{d_a, d_b, rho};
}

BipartiteHamiltonian random_hamiltonian(int d_a, int d_b, bool include_local,
                                        Rng& rng) {
  if (d_a < 2 || d_b < 2)
    throw InputError("random_hamiltonian: dims must be >= 2");
  const int na = d_a * d_a - 1, nb = d_b * d_b - 1;
  RealVec h_a = RealVec::Zero(na), h_b = RealVec::Zero(nb);
  if (include_local) {
    for (int i = 0; i < na; ++i) h_a(i) = rng.gaussian();
    for (int j = 0; j < nb; ++j) h_b(j) = rng.gaussian();
  }
  RealMat v(nb, na);
  for (int j = 0; j < nb; ++j)
    for (int i = 0; i < na; ++i) v(j, i) = rng.gaussian();
  return ham_from_bloch(d_a, d_b, h_a, h_b, v);
}

QuantumState werner_state(double p, Bell which) {
  if (p < 0.0 || p > 1.0) throw InputError("werner_state: p outside [0,1]");
  Vec psi = bell_vector(which);
  Mat rho = (1.0 - p) / 4.0 * identity(4) + p * (psi * psi.adjoint());
  return QuantumState{2, 2, rho};
}

BipartiteHamiltonian antiferromagnetic_hamiltonian(double omega, int d) {
  if (d < 2) throw InputError("antiferromagnetic_hamiltonian: d must be >= 2");
  const int n = d * d - 1;
  RealMat v = RealMat::Identity(n, n) * omega;
  return ham_from_bloch(d, d, RealVec::Zero(n), RealVec::Zero(n), v);
}

BipartiteHamiltonian flipflop_hamiltonian(double omega_a, double omega_b,
                                          double g) {
  // GPO order for d=2: s_x, s_y, s_z.
  RealVec h_a(3), h_b(3);
  h_a << 0, 0, omega_a / 2.0;
  h_b << 0, 0, omega_b / 2.0;
  RealMat v = RealMat::Zero(3, 3);
  v(0, 0) = g / 2.0;
  v(1, 1) = g / 2.0;
  return ham_from_bloch(2, 2, h_a, h_b, v);
}

BipartiteHamiltonian bell_diagonal_hamiltonian(double e0, double e1, double e2,
                                               double e3) {
  if (!(e0 < e1 && e1 < e2 && e2 <= e3))
    throw InputError("bell_diagonal_hamiltonian: need e0 < e1 < e2 <= e3");
  // Energies in the computational basis: |00>->e0, |01>->e3, |10>->e2, |11>->e1.
  const double E00 = e0, E01 = e3, E10 = e2, E11 = e1;
  const double mu = (E00 + E01 + E10 + E11) / 4.0;
  const double alpha = (E00 + E01 - E10 - E11) / 4.0;  // s_z (x) 1
  const double beta = (E00 - E01 + E10 - E11) / 4.0;   // 1 (x) s_z
  const double gamma = (E00 - E01 - E10 + E11) / 4.0;  // s_z (x) s_z
  GpoBasis b = gpo_basis(2);
  BipartiteHamiltonian ham;
  ham.d_a = ham.d_b = 2;
  ham.h_local_a = alpha * b.elements[2] + (mu / 2.0) * identity(2);
  ham.h_local_b = beta * b.elements[2] + (mu / 2.0) * identity(2);
  ham.v_int = gamma * kron(b.elements[2], b.elements[2]);
  return ham;
}

}  // namespace qbat
