#include "qbat/ergotropy.hpp"

#include <algorithm>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"

namespace qbat {

RealVec clipped_spectrum_descending(const Mat& rho) {
  auto eig = hermitian_eig(rho);
  RealVec out(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double v = eig.eigenvalues(out.size() - 1 - i);
    if (v < tol::kPsdFloor) throw InputError("spectrum below PSD floor");
    out(i) = std::max(v, 0.0);
  }
  return out;
}

ErgotropyResult global_ergotropy(const QuantumState& state,
                                 const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  const int n = state.dim();
  auto h_eig = hermitian_eig(ham.total());   // ascending energies
  auto r_eig = hermitian_eig(state.rho);     // ascending populations

  ErgotropyResult res;
  Mat passive = Mat::Zero(n, n);
  Mat u = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double pop = std::max(r_eig.eigenvalues(n - 1 - k), 0.0);
    Vec energy_vec = h_eig.eigenvectors.col(k);
    Vec state_vec = r_eig.eigenvectors.col(n - 1 - k);
    passive += pop * (energy_vec * energy_vec.adjoint());
    u += energy_vec * state_vec.adjoint();
  }
  res.passive_state = QuantumState{state.d_a, state.d_b, passive};
  res.optimal_unitary = u;
  Mat h = ham.total();
  res.value = ((state.rho - passive) * h).trace().real();
  if (res.value < 0.0) res.value = 0.0;  // passive input, rounding only
  return res;
}

double global_capacity(const QuantumState& state,
                       const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  const int n = state.dim();
  auto h_eig = hermitian_eig(ham.total());
  RealVec pops = clipped_spectrum_descending(state.rho);
  double e_max = 0.0, e_min = 0.0;
  for (int k = 0; k < n; ++k) {
    e_max += pops(k) * h_eig.eigenvalues(n - 1 - k);  // big pop with big energy
    e_min += pops(k) * h_eig.eigenvalues(k);          // big pop with small energy
  }
  return e_max - e_min;
}

double extended_parallel_ergotropy(const QuantumState& state,
                                   const BipartiteHamiltonian& ham) {
  return global_ergotropy(state, ham).value;
}

}  // namespace qbat
