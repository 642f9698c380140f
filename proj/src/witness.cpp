#include "qbat/witness.hpp"

#include <algorithm>
#include <cmath>

#include "qbat/direct_opt.hpp"
#include "qbat/errors.hpp"
#include "qbat/gpo.hpp"
#include "qbat/linalg.hpp"
#include "qbat/rng.hpp"

namespace qbat {

namespace {

BipartiteHamiltonian negated(const BipartiteHamiltonian& ham) {
  BipartiteHamiltonian out = ham;
  out.h_local_a = -ham.h_local_a;
  out.h_local_b = -ham.h_local_b;
  out.v_int = -ham.v_int;
  return out;
}

Vec random_ket(int d, Rng& rng) {
  Vec psi(d);
  for (int i = 0; i < d; ++i) psi(i) = Complex(rng.gaussian(), rng.gaussian());
  psi /= psi.norm();
  return psi;
}

// min over product states of <H>, by alternating minimal-eigenvector updates
double min_product_energy(const Mat& h, int d_a, int d_b, int restarts,
                          std::uint64_t seed) {
  double best = 1e300;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed, "entanglement-gap/restart/" + std::to_string(r));
    Vec psi_b = random_ket(d_b, rng);
    double energy = 1e300;
    for (int it = 0; it < 500; ++it) {
      Mat m_a = partial_trace(h * kron(identity(d_a), psi_b * psi_b.adjoint()),
                              {d_a, d_b}, 1);
      HermitianEig ea = hermitian_eig(m_a);
      Vec phi_a = ea.eigenvectors.col(0);
      Mat m_b = partial_trace(
          kron(phi_a * phi_a.adjoint(), identity(d_b)) * h, {d_a, d_b}, 0);
      HermitianEig eb = hermitian_eig(m_b);
      psi_b = eb.eigenvectors.col(0);
      double next = eb.eigenvalues(0);
      if (std::abs(energy - next) < 1e-10) {
        energy = next;
        break;
      }
      energy = next;
    }
    best = std::min(best, energy);
  }
  return best;
}

}  // namespace

double parallel_capacity_lower(const QuantumState& state,
                               const BipartiteHamiltonian& ham, int restarts,
                               std::uint64_t seed) {
  check_matching_dims(state, ham);
  // lowering the energy as far as possible, and raising it as far as
  // possible, are the two ergotropy problems for +H and -H
  double lower = pe_lower_bound(state, ham, restarts, seed).value;
  double raise = pe_lower_bound(state, negated(ham), restarts, seed + 1).value;
  return lower + raise;
}

double entanglement_gap(const BipartiteHamiltonian& ham, int sign, int restarts,
                        std::uint64_t seed) {
  ham.validate();
  if (sign != 1 && sign != -1)
    throw InputError("entanglement_gap: sign must be +1 or -1");
  Mat h = double(sign) * ham.total();
  HermitianEig eig = hermitian_eig(h);
  double ground = eig.eigenvalues(0);
  double sep = min_product_energy(h, ham.d_a, ham.d_b, restarts, seed);
  return std::max(0.0, sep - ground);
}

double capacity_ceiling_c1(const BipartiteHamiltonian& ham, int restarts,
                           std::uint64_t seed) {
  ham.validate();
  HermitianEig eig = hermitian_eig(ham.total());
  const double width =
      eig.eigenvalues(eig.eigenvalues.size() - 1) - eig.eigenvalues(0);
  return width - entanglement_gap(ham, 1, restarts, seed) -
         entanglement_gap(ham, -1, restarts, seed);
}

bool fluctuation_criterion(const QuantumState& state,
                           const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  if (state.d_a != state.d_b)
    throw InputError("fluctuation_criterion: requires equal local dimensions");
  const int d = state.d_a;
  BlochDecomposition bloch = bloch_decompose(state, ham);
  const double t2 = bloch.t_mat.squaredNorm();
  const double ra2 = bloch.r_a.squaredNorm();
  const double rb2 = bloch.r_b.squaredNorm();
  if (d == 2) {
    const double skew = std::abs(ra2 - rb2);
    return t2 > 1.0 - skew * skew;
  }
  const double s1 =
      (d - 1) + (d * d / 4.0) * ((d - 2) / 2.0 * (ra2 + rb2) -
                                 d / 2.0 * std::abs(ra2 - rb2));
  return std::pow(double(d), 4) / 16.0 * t2 > s1;
}

WitnessReport witness_report(const QuantumState& state,
                             const BipartiteHamiltonian& ham, int restarts,
                             std::uint64_t seed, double margin) {
  check_matching_dims(state, ham);
  WitnessReport rep;
  HermitianEig eig = hermitian_eig(ham.total());
  rep.h_norm_inf =
      eig.eigenvalues(eig.eigenvalues.size() - 1) - eig.eigenvalues(0);
  rep.gap_plus = entanglement_gap(ham, 1, 32, seed);
  rep.gap_minus = entanglement_gap(ham, -1, 32, seed);
  rep.ceiling_c1 = rep.h_norm_inf - rep.gap_plus - rep.gap_minus;
  rep.parallel_capacity = parallel_capacity_lower(state, ham, restarts, seed);
  rep.capacity_detects = rep.parallel_capacity > rep.ceiling_c1 + margin;
  rep.fluctuation_detects = fluctuation_criterion(state, ham);

  // max-over-states capacity search: the capacity is convex, so pure states
  // suffice; random pure states plus the maximally entangled one give a lower
  // bound on max_rho C_P, enough to certify that the ceiling can be exceeded
  double best = 0.0;
  const int dim = state.dim();
  std::vector<Vec> candidates;
  Rng rng(seed, "capacity-search");
  for (int t = 0; t < 6; ++t) candidates.push_back(random_ket(dim, rng));
  if (state.d_a == state.d_b) {
    Vec ent = Vec::Zero(dim);
    for (int i = 0; i < state.d_a; ++i) ent(i * state.d_b + i) = 1.0;
    ent /= ent.norm();
    candidates.push_back(ent);
  }
  for (const Vec& psi : candidates) {
    QuantumState pure;
    pure.d_a = state.d_a;
    pure.d_b = state.d_b;
    pure.rho = psi * psi.adjoint();
    best = std::max(best,
                    parallel_capacity_lower(pure, ham, 4, seed + 17));
    if (best > rep.ceiling_c1 + margin) break;
  }
  rep.hamiltonian_discriminates = best > rep.ceiling_c1 + margin;
  return rep;
}

}  // namespace qbat
