#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qbat/ergotropy.hpp"
#include "qbat/gpo.hpp"
#include "qbat/sampling.hpp"

using namespace qbat;

namespace {

// Exhaustive oracle: minimum / maximum energy over all eigenvalue pairings.
std::pair<double, double> brute_force_extremes(const QuantumState& st,
                                               const BipartiteHamiltonian& ham) {
  auto h_eig = hermitian_eig(ham.total());
  RealVec pops = clipped_spectrum_descending(st.rho);
  const int n = st.dim();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double lo = 1e300, hi = -1e300;
  do {
    double e = 0;
    for (int k = 0; k < n; ++k) e += pops(k) * h_eig.eigenvalues(perm[k]);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {lo, hi};
}

}  // namespace

TEST_CASE("passive (thermal-like) state has zero ergotropy") {
  BipartiteHamiltonian ham = flipflop_hamiltonian(1.0, 1.1, 0.33);
  auto h_eig = hermitian_eig(ham.total());
  Mat rho = Mat::Zero(4, 4);
  RealVec pops(4);
  pops << 0.4, 0.3, 0.2, 0.1;  // descending against ascending energies
  for (int k = 0; k < 4; ++k)
    rho += pops(k) * (h_eig.eigenvectors.col(k) * h_eig.eigenvectors.col(k).adjoint());
  QuantumState st{2, 2, rho};
  auto res = global_ergotropy(st, ham);
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((res.passive_state.rho - rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("excited |E_1> state of the diagonal Hamiltonian yields E_1 - E_0") {
  BipartiteHamiltonian ham = bell_diagonal_hamiltonian(0, 1, 2, 3);
  Vec e1 = Vec::Zero(4);
  e1(3) = 1.0;  // |11>
  QuantumState st{2, 2, Mat(e1 * e1.adjoint())};
  auto res = global_ergotropy(st, ham);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(extended_parallel_ergotropy(st, ham) == doctest::Approx(res.value));
}

TEST_CASE("ergotropy result invariants on random instances") {
  Rng rng(12, "ergo");
  for (int t = 0; t < 50; ++t) {
    QuantumState st = ginibre_state(2, 2, rng);
    BipartiteHamiltonian ham = random_hamiltonian(2, 2, true, rng);
    auto res = global_ergotropy(st, ham);
    CHECK(res.value >= 0.0);
    Mat h = ham.total();
    // certificate identity
    CHECK(std::abs(res.value -
                   ((st.rho - res.passive_state.rho) * h).trace().real()) < 1e-9);
    // optimal unitary actually realizes the passive state
    Mat moved = res.optimal_unitary * st.rho * res.optimal_unitary.adjoint();
    CHECK((moved - res.passive_state.rho).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((res.optimal_unitary * res.optimal_unitary.adjoint() - identity(4))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    // passive state commutes with H
    Mat comm = res.passive_state.rho * h - h * res.passive_state.rho;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("200 random 4-dim instances match the 4! brute-force oracle") {
  Rng rng(7, "brute");
  for (int t = 0; t < 200; ++t) {
    QuantumState st = ginibre_state(2, 2, rng);
    BipartiteHamiltonian ham = random_hamiltonian(2, 2, true, rng);
    auto [lo, hi] = brute_force_extremes(st, ham);
    double e = energy(st, ham);
    auto res = global_ergotropy(st, ham);
    REQUIRE(std::abs(res.value - (e - lo)) < 1e-9);
    REQUIRE(std::abs(global_capacity(st, ham) - (hi - lo)) < 1e-9);
  }
}

TEST_CASE("capacity: pure state reaches full spectral width, mixed state zero") {
  BipartiteHamiltonian ham = flipflop_hamiltonian(1.0, 1.1, 0.33);
  auto h_eig = hermitian_eig(ham.total());
  double width = h_eig.eigenvalues(3) - h_eig.eigenvalues(0);
  QuantumState pure = werner_state(1.0, Bell::PhiPlus);
  CHECK(global_capacity(pure, ham) == doctest::Approx(width).epsilon(1e-12));
  QuantumState mm{2, 2, identity(4) / 4.0};
  CHECK(global_capacity(mm, ham) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("capacity >= ergotropy, <= spectral width; unitary-invariant passive energy") {
  Rng rng(5, "cap");
  for (int t = 0; t < 50; ++t) {
    QuantumState st = ginibre_state(2, 2, rng);
    BipartiteHamiltonian ham = random_hamiltonian(2, 2, true, rng);
    auto res = global_ergotropy(st, ham);
    double cap = global_capacity(st, ham);
    auto h_eig = hermitian_eig(ham.total());
    CHECK(cap >= res.value - 1e-12);
    CHECK(cap <= h_eig.eigenvalues(3) - h_eig.eigenvalues(0) + 1e-12);
    // rotate by a random global unitary: passive energy must not change
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    QuantumState rot{2, 2, Mat(q * st.rho * q.adjoint())};
    auto res2 = global_ergotropy(rot, ham);
    double passive_e1 = (res.passive_state.rho * ham.total()).trace().real();
    double passive_e2 = (res2.passive_state.rho * ham.total()).trace().real();
    CHECK(std::abs(passive_e1 - passive_e2) < 1e-9);
    CHECK(std::abs(global_capacity(rot, ham) - cap) < 1e-9);
  }
}

TEST_CASE("degenerate spectra: any pairing inside a block gives the same value") {
  // H with a doubly degenerate middle level
  BipartiteHamiltonian ham = bell_diagonal_hamiltonian(0, 1, 2, 2);
  Rng rng(3, "degen");
  QuantumState st = ginibre_state(2, 2, rng);
  auto res = global_ergotropy(st, ham);
  auto [lo, hi] = brute_force_extremes(st, ham);
  CHECK(std::abs(res.value - (energy(st, ham) - lo)) < 1e-9);
  CHECK(std::abs(global_capacity(st, ham) - (hi - lo)) < 1e-9);
}
