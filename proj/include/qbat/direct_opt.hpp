#pragma once

#include "qbat/rng.hpp"
#include "qbat/state.hpp"

namespace qbat {

// Parameter vector for a single subsystem's unitary:
//   d = 2: (theta in [0,pi], phi, gamma in [0,2pi]),
//          U = [[e^{i(g-f)/2} cos(t/2),  e^{-i(g+f)/2} sin(t/2)],
//               [e^{i(g+f)/2} sin(t/2), -e^{-i(g-f)/2} cos(t/2)]]
//   d > 2: coefficients x_j in [0,pi] over the d^2-1 GPO generators,
//          U = exp(-i sum_j x_j s^j).
struct LocalUnitaryParams {
  int dim = 0;
  RealVec params;
};

Mat materialize_unitary(const LocalUnitaryParams& p);
int param_count(int d);

struct PeLowerResult {
  double value = 0.0;
  LocalUnitaryParams u_a;
  LocalUnitaryParams u_b;
};

// Best work extraction over restarts of joint Nelder-Mead over (U_a, U_b).
// The identity start is always included, so value >= 0.
PeLowerResult pe_lower_bound(const QuantumState& state,
                             const BipartiteHamiltonian& ham, int restarts,
                             std::uint64_t seed);

// d=2 only: optimize over (O_a, O_b) in SO(3)^2 acting on the Bloch data
// (ZYZ Euler angles); agrees with pe_lower_bound up to optimizer noise.
double pe_lower_bound_so3(const QuantumState& state,
                          const BipartiteHamiltonian& ham, int restarts,
                          std::uint64_t seed);

enum class Side { A, B };

struct LocalErgotropyResult {
  double value = 0.0;
  LocalUnitaryParams u;
};

LocalErgotropyResult local_ergotropy(const QuantumState& state,
                                     const BipartiteHamiltonian& ham, Side which,
                                     int restarts, std::uint64_t seed);

enum class StrategyOrder { AB, BA, Cooperative };

struct StrategyOutcome {
  StrategyOrder order = StrategyOrder::AB;
  double work_first = 0.0;
  double work_second = 0.0;
  double total = 0.0;
};

// Sequential egoistic extraction: the first agent applies its local-ergotropy
// optimum, the second then optimizes on the resulting state.
StrategyOutcome egoistic_total(const QuantumState& state,
                               const BipartiteHamiltonian& ham,
                               StrategyOrder order, int restarts,
                               std::uint64_t seed);

// Two-qubit positivity from Bloch data via the closed polynomial criteria;
// agrees with a direct eigenvalue check.
bool qubit_state_physicality(const RealVec& r_a, const RealVec& r_b,
                             const RealMat& t_mat);

// Work extracted by a fixed product unitary: tr[(rho - U rho U^dag) H].
double extraction_value(const QuantumState& state,
                        const BipartiteHamiltonian& ham, const Mat& u_a,
                        const Mat& u_b);

}  // namespace qbat
