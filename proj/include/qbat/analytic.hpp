#pragma once

#include "qbat/sampling.hpp"
#include "qbat/state.hpp"

namespace qbat {

struct SignedSpectrum {
  RealVec singular_values;  // ascending: lambda_0 <= ... <= lambda_{n-1}
  int det_sign = 0;         // {-1, 0, +1}, zero below a scale-relative threshold
};

SignedSpectrum signed_spectrum(const RealMat& m);

enum class Hypothesis { LMM, NullLocal, Both, Neither };

// (i) LMM: both marginals equal 1/d; (ii) NullLocal: h_a = h_b = 0.
Hypothesis hypothesis_check(const QuantumState& state,
                            const BipartiteHamiltonian& ham);

struct AnalyticBound {
  double value = 0.0;
  bool exact = false;  // saturated for d_a = d_b = 2
};

// PE upper bound from the singular-value rearrangement argument:
//   tr[rho V] + lambda^|V| . lambda^|T|                      if det(-VT) >= 0
//   tr[rho V] + (lambda^|V| . lambda^|T| - 2 l0^|V| l0^|T|)  otherwise.
// Requires d_a = d_b and hypothesis_check != Neither.
AnalyticBound pe_upper_bound_lmm(const QuantumState& state,
                                 const BipartiteHamiltonian& ham);

// Closed-form PE of the Werner state W_p for a 2-qubit Hamiltonian:
//   p(<psi|V|psi> + tr|V|)                   if det(V-matrix) >= 0
//   p(<psi|V|psi> + tr|V| - 2 lambda_0^|V|)  otherwise.
double werner_pe(double p, const BipartiteHamiltonian& ham, Bell bell_choice);

// Parallel-capacity upper bound:
//   even d:            2(lambda.lambda - l0 l0)
//   odd d, det >= 0:   2 lambda.lambda
//   odd d, det < 0:    2(lambda.lambda - 2 l0 l0)
// with det = det(-VT); exact for d = 2.
AnalyticBound pc_upper_bound(const QuantumState& state,
                             const BipartiteHamiltonian& ham);

}  // namespace qbat
