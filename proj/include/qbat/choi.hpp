#pragma once

#include <array>
#include <vector>

#include "qbat/direct_opt.hpp"
#include "qbat/ergotropy.hpp"
#include "qbat/rng.hpp"
#include "qbat/sdp.hpp"
#include "qbat/state.hpp"

namespace qbat {

// Choi operator of a channel from in_a ⊗ in_b to out_a ⊗ out_b, stored on
// (in_a ⊗ in_b) ⊗ (out_a ⊗ out_b): J = Σ_{μν} |μ⟩⟨ν| ⊗ Λ(|μ⟩⟨ν|), with the
// computational basis fixing the isomorphism.
struct ChoiOperator {
  int d_a = 0;
  int d_b = 0;
  Mat j;  // (d_a d_b)^2 square Hermitian
};

ChoiOperator choi_of_product_unitary(const Mat& u_a, const Mat& u_b);
// Choi of rho -> U rho U† for a unitary on the joint d_a*d_b space.
ChoiOperator choi_of_global_unitary(int d_a, int d_b, const Mat& u);
// Λ(ρ) = Tr_in[J (ρ^T ⊗ 1_out)]
Mat apply_channel(const ChoiOperator& choi, const Mat& rho_in);

// Constraint residuals; all vanish for a product-unitary Choi.
double tp_residual(const ChoiOperator& choi);  // ||Tr_out[J] - 1_in||_max
// Choi-form local unitality:
// ||Tr_{in_i}[J] - Tr_{in_i,out_i}[J] ⊗ 1_{out_i}/d_i||_max
double unitality_residual(const ChoiOperator& choi, Side which);
// Channel-form local unitality: max over sampled input states ρ on the
// other subsystem of ||Λ(ρ ⊗ 1_i) - ρ' ⊗ 1_i||_max with ρ' the reduced output.
double direct_unitality_residual(const ChoiOperator& choi, Side which,
                                 Rng& rng, int samples = 8);
double ppt_min_eigenvalue(const ChoiOperator& choi, Side which);
double min_eigenvalue(const ChoiOperator& choi);
double choi_purity(const ChoiOperator& choi);  // tr[(J / tr J)^2]

// Relaxation of the parallel-ergotropy search over product unitaries:
//   min tr[J (ρ^T ⊗ H)]  s.t.  J ⪰ 0, Tr_out[J] = 1_in,
//   local unitality on each side, J^{T_a} ⪰ 0, J^{T_b} ⪰ 0.
// The trace-preservation and unitality equalities fix GPO product-basis
// coefficients of J, so J is parametrized as J0 + Σ_k y_k B_k over the free
// basis elements and the minimization appears as the DUAL of the assembled
// problem; the three PSD cones (J and its two partial transposes) are the
// dual slack blocks.
struct PeSdpEncoding {
  SdpProblem problem;
  // free GPO product-basis indices (alpha, beta, gamma, delta) over
  // in_a, in_b, out_a, out_b; index 0 is the identity on each factor
  std::vector<std::array<int, 4>> free_indices;
  double objective_offset = 0.0;  // tr[J0 K], K = ρ^T ⊗ H
  double tr_rho_h = 0.0;
  int d_a = 0;
  int d_b = 0;
};

PeSdpEncoding build_pe_sdp_encoding(const QuantumState& state,
                                    const BipartiteHamiltonian& ham,
                                    int dps_level = 0);
SdpProblem build_pe_sdp(const QuantumState& state,
                        const BipartiteHamiltonian& ham, int dps_level = 0);

// Reduced problem dropping the two PPT cones: X = realify(J) is the primal
// variable and the trace-preservation/unitality equalities fix the GPO
// coefficients directly.  Its optimum is a valid (possibly looser) bound; when
// the optimizer happens to satisfy both partial-transpose constraints it
// coincides with the full DPS level-0 optimum.
struct PeReducedEncoding {
  SdpProblem problem;
  double tr_rho_h = 0.0;
  int d_a = 0;
  int d_b = 0;
};
PeReducedEncoding build_pe_sdp_reduced(const QuantumState& state,
                                       const BipartiteHamiltonian& ham);

// Recover J = J0 + Σ_k y_k B_k from the dual vector of a solved encoding.
ChoiOperator choi_from_dual(const PeSdpEncoding& enc, const RealVec& y);

struct PeSdpReport {
  double upper_bound = 0.0;  // certified bound from the solver objective
  double global_bound = 0.0; // global ergotropy
  double usable_bound = 0.0; // min of the two
  bool sdp_branch = false;   // true when the SDP bound is the tighter one
  ChoiOperator choi;
  double purity = 0.0;
  double objective_value = 0.0;  // tr[ρH] - tr[J (ρ^T ⊗ H)] at recovered J
  // true when the reduced (no-PPT) optimizer already satisfied both PPT
  // constraints, certifying it as the full DPS level-0 optimum
  bool ppt_shortcut = false;
  SdpSolution diagnostics;
};

PeSdpReport pe_sdp_bound(const QuantumState& state,
                         const BipartiteHamiltonian& ham,
                         const SdpOptions& options = {}, int dps_level = 0,
                         bool force_full = false);

}  // namespace qbat
