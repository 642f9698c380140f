#include "qbat/analytic.hpp"

#include <cmath>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"
#include "qbat/gpo.hpp"

namespace qbat {

SignedSpectrum signed_spectrum(const RealMat& m) {
  if (m.rows() != m.cols()) throw InputError("signed_spectrum: non-square");
  auto s = svd(m);  // descending
  SignedSpectrum out;
  const int n = static_cast<int>(s.singular_values.size());
  out.singular_values.resize(n);
  for (int i = 0; i < n; ++i)
    out.singular_values(i) = s.singular_values(n - 1 - i);
  double det = m.determinant();
  // scale-relative zero threshold: 1e-12 * (largest singular value)^n
  double scale = s.singular_values.size() > 0 ? s.singular_values(0) : 0.0;
  double thresh = tol::kDetSignZero * std::pow(std::max(scale, 1e-300), n);
  out.det_sign = det > thresh ? 1 : (det < -thresh ? -1 : 0);
  return out;
}

Hypothesis hypothesis_check(const QuantumState& state,
                            const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  Mat ma = state.reduced_a() - identity(state.d_a) / double(state.d_a);
  Mat mb = state.reduced_b() - identity(state.d_b) / double(state.d_b);
  bool lmm = ma.cwiseAbs().maxCoeff() < tol::kLmm &&
             mb.cwiseAbs().maxCoeff() < tol::kLmm;
  // null local terms up to an identity shift (the shift never affects work)
  Mat ha = ham.h_local_a -
           (ham.h_local_a.trace() / double(ham.d_a)) * identity(ham.d_a);
  Mat hb = ham.h_local_b -
           (ham.h_local_b.trace() / double(ham.d_b)) * identity(ham.d_b);
  bool null_local = ha.cwiseAbs().maxCoeff() < tol::kNullLocal &&
                    hb.cwiseAbs().maxCoeff() < tol::kNullLocal;
  if (lmm && null_local) return Hypothesis::Both;
  if (lmm) return Hypothesis::LMM;
  if (null_local) return Hypothesis::NullLocal;
  return Hypothesis::Neither;
}

namespace {

struct VtData {
  double tr_rho_v = 0.0;
  SignedSpectrum sv;  // of v_mat, ascending
  SignedSpectrum st;  // of t_mat, ascending
  int det_sign_mvt = 0;  // sign of det(-VT)
  int n = 0;
};

VtData vt_data(const QuantumState& state, const BipartiteHamiltonian& ham) {
  if (state.d_a != state.d_b)
    throw InputError("analytic bound requires d_a = d_b");
  if (hypothesis_check(state, ham) == Hypothesis::Neither)
    throw InputError(
        "analytic bound hypothesis violated: state is not locally maximally "
        "mixed and the Hamiltonian has local terms");
  auto bd = bloch_decompose(state, ham);
  VtData out;
  out.tr_rho_v = (bd.v_mat * bd.t_mat).trace();
  out.sv = signed_spectrum(bd.v_mat);
  out.st = signed_spectrum(RealMat(bd.t_mat));
  out.det_sign_mvt = signed_spectrum(RealMat(-(bd.v_mat * bd.t_mat))).det_sign;
  out.n = static_cast<int>(out.sv.singular_values.size());
  return out;
}

}  // namespace

AnalyticBound pe_upper_bound_lmm(const QuantumState& state,
                                 const BipartiteHamiltonian& ham) {
  VtData d = vt_data(state, ham);
  double dot = d.sv.singular_values.dot(d.st.singular_values);
  AnalyticBound out;
  out.value = d.tr_rho_v + dot;
  if (d.det_sign_mvt < 0)
    out.value -= 2.0 * d.sv.singular_values(0) * d.st.singular_values(0);
  out.exact = (state.d_a == 2 && state.d_b == 2);
  return out;
}

double werner_pe(double p, const BipartiteHamiltonian& ham, Bell bell_choice) {
  if (ham.d_a != 2 || ham.d_b != 2) throw InputError("werner_pe: qubits only");
  if (p < 0.0 || p > 1.0) throw InputError("werner_pe: p outside [0,1]");
  QuantumState w = werner_state(p, bell_choice);
  auto bd = bloch_decompose(w, ham);
  auto sv = signed_spectrum(bd.v_mat);
  Vec psi = bell_vector(bell_choice);
  double psi_v = (psi.adjoint() * ham.v_int * psi)(0, 0).real();
  double value = psi_v + sv.singular_values.sum();
  if (sv.det_sign < 0) value -= 2.0 * sv.singular_values(0);
  return p * value;
}

AnalyticBound pc_upper_bound(const QuantumState& state,
                             const BipartiteHamiltonian& ham) {
  VtData d = vt_data(state, ham);
  double dot = d.sv.singular_values.dot(d.st.singular_values);
  double l0 = d.sv.singular_values(0) * d.st.singular_values(0);
  AnalyticBound out;
  if (state.d_a % 2 == 0) {
    out.value = 2.0 * (dot - l0);
  } else if (d.det_sign_mvt >= 0) {
    out.value = 2.0 * dot;
  } else {
    out.value = 2.0 * (dot - 2.0 * l0);
  }
  out.exact = (state.d_a == 2 && state.d_b == 2);
  return out;
}

}  // namespace qbat
