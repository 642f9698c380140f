#include "qbat/gpo.hpp"

#include <cmath>

#include "qbat/errors.hpp"

namespace qbat {

GpoBasis gpo_basis(int d) {
  if (d < 2) throw InputError("gpo_basis: dimension must be >= 2");
  GpoBasis basis;
  basis.dim = d;
  basis.elements.reserve(d * d - 1);
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Mat s = Mat::Zero(d, d);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      basis.elements.push_back(s);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Mat a = Mat::Zero(d, d);
      a(j, k) = -i_unit;
      a(k, j) = i_unit;
      basis.elements.push_back(a);
    }
  for (int l = 1; l < d; ++l) {
    Mat m = Mat::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int mdiag = 0; mdiag < l; ++mdiag) m(mdiag, mdiag) = norm;
    m(l, l) = -norm * l;
    basis.elements.push_back(m);
  }
  return basis;
}

double BlochDecomposition::energy() const {
  return offset_a + offset_b + h_a.dot(r_a) + h_b.dot(r_b) +
         (v_mat * t_mat).trace();
}

BlochDecomposition bloch_decompose(const QuantumState& state,
                                   const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  const int d_a = state.d_a, d_b = state.d_b;
  const int na = d_a * d_a - 1, nb = d_b * d_b - 1;
  GpoBasis ba = gpo_basis(d_a), bb = gpo_basis(d_b);

  BlochDecomposition out;
  out.d_a = d_a;
  out.d_b = d_b;
  out.r_a.resize(na);
  out.r_b.resize(nb);
  out.h_a.resize(na);
  out.h_b.resize(nb);
  out.t_mat.resize(na, nb);
  out.v_mat.resize(nb, na);

  // Reduced states carry the single-side traces needed for r_a, r_b.
  Mat rho_a = state.reduced_a();
  Mat rho_b = state.reduced_b();
  for (int i = 0; i < na; ++i) {
    out.r_a(i) = (ba.elements[i] * rho_a).trace().real();
    out.h_a(i) = 0.5 * (ba.elements[i] * ham.h_local_a).trace().real();
  }
  for (int j = 0; j < nb; ++j) {
    out.r_b(j) = (bb.elements[j] * rho_b).trace().real();
    out.h_b(j) = 0.5 * (bb.elements[j] * ham.h_local_b).trace().real();
  }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      Mat op = kron(ba.elements[i], bb.elements[j]);
      out.t_mat(i, j) = (op * state.rho).trace().real();
      out.v_mat(j, i) = 0.25 * (op * ham.v_int).trace().real();
    }
  out.offset_a = ham.h_local_a.trace().real() / d_a;
  out.offset_b = ham.h_local_b.trace().real() / d_b;
  return out;
}

Mat state_matrix_from_bloch(int d_a, int d_b, const RealVec& r_a,
                            const RealVec& r_b, const RealMat& t_mat) {
  GpoBasis ba = gpo_basis(d_a), bb = gpo_basis(d_b);
  const int na = d_a * d_a - 1, nb = d_b * d_b - 1;
  Mat rho = Mat::Identity(d_a * d_b, d_a * d_b) / double(d_a * d_b);
  for (int i = 0; i < na; ++i)
    rho += 0.5 * r_a(i) / d_b * kron(ba.elements[i], identity(d_b));
  for (int j = 0; j < nb; ++j)
    rho += 0.5 * r_b(j) / d_a * kron(identity(d_a), bb.elements[j]);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (t_mat(i, j) != 0.0)
        rho += 0.25 * t_mat(i, j) * kron(ba.elements[i], bb.elements[j]);
  return rho;
}

BipartiteHamiltonian ham_from_bloch(int d_a, int d_b, const RealVec& h_a,
                                    const RealVec& h_b, const RealMat& v_mat) {
  GpoBasis ba = gpo_basis(d_a), bb = gpo_basis(d_b);
  const int na = d_a * d_a - 1, nb = d_b * d_b - 1;
  BipartiteHamiltonian ham;
  ham.d_a = d_a;
  ham.d_b = d_b;
  ham.h_local_a = Mat::Zero(d_a, d_a);
  ham.h_local_b = Mat::Zero(d_b, d_b);
  for (int i = 0; i < na; ++i) ham.h_local_a += h_a(i) * ba.elements[i];
  for (int j = 0; j < nb; ++j) ham.h_local_b += h_b(j) * bb.elements[j];
  ham.v_int = Mat::Zero(d_a * d_b, d_a * d_b);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (v_mat(j, i) != 0.0)
        ham.v_int += v_mat(j, i) * kron(ba.elements[i], bb.elements[j]);
  return ham;
}

double energy(const QuantumState& state, const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  return (ham.total() * state.rho).trace().real();
}

}  // namespace qbat
