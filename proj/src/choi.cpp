#include "qbat/choi.hpp"

#include <cmath>
#include <sstream>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"
#include "qbat/gpo.hpp"
#include "qbat/linalg.hpp"

namespace qbat {

namespace {

struct Triplet {
  int row;
  int col;
  Complex val;
};

void require_unitary(const Mat& u, const char* name) {
  if (u.rows() != u.cols()) throw InputError(std::string(name) + ": non-square");
  Mat g = u.adjoint() * u;
  if ((g - identity(static_cast<int>(u.rows()))).cwiseAbs().maxCoeff() >
      tol::kUnitary)
    throw InputError(std::string(name) + ": input not unitary");
}

void require_choi_dims(const ChoiOperator& c) {
  const int n = c.d_a * c.d_b * c.d_a * c.d_b;
  if (c.d_a < 1 || c.d_b < 1 || c.j.rows() != n || c.j.cols() != n)
    throw InputError("choi: dimension mismatch");
}

// dims of the four tensor factors in storage order in_a, in_b, out_a, out_b
std::vector<int> factor_dims(const ChoiOperator& c) {
  return {c.d_a, c.d_b, c.d_a, c.d_b};
}

// GPO basis of one factor with the identity prepended, as sparse triplets,
// together with the transpose sign of each element (GPO elements are either
// symmetric or antisymmetric real/imaginary matrices).
struct FactorBasis {
  std::vector<std::vector<Triplet>> ops;
  std::vector<int> tsign;
  int d = 0;
};

FactorBasis factor_basis(int d) {
  FactorBasis fb;
  fb.d = d;
  std::vector<Triplet> id;
  for (int i = 0; i < d; ++i) id.push_back({i, i, Complex(1.0, 0.0)});
  fb.ops.push_back(id);
  fb.tsign.push_back(1);
  GpoBasis basis = gpo_basis(d);
  const int n_sym = d * (d - 1) / 2;
  for (size_t e = 0; e < basis.elements.size(); ++e) {
    std::vector<Triplet> t;
    const Mat& m = basis.elements[e];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (std::abs(m(i, j)) > 0.0) t.push_back({i, j, m(i, j)});
    fb.ops.push_back(std::move(t));
    const bool antisym = static_cast<int>(e) >= n_sym &&
                         static_cast<int>(e) < 2 * n_sym;
    fb.tsign.push_back(antisym ? -1 : 1);
  }
  return fb;
}

std::vector<Triplet> kron4(const std::vector<Triplet>& a, int da,
                           const std::vector<Triplet>& b, int db,
                           const std::vector<Triplet>& c, int dc,
                           const std::vector<Triplet>& d, int dd) {
  std::vector<Triplet> out;
  out.reserve(a.size() * b.size() * c.size() * d.size());
  for (const Triplet& ta : a)
    for (const Triplet& tb : b)
      for (const Triplet& tc : c)
        for (const Triplet& td : d) {
          int r = ((ta.row * db + tb.row) * dc + tc.row) * dd + td.row;
          int cl = ((ta.col * db + tb.col) * dc + tc.col) * dd + td.col;
          out.push_back({r, cl, ta.val * tb.val * tc.val * td.val});
        }
  return out;
}

// realified sparse form with an overall sign, entries in both triangles
SparseSym realify_sparse(const std::vector<Triplet>& t, int n, double sign) {
  SparseSym s;
  s.n = 2 * n;
  for (const Triplet& e : t) {
    double re = sign * e.val.real();
    double im = sign * e.val.imag();
    if (re != 0.0) {
      s.add(e.row, e.col, re);
      s.add(e.row + n, e.col + n, re);
    }
    if (im != 0.0) {
      s.add(e.row, e.col + n, -im);
      s.add(e.row + n, e.col, im);
    }
  }
  return s;
}

// whether the GPO product coefficient (alpha, beta, gamma, delta) is fixed by
// trace preservation (gamma = delta = 0) or by local unitality on a
// (alpha = 0, gamma != 0) or on b (beta = 0, delta != 0)
bool coefficient_fixed(int alpha, int beta, int gamma, int delta) {
  if (gamma == 0 && delta == 0) return true;
  if (alpha == 0 && gamma != 0) return true;
  if (beta == 0 && delta != 0) return true;
  return false;
}

long long count_free_coefficients(int d_a, int d_b) {
  const long long na = static_cast<long long>(d_a) * d_a;
  const long long nb = static_cast<long long>(d_b) * d_b;
  // complement of the fixed set, counted by inclusion-exclusion
  long long total = na * nb * na * nb;
  long long tp = na * nb;                       // gamma = delta = 0
  long long ua = nb * (na - 1) * nb;            // alpha = 0, gamma != 0
  long long ub = na * na * (nb - 1);            // beta = 0, delta != 0
  long long uab = (na - 1) * (nb - 1);          // overlap of ua and ub
  return total - tp - ua - ub + uab;
}

}  // namespace

ChoiOperator choi_of_global_unitary(int d_a, int d_b, const Mat& u) {
  require_unitary(u, "choi_of_global_unitary");
  const int dim = d_a * d_b;
  if (u.rows() != dim) throw InputError("choi_of_global_unitary: size mismatch");
  ChoiOperator c;
  c.d_a = d_a;
  c.d_b = d_b;
  c.j = Mat::Zero(dim * dim, dim * dim);
  // J = sum_{mu,nu} |mu><nu| ⊗ U|mu><nu|U†
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu)
      for (int r = 0; r < dim; ++r)
        for (int s = 0; s < dim; ++s)
          c.j(mu * dim + r, nu * dim + s) += u(r, mu) * std::conj(u(s, nu));
  return c;
}

ChoiOperator choi_of_product_unitary(const Mat& u_a, const Mat& u_b) {
  require_unitary(u_a, "choi_of_product_unitary (A)");
  require_unitary(u_b, "choi_of_product_unitary (B)");
  return choi_of_global_unitary(static_cast<int>(u_a.rows()),
                                static_cast<int>(u_b.rows()), kron(u_a, u_b));
}

Mat apply_channel(const ChoiOperator& choi, const Mat& rho_in) {
  require_choi_dims(choi);
  const int dim = choi.d_a * choi.d_b;
  if (rho_in.rows() != dim || rho_in.cols() != dim)
    throw InputError("apply_channel: input size mismatch");
  Mat weighted = choi.j * kron(Mat(rho_in.transpose()), identity(dim));
  return partial_trace(weighted, {dim, dim}, 0);
}

double tp_residual(const ChoiOperator& choi) {
  require_choi_dims(choi);
  const int dim = choi.d_a * choi.d_b;
  Mat tr_out = partial_trace(choi.j, {dim, dim}, 1);
  return (tr_out - identity(dim)).cwiseAbs().maxCoeff();
}

double unitality_residual(const ChoiOperator& choi, Side which) {
  require_choi_dims(choi);
  std::vector<int> dims = factor_dims(choi);
  const int in_idx = which == Side::A ? 0 : 1;
  const int d_i = which == Side::A ? choi.d_a : choi.d_b;
  Mat lhs = partial_trace(choi.j, dims, in_idx);  // on in_other, out_a, out_b
  std::vector<int> rdims = dims;
  rdims.erase(rdims.begin() + in_idx);
  const int out_idx = which == Side::A ? 1 : 2;  // out_i within the reduced dims
  Mat core = partial_trace(lhs, rdims, out_idx);  // on in_other, out_other
  // re-insert 1_{out_i}/d_i in the out_i slot
  Mat rhs;
  if (which == Side::A) {
    // reduced order: in_b, out_a, out_b ; core on in_b, out_b
    rhs = Mat::Zero(lhs.rows(), lhs.cols());
    const int db = choi.d_b;
    for (int ib = 0; ib < db; ++ib)
      for (int jb = 0; jb < db; ++jb)
        for (int oa = 0; oa < choi.d_a; ++oa)
          for (int ob = 0; ob < db; ++ob)
            for (int pb = 0; pb < db; ++pb)
              rhs((ib * choi.d_a + oa) * db + ob,
                  (jb * choi.d_a + oa) * db + pb) +=
                  core(ib * db + ob, jb * db + pb) / double(d_i);
  } else {
    // reduced order: in_a, out_a, out_b ; core on in_a, out_a
    rhs = Mat::Zero(lhs.rows(), lhs.cols());
    const int da = choi.d_a;
    for (int ia = 0; ia < da; ++ia)
      for (int ja = 0; ja < da; ++ja)
        for (int oa = 0; oa < da; ++oa)
          for (int pa = 0; pa < da; ++pa)
            for (int ob = 0; ob < choi.d_b; ++ob)
              rhs((ia * da + oa) * choi.d_b + ob,
                  (ja * da + pa) * choi.d_b + ob) +=
                  core(ia * da + oa, ja * da + pa) / double(d_i);
  }
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double direct_unitality_residual(const ChoiOperator& choi, Side which,
                                 Rng& rng, int samples) {
  require_choi_dims(choi);
  const int d_i = which == Side::A ? choi.d_a : choi.d_b;
  const int d_o = which == Side::A ? choi.d_b : choi.d_a;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // random pure input on the other subsystem
    Vec psi(d_o);
    for (int i = 0; i < d_o; ++i)
      psi(i) = Complex(rng.gaussian(), rng.gaussian());
    psi /= psi.norm();
    Mat rho_other = psi * psi.adjoint();
    Mat rho_in = which == Side::A ? kron(identity(d_i), rho_other)
                                  : kron(rho_other, identity(d_i));
    Mat sigma = apply_channel(choi, rho_in);
    // sigma should equal reduced ⊗ 1_i / d_i on the out_i slot
    const int out_slot = which == Side::A ? 0 : 1;
    Mat red = partial_trace(sigma, {choi.d_a, choi.d_b}, out_slot);
    Mat model = which == Side::A ? kron(identity(d_i), red) / double(d_i)
                                 : kron(red, identity(d_i)) / double(d_i);
    worst = std::max(worst, (sigma - model).cwiseAbs().maxCoeff());
  }
  return worst;
}

double ppt_min_eigenvalue(const ChoiOperator& choi, Side which) {
  require_choi_dims(choi);
  std::vector<int> dims = factor_dims(choi);
  Mat t = choi.j;
  if (which == Side::A) {
    t = partial_transpose(t, dims, 0);
    t = partial_transpose(t, dims, 2);
  } else {
    t = partial_transpose(t, dims, 1);
    t = partial_transpose(t, dims, 3);
  }
  return hermitian_eig(t).eigenvalues(0);
}

double min_eigenvalue(const ChoiOperator& choi) {
  require_choi_dims(choi);
  return hermitian_eig(choi.j).eigenvalues(0);
}

double choi_purity(const ChoiOperator& choi) {
  require_choi_dims(choi);
  double tr = choi.j.trace().real();
  if (tr <= 0.0) throw InputError("choi_purity: non-positive trace");
  Mat n = choi.j / tr;
  return (n * n).trace().real();
}

namespace {

// Shared assembly for the coefficient-parametrized problem.  With
// drop_mirror_cone the J^{T_b} cone is omitted: J^{T_b} = (J^{T_a})^T, so its
// positivity is implied and the bound is unchanged.
PeSdpEncoding build_pe_sdp_encoding_impl(const QuantumState& state,
                                         const BipartiteHamiltonian& ham,
                                         int dps_level, bool drop_mirror_cone);

}  // namespace

PeSdpEncoding build_pe_sdp_encoding(const QuantumState& state,
                                    const BipartiteHamiltonian& ham,
                                    int dps_level) {
  return build_pe_sdp_encoding_impl(state, ham, dps_level, false);
}

namespace {

PeSdpEncoding build_pe_sdp_encoding_impl(const QuantumState& state,
                                         const BipartiteHamiltonian& ham,
                                         int dps_level, bool drop_mirror_cone) {
  check_matching_dims(state, ham);
  if (dps_level != 0)
    throw InputError("build_pe_sdp: DPS levels k >= 1 are not implemented");
  const int d_a = state.d_a, d_b = state.d_b;
  if (d_a > 4 || d_b > 4) {
    long long m = count_free_coefficients(d_a, d_b);
    double gib = 2.0 * 8.0 * double(m) * double(m) / (1024.0 * 1024.0 * 1024.0);
    std::ostringstream os;
    os << "build_pe_sdp: local dimensions above 4 are refused; (" << d_a << ","
       << d_b << ") needs " << m << " coupling equations and about " << gib
       << " GiB for the interior-point normal matrix";
    throw InputError(os.str());
  }
  const int dim = d_a * d_b;
  const int n = dim * dim;  // complex Choi size

  FactorBasis fa = factor_basis(d_a);
  FactorBasis fb = factor_basis(d_b);

  Mat k_mat = kron(Mat(state.rho.transpose()), ham.total());

  PeSdpEncoding enc;
  enc.d_a = d_a;
  enc.d_b = d_b;
  enc.tr_rho_h = energy(state, ham);
  enc.objective_offset = k_mat.trace().real() / double(dim);  // tr[K]/dim

  SdpProblem& p = enc.problem;
  p.realified_blocks = true;
  RealMat c = RealMat::Identity(2 * n, 2 * n) / double(dim);
  if (drop_mirror_cone) {
    p.block_sizes = {2 * n, 2 * n};
    p.objective = {c, c};
  } else {
    p.block_sizes = {2 * n, 2 * n, 2 * n};
    p.objective = {c, c, c};
  }

  const int na = d_a * d_a, nb = d_b * d_b;
  std::vector<double> rhs_vals;
  for (int alpha = 0; alpha < na; ++alpha)
    for (int beta = 0; beta < nb; ++beta)
      for (int gamma = 0; gamma < na; ++gamma)
        for (int delta = 0; delta < nb; ++delta) {
          if (coefficient_fixed(alpha, beta, gamma, delta)) continue;
          std::vector<Triplet> t =
              kron4(fa.ops[alpha], d_a, fb.ops[beta], d_b, fa.ops[gamma], d_a,
                    fb.ops[delta], d_b);
          const double sa = fa.tsign[alpha] * fa.tsign[gamma];
          const double sb = fb.tsign[beta] * fb.tsign[delta];
          std::vector<SparseSym> row = {realify_sparse(t, n, -1.0),
                                        realify_sparse(t, n, -sa)};
          if (!drop_mirror_cone) row.push_back(realify_sparse(t, n, -sb));
          p.constraints.push_back(std::move(row));
          Complex dot = 0.0;
          for (const Triplet& e : t) dot += e.val * k_mat(e.col, e.row);
          rhs_vals.push_back(-2.0 * dot.real());
          enc.free_indices.push_back({alpha, beta, gamma, delta});
        }
  p.rhs = Eigen::Map<RealVec>(rhs_vals.data(),
                              static_cast<Eigen::Index>(rhs_vals.size()));
  return enc;
}

}  // namespace

SdpProblem build_pe_sdp(const QuantumState& state,
                        const BipartiteHamiltonian& ham, int dps_level) {
  return build_pe_sdp_encoding(state, ham, dps_level).problem;
}

PeReducedEncoding build_pe_sdp_reduced(const QuantumState& state,
                                       const BipartiteHamiltonian& ham) {
  check_matching_dims(state, ham);
  const int d_a = state.d_a, d_b = state.d_b;
  if (d_a > 4 || d_b > 4)
    throw InputError("build_pe_sdp_reduced: local dimensions above 4 refused");
  const int dim = d_a * d_b;
  const int n = dim * dim;

  FactorBasis fa = factor_basis(d_a);
  FactorBasis fb = factor_basis(d_b);
  Mat k_mat = kron(Mat(state.rho.transpose()), ham.total());

  PeReducedEncoding enc;
  enc.d_a = d_a;
  enc.d_b = d_b;
  enc.tr_rho_h = energy(state, ham);

  SdpProblem& p = enc.problem;
  p.realified_blocks = true;
  p.block_sizes = {2 * n};
  p.objective = {realify(k_mat) / 2.0};  // <C, realify(J)> = tr[K J]

  const int na = d_a * d_a, nb = d_b * d_b;
  std::vector<double> rhs_vals;
  for (int alpha = 0; alpha < na; ++alpha)
    for (int beta = 0; beta < nb; ++beta)
      for (int gamma = 0; gamma < na; ++gamma)
        for (int delta = 0; delta < nb; ++delta) {
          if (!coefficient_fixed(alpha, beta, gamma, delta)) continue;
          std::vector<Triplet> t =
              kron4(fa.ops[alpha], d_a, fb.ops[beta], d_b, fa.ops[gamma], d_a,
                    fb.ops[delta], d_b);
          p.constraints.push_back({realify_sparse(t, n, 1.0)});
          // fixed coefficients take their value on J0 = 1/dim:
          // <realify(B), realify(J0)> = 2 tr[B]/dim, nonzero only for B = 1
          const bool is_identity =
              alpha == 0 && beta == 0 && gamma == 0 && delta == 0;
          rhs_vals.push_back(is_identity ? 2.0 * dim : 0.0);
        }
  p.rhs = Eigen::Map<RealVec>(rhs_vals.data(),
                              static_cast<Eigen::Index>(rhs_vals.size()));
  return enc;
}

ChoiOperator choi_from_dual(const PeSdpEncoding& enc, const RealVec& y) {
  const SdpProblem& p = enc.problem;
  if (y.size() != p.num_constraints())
    throw InputError("choi_from_dual: dual size mismatch");
  // first dual slack block: Z_1 = C_1 - sum_k y_k A_{k,1} = realify(J)
  RealMat z = p.objective[0];
  for (int k = 0; k < p.num_constraints(); ++k) {
    const SparseSym& a = p.constraints[k][0];
    const double yk = y(k);
    for (size_t i = 0; i < a.val.size(); ++i)
      z(a.row[i], a.col[i]) -= yk * a.val[i];
  }
  ChoiOperator c;
  c.d_a = enc.d_a;
  c.d_b = enc.d_b;
  c.j = unrealify(z);
  return c;
}

namespace {

void require_optimal(const SdpSolution& sol, const char* phase) {
  if (sol.status == SdpStatus::Optimal) return;
  std::ostringstream os;
  os << "pe_sdp_bound: " << phase << " solve did not reach optimality (status "
     << static_cast<int>(sol.status) << ", iterations " << sol.iterations
     << ", gap " << sol.gap << ", primal residual " << sol.primal_residual
     << ")";
  throw SolverError(os.str());
}

void finish_report(PeSdpReport& rep, const QuantumState& state,
                   const BipartiteHamiltonian& ham) {
  Mat k_mat = kron(Mat(state.rho.transpose()), ham.total());
  rep.objective_value =
      energy(state, ham) - (rep.choi.j * k_mat).trace().real();
  rep.purity = choi_purity(rep.choi);
  rep.global_bound = global_ergotropy(state, ham).value;
  rep.sdp_branch = rep.upper_bound <= rep.global_bound;
  rep.usable_bound = std::min(rep.upper_bound, rep.global_bound);
}

}  // namespace

PeSdpReport pe_sdp_bound(const QuantumState& state,
                         const BipartiteHamiltonian& ham,
                         const SdpOptions& options, int dps_level,
                         bool force_full) {
  if (dps_level != 0)
    throw InputError("pe_sdp_bound: DPS levels k >= 1 are not implemented");
  if (!force_full) {
    // Cheap pass without the PPT cones.  When its optimizer happens to be PPT
    // on both subsystem pairs it is feasible for the full problem, and since
    // the feasible set only shrank the same point stays optimal there.
    PeReducedEncoding red = build_pe_sdp_reduced(state, ham);
    SdpSolution sol = sdp_solve(red.problem, options);
    if (sol.status == SdpStatus::Optimal) {
      ChoiOperator choi;
      choi.d_a = red.d_a;
      choi.d_b = red.d_b;
      choi.j = unrealify(sol.primal[0]);
      if (ppt_min_eigenvalue(choi, Side::A) >= -1e-8 &&
          ppt_min_eigenvalue(choi, Side::B) >= -1e-8) {
        PeSdpReport rep;
        rep.diagnostics = sol;
        rep.ppt_shortcut = true;
        // the dual objective certifies min tr[J K] >= dobj
        rep.upper_bound = red.tr_rho_h - sol.dual_objective;
        rep.choi = choi;
        finish_report(rep, state, ham);
        return rep;
      }
    }
  }
  PeSdpEncoding enc =
      build_pe_sdp_encoding_impl(state, ham, dps_level, !force_full);
  SdpSolution sol = sdp_solve(enc.problem, options);
  require_optimal(sol, "full");
  PeSdpReport rep;
  rep.diagnostics = sol;
  // The assembled primal objective certifies a lower bound on
  // min tr[J K]: min >= tr[J0 K] - pobj / 2 by weak duality.
  rep.upper_bound =
      enc.tr_rho_h - enc.objective_offset + sol.primal_objective / 2.0;
  rep.choi = choi_from_dual(enc, sol.dual);
  finish_report(rep, state, ham);
  return rep;
}

}  // namespace qbat
