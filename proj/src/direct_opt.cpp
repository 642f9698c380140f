#include "qbat/direct_opt.hpp"

#include <cmath>
#include <string>

#include "qbat/constants.hpp"
#include "qbat/errors.hpp"
#include "qbat/gpo.hpp"
#include "qbat/simplex.hpp"

namespace qbat {

int param_count(int d) { return d == 2 ? 3 : d * d - 1; }

Mat materialize_unitary(const LocalUnitaryParams& p) {
  const int d = p.dim;
  if (d < 2) throw InputError("materialize_unitary: dim must be >= 2");
  if (p.params.size() != param_count(d))
    throw InputError("materialize_unitary: wrong parameter count");
  if (d == 2) {
    const double t = p.params(0), f = p.params(1), g = p.params(2);
    const Complex i_unit(0.0, 1.0);
    Mat u(2, 2);
    u(0, 0) = std::exp(i_unit * ((g - f) / 2.0)) * std::cos(t / 2.0);
    u(0, 1) = std::exp(-i_unit * ((g + f) / 2.0)) * std::sin(t / 2.0);
    u(1, 0) = std::exp(i_unit * ((g + f) / 2.0)) * std::sin(t / 2.0);
    u(1, 1) = -std::exp(-i_unit * ((g - f) / 2.0)) * std::cos(t / 2.0);
    return u;
  }
  GpoBasis basis = gpo_basis(d);
  Mat gen = Mat::Zero(d, d);
  for (int j = 0; j < d * d - 1; ++j) gen += p.params(j) * basis.elements[j];
  auto eig = hermitian_eig(gen);
  Mat phases = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k)
    phases(k, k) = std::exp(Complex(0.0, -eig.eigenvalues(k)));
  return eig.eigenvectors * phases * eig.eigenvectors.adjoint();
}

double extraction_value(const QuantumState& state,
                        const BipartiteHamiltonian& ham, const Mat& u_a,
                        const Mat& u_b) {
  Mat u = kron(u_a, u_b);
  Mat h = ham.total();
  return ((state.rho - u * state.rho * u.adjoint()) * h).trace().real();
}

namespace {

LocalUnitaryParams identity_params(int d) {
  LocalUnitaryParams p{d, RealVec::Zero(param_count(d))};
  if (d == 2) p.params(2) = M_PI;  // (0, 0, pi) materializes i*identity
  return p;
}

RealVec random_params(int d, Rng& rng) {
  const int n = param_count(d);
  RealVec x(n);
  if (d == 2) {
    x(0) = rng.uniform(0.0, M_PI);
    x(1) = rng.uniform(0.0, 2.0 * M_PI);
    x(2) = rng.uniform(0.0, 2.0 * M_PI);
  } else {
    for (int j = 0; j < n; ++j) x(j) = rng.uniform(0.0, M_PI);
  }
  return x;
}

// Shared restart loop: minimize `post_energy` over the concatenated parameter
// vector, starting from the identity plus `restarts` random points.
struct JointOpt {
  double best_post = 0.0;
  RealVec best_x;
};

JointOpt optimize_post_energy(const std::function<double(const RealVec&)>& f,
                              const RealVec& id_start, int dims_a, int dims_b,
                              int restarts, std::uint64_t seed,
                              const std::string& stream) {
  JointOpt out;
  SimplexResult id_res = simplex_minimize(f, id_start);
  out.best_post = id_res.value;
  out.best_x = id_res.x;
  // the exact identity point caps the post-energy at the initial energy
  if (f(id_start) < out.best_post) {
    out.best_post = f(id_start);
    out.best_x = id_start;
  }
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed, stream + "/restart/" + std::to_string(r));
    RealVec x0(id_start.size());
    int off = 0;
    if (dims_a > 0) {
      x0.head(param_count(dims_a)) = random_params(dims_a, rng);
      off = param_count(dims_a);
    }
    if (dims_b > 0) x0.tail(x0.size() - off) = random_params(dims_b, rng);
    SimplexResult res = simplex_minimize(f, x0);
    if (res.value < out.best_post) {
      out.best_post = res.value;
      out.best_x = res.x;
    }
  }
  return out;
}

}  // namespace

PeLowerResult pe_lower_bound(const QuantumState& state,
                             const BipartiteHamiltonian& ham, int restarts,
                             std::uint64_t seed) {
  check_matching_dims(state, ham);
  const int d_a = state.d_a, d_b = state.d_b;
  const int na = param_count(d_a), nb = param_count(d_b);
  Mat h = ham.total();
  const double e0 = (state.rho * h).trace().real();

  auto post_energy = [&](const RealVec& x) {
    Mat ua = materialize_unitary({d_a, x.head(na)});
    Mat ub = materialize_unitary({d_b, x.tail(nb)});
    Mat u = kron(ua, ub);
    return (u * state.rho * u.adjoint() * h).trace().real();
  };

  RealVec id_start(na + nb);
  id_start.head(na) = identity_params(d_a).params;
  id_start.tail(nb) = identity_params(d_b).params;
  JointOpt opt = optimize_post_energy(post_energy, id_start, d_a, d_b, restarts,
                                      seed, "pe");

  PeLowerResult res;
  res.value = e0 - opt.best_post;
  res.u_a = {d_a, opt.best_x.head(na)};
  res.u_b = {d_b, opt.best_x.tail(nb)};
  return res;
}

double pe_lower_bound_so3(const QuantumState& state,
                          const BipartiteHamiltonian& ham, int restarts,
                          std::uint64_t seed) {
  check_matching_dims(state, ham);
  if (state.d_a != 2 || state.d_b != 2)
    throw InputError("pe_lower_bound_so3: qubits only");
  auto bd = bloch_decompose(state, ham);
  const double e0 = bd.energy();

  auto rot_z = [](double a) {
    RealMat m = RealMat::Identity(3, 3);
    m(0, 0) = std::cos(a);
    m(0, 1) = -std::sin(a);
    m(1, 0) = std::sin(a);
    m(1, 1) = std::cos(a);
    return m;
  };
  auto rot_y = [](double a) {
    RealMat m = RealMat::Identity(3, 3);
    m(0, 0) = std::cos(a);
    m(0, 2) = std::sin(a);
    m(2, 0) = -std::sin(a);
    m(2, 2) = std::cos(a);
    return m;
  };
  auto euler = [&](double a, double b, double c) {
    return RealMat(rot_z(a) * rot_y(b) * rot_z(c));
  };

  auto post_energy = [&](const RealVec& x) {
    RealMat oa = euler(x(0), x(1), x(2));
    RealMat ob = euler(x(3), x(4), x(5));
    double e = bd.offset_a + bd.offset_b;
    e += bd.h_a.dot(oa * bd.r_a) + bd.h_b.dot(ob * bd.r_b);
    e += (bd.v_mat * (oa * bd.t_mat * ob.transpose())).trace();
    return e;
  };

  double best = post_energy(RealVec::Zero(6));
  SimplexResult id_res = simplex_minimize(post_energy, RealVec::Zero(6));
  best = std::min(best, id_res.value);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed, "pe_so3/restart/" + std::to_string(r));
    RealVec x0(6);
    for (int i = 0; i < 6; ++i) x0(i) = rng.uniform(0.0, 2.0 * M_PI);
    best = std::min(best, simplex_minimize(post_energy, x0).value);
  }
  return e0 - best;
}

LocalErgotropyResult local_ergotropy(const QuantumState& state,
                                     const BipartiteHamiltonian& ham,
                                     Side which, int restarts,
                                     std::uint64_t seed) {
  check_matching_dims(state, ham);
  const int d = which == Side::A ? state.d_a : state.d_b;
  const int n = param_count(d);
  Mat h = ham.total();
  const double e0 = (state.rho * h).trace().real();

  auto post_energy = [&](const RealVec& x) {
    Mat loc = materialize_unitary({d, x});
    Mat u = which == Side::A ? kron(loc, identity(state.d_b))
                             : kron(identity(state.d_a), loc);
    return (u * state.rho * u.adjoint() * h).trace().real();
  };

  RealVec id_start = identity_params(d).params;
  const std::string stream = which == Side::A ? "local_a" : "local_b";
  JointOpt opt =
      optimize_post_energy(post_energy, id_start, d, 0, restarts, seed, stream);

  LocalErgotropyResult res;
  res.value = e0 - opt.best_post;
  res.u = {d, opt.best_x};
  return res;
}

StrategyOutcome egoistic_total(const QuantumState& state,
                               const BipartiteHamiltonian& ham,
                               StrategyOrder order, int restarts,
                               std::uint64_t seed) {
  check_matching_dims(state, ham);
  StrategyOutcome out;
  out.order = order;
  if (order == StrategyOrder::Cooperative) {
    out.total = pe_lower_bound(state, ham, restarts, seed).value;
    out.work_first = out.total;
    out.work_second = 0.0;
    return out;
  }
  const Side first = order == StrategyOrder::AB ? Side::A : Side::B;
  const Side second = order == StrategyOrder::AB ? Side::B : Side::A;
  LocalErgotropyResult step1 = local_ergotropy(state, ham, first, restarts, seed);
  Mat loc = materialize_unitary(step1.u);
  Mat u = first == Side::A ? kron(loc, identity(state.d_b))
                           : kron(identity(state.d_a), loc);
  QuantumState moved{state.d_a, state.d_b, Mat(u * state.rho * u.adjoint())};
  LocalErgotropyResult step2 = local_ergotropy(moved, ham, second, restarts, seed);
  out.work_first = step1.value;
  out.work_second = step2.value;
  out.total = out.work_first + out.work_second;
  return out;
}

bool qubit_state_physicality(const RealVec& r_a, const RealVec& r_b,
                             const RealMat& t_mat) {
  if (r_a.size() != 3 || r_b.size() != 3 || t_mat.rows() != 3 || t_mat.cols() != 3)
    throw InputError("qubit_state_physicality: expects qubit Bloch data");
  const double t2 = (t_mat.transpose() * t_mat).trace();  // ||T||_2^2
  const double ra2 = r_a.squaredNorm(), rb2 = r_b.squaredNorm();
  const double det_t = t_mat.determinant();
  // cofactor matrix: T cof(T)^T = det(T) 1 (valid also for singular T)
  RealMat cof(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      cof(i, j) = t_mat(i1, j1) * t_mat(i2, j2) - t_mat(i1, j2) * t_mat(i2, j1);
    }
  const double cof2 = (cof.transpose() * cof).trace();

  const double c1 = 3.0 - (t2 + ra2 + rb2);
  const double c2 =
      2.0 * (r_a.dot(t_mat * r_b) - det_t) - (t2 + ra2 + rb2 - 1.0);
  const double s = t2 + ra2 + rb2 - 1.0;
  const double c3 = 8.0 * (r_a.dot((t_mat + cof) * r_b) - det_t) + s * s -
                    4.0 * (ra2 * rb2 + t2 * (ra2 + rb2) + cof2);
  const double eps = 1e-12;
  return c1 >= -eps && c2 >= -eps && c3 >= -eps;
}

}  // namespace qbat
