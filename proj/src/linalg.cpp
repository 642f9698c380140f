#include "qbat/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace qbat {

double hermiticity_residual(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Mat& m, double tolerance) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= tolerance;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealMat kron(const RealMat& a, const RealMat& b) {
  RealMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

void check_dims(const Mat& m, const std::vector<int>& dims, int which) {
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial op: nonpositive dimension");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw std::invalid_argument("partial op: matrix size does not match dims");
  if (which < 0 || which >= static_cast<int>(dims.size()))
    throw std::invalid_argument("partial op: subsystem index out of range");
}

}  // namespace

Mat partial_trace(const Mat& m, const std::vector<int>& dims, int which) {
  check_dims(m, dims, which);
  long d_left = 1, d_right = 1;
  for (int i = 0; i < which; ++i) d_left *= dims[i];
  for (size_t i = which + 1; i < dims.size(); ++i) d_right *= dims[i];
  const long d_sub = dims[which];
  Mat out = Mat::Zero(d_left * d_right, d_left * d_right);
  for (long il = 0; il < d_left; ++il)
    for (long ir = 0; ir < d_right; ++ir)
      for (long jl = 0; jl < d_left; ++jl)
        for (long jr = 0; jr < d_right; ++jr) {
          Complex acc(0.0, 0.0);
          for (long k = 0; k < d_sub; ++k)
            acc += m((il * d_sub + k) * d_right + ir, (jl * d_sub + k) * d_right + jr);
          out(il * d_right + ir, jl * d_right + jr) = acc;
        }
  return out;
}

Mat partial_transpose(const Mat& m, const std::vector<int>& dims, int which) {
  check_dims(m, dims, which);
  long d_left = 1, d_right = 1;
  for (int i = 0; i < which; ++i) d_left *= dims[i];
  for (size_t i = which + 1; i < dims.size(); ++i) d_right *= dims[i];
  const long d_sub = dims[which];
  Mat out(m.rows(), m.cols());
  for (long il = 0; il < d_left; ++il)
    for (long jl = 0; jl < d_left; ++jl)
      for (long s = 0; s < d_sub; ++s)
        for (long t = 0; t < d_sub; ++t)
          for (long ir = 0; ir < d_right; ++ir)
            for (long jr = 0; jr < d_right; ++jr)
              out((il * d_sub + t) * d_right + ir, (jl * d_sub + s) * d_right + jr) =
                  m((il * d_sub + s) * d_right + ir, (jl * d_sub + t) * d_right + jr);
  return out;
}

HermitianEig hermitian_eig(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: non-square");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealSvd svd(const RealMat& m) {
  Eigen::JacobiSVD<RealMat> s(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {s.singularValues(), s.matrixU(), RealMat(s.matrixV().transpose())};
}

Mat identity(int d) { return Mat::Identity(d, d); }

}  // namespace qbat
