#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Dense complex linear algebra and the quantum-information kernels everything
// else is built on: Kronecker products, partial trace/transpose over an
// arbitrary tensor factorization, Hermitian eigensolves and real SVD.
namespace qbat {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;      // dense complex, the carrier for all operators
using RealMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

bool is_hermitian(const Mat& m, double tolerance);
double hermiticity_residual(const Mat& m);

Mat kron(const Mat& a, const Mat& b);
RealMat kron(const RealMat& a, const RealMat& b);

// Partial trace / partial transpose over subsystem `which` (0-based) of a
// square operator on a Hilbert space factored as dims[0] x dims[1] x ... .
Mat partial_trace(const Mat& m, const std::vector<int>& dims, int which);
Mat partial_transpose(const Mat& m, const std::vector<int>& dims, int which);

struct HermitianEig {
  RealVec eigenvalues;  // ascending
  Mat eigenvectors;     // columns, matching order
};
HermitianEig hermitian_eig(const Mat& m);

struct RealSvd {
  RealVec singular_values;  // descending
  RealMat u;
  RealMat v_t;
};
RealSvd svd(const RealMat& m);

Mat identity(int d);

}  // namespace qbat
