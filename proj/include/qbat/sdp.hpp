#pragma once

#include <string>
#include <vector>

#include "qbat/linalg.hpp"

namespace qbat {

// Sparse real symmetric matrix; every stored entry is applied as written, so
// off-diagonal entries must be stored twice, once per triangle.
struct SparseSym {
  int n = 0;
  std::vector<int> row;
  std::vector<int> col;
  std::vector<double> val;

  void add(int r, int c, double v) {
    row.push_back(r);
    col.push_back(c);
    val.push_back(v);
  }
  RealMat dense() const {
    RealMat m = RealMat::Zero(n, n);
    for (size_t i = 0; i < val.size(); ++i) m(row[i], col[i]) += val[i];
    return m;
  }
};

// min sum_b <C_b, X_b>  s.t.  sum_b <A_{k,b}, X_b> = rhs_k,  X_b >= 0.
struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<RealMat> objective;                   // C_b, dense symmetric
  std::vector<std::vector<SparseSym>> constraints;  // [k][b]
  RealVec rhs;
  // set when every block is the [[Re,-Im],[Im,Re]] embedding of Hermitian
  // data; the solver then assembles the normal matrix in complex arithmetic
  // (half the work), verifying the claimed structure as it prepares
  bool realified_blocks = false;

  int num_constraints() const { return static_cast<int>(rhs.size()); }
  void validate() const;  // symmetry of all coefficient data
  // Documented sparse-triplet text dump for external cross-checking.
  std::string dump_triplets() const;
};

enum class SdpStatus { Optimal, MaxIterations, Diverged, NumericalFailure };

struct SdpOptions {
  double gap_tol = 1e-8;    // relative duality gap
  double feas_tol = 1e-8;   // relative primal/dual residuals
  int max_iter = 200;
  double step_fraction = 0.98;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<RealMat> primal;  // X_b
  RealVec dual;                 // y
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;                 // relative duality gap
  double primal_residual = 0.0;     // ||b - A(X)||_inf
  double dual_residual = 0.0;       // max_b ||C_b - Z_b - A^T y|_b||_max
  double min_complementarity = 0.0; // min over iterates of <X, Z> (weak duality)
  int iterations = 0;
};

SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& options = {});

// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix;
// eigenvalues are doubled in multiplicity and positivity is preserved.
RealMat realify(const Mat& hermitian);
// Inverse map: recover the Hermitian matrix from its embedding (averaging the
// two copies, so it is exact on matrices of the embedded form).
Mat unrealify(const RealMat& embedded);

}  // namespace qbat
