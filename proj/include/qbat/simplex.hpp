#pragma once

#include <functional>

#include "qbat/constants.hpp"
#include "qbat/linalg.hpp"

namespace qbat {

struct SimplexOptions {
  double diameter_tol = tol::kSimplexDiameter;
  int max_iter = tol::kSimplexMaxIter;
  double initial_step = 0.5;  // edge length of the starting simplex
};

struct SimplexResult {
  RealVec x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;  // false means the iteration cap was hit
};

// Nelder-Mead downhill simplex. Deterministic given x0; throws SolverError if
// the objective ever evaluates to NaN.
SimplexResult simplex_minimize(const std::function<double(const RealVec&)>& f,
                               const RealVec& x0,
                               const SimplexOptions& options = {});

}  // namespace qbat
