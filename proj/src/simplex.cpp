#include "qbat/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qbat/errors.hpp"

namespace qbat {

namespace {

double checked(const std::function<double(const RealVec&)>& f, const RealVec& x) {
  double v = f(x);
  if (std::isnan(v)) throw SolverError("simplex_minimize: objective returned NaN");
  return v;
}

}  // namespace

SimplexResult simplex_minimize(const std::function<double(const RealVec&)>& f,
                               const RealVec& x0, const SimplexOptions& opt) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) return {x0, checked(f, x0), 0, true};

  std::vector<RealVec> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += opt.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = checked(f, pts[i]);

  std::vector<int> order(n + 1);
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  SimplexResult res;
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });

    double diameter = 0.0;
    for (int i = 1; i <= n; ++i)
      diameter = std::max(diameter, (pts[order[i]] - pts[order[0]]).norm());
    if (diameter < opt.diameter_tol) {
      res.converged = true;
      break;
    }

    const int best = order[0], worst = order[n], second_worst = order[n - 1];
    RealVec centroid = RealVec::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[order[i]];
    centroid /= n;

    RealVec xr = centroid + alpha * (centroid - pts[worst]);
    double fr = checked(f, xr);
    if (fr < vals[best]) {
      RealVec xe = centroid + gamma * (xr - centroid);
      double fe = checked(f, xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      bool outside = fr < vals[worst];
      RealVec xc = outside ? RealVec(centroid + rho * (xr - centroid))
                           : RealVec(centroid - rho * (centroid - pts[worst]));
      double fc = checked(f, xc);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          int idx = order[i];
          pts[idx] = pts[best] + sigma * (pts[idx] - pts[best]);
          vals[idx] = checked(f, pts[idx]);
        }
      }
    }
  }

  int best = static_cast<int>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  res.iterations = iter;
  return res;
}

}  // namespace qbat
