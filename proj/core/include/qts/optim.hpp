#pragma once

#include <Eigen/Dense>
#include <functional>

namespace qts {

/// Objective for minimization. May return +infinity to reject a point.
using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
  int max_iters = 0;     // 0 = dimension-scaled default
  double f_tol = 1e-10;  // relative spread of simplex / step improvement
  double x_tol = 1e-8;
  double grad_tol = 1e-6;  // BFGS only
};

struct OptimResult {
  Eigen::VectorXd x;
  double fx = 0;
  int iterations = 0;
  int n_evals = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead simplex minimization.
OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                        const OptimOptions& opts = {});

/// Quasi-Newton BFGS with central-difference numerical gradients and an
/// Armijo backtracking line search. Infinite objective values reject a
/// trial step.
OptimResult bfgs(const Objective& f, const Eigen::VectorXd& x0,
                 const OptimOptions& opts = {});

}  // namespace qts
