#include "qts/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& f, const Eigen::VectorXd& x, int& evals) {
  ++evals;
  const double v = f(x);
  return std::isnan(v) ? kInf : v;
}

}  // namespace

OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                        const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  res.x = x0;
  if (n == 0) {
    res.fx = guarded(f, x0, res.n_evals);
    res.converged = true;
    return res;
  }
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : 200 + 200 * n;

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) {
    pts[i + 1](i) += 0.05 * (1.0 + std::abs(x0(i)));
  }
  for (int i = 0; i <= n; ++i) fv[i] = guarded(f, pts[i], res.n_evals);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fv[a] < fv[b]; });
  };

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    sort_simplex();
    const int best = order[0], worst = order[n], second = order[n - 1];

    const double f_spread = fv[worst] - fv[best];
    double x_spread = 0.0;
    for (int i = 1; i <= n; ++i) {
      x_spread = std::max(x_spread, (pts[order[i]] - pts[best]).lpNorm<Eigen::Infinity>());
    }
    if (std::isfinite(fv[best]) && std::isfinite(fv[worst]) &&
        f_spread <= opts.f_tol * (1.0 + std::abs(fv[best])) &&
        x_spread <= opts.x_tol * (1.0 + pts[best].lpNorm<Eigen::Infinity>())) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= n;

    const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double f_refl = guarded(f, refl, res.n_evals);

    if (f_refl < fv[best]) {
      const Eigen::VectorXd expd = centroid + 2.0 * (centroid - pts[worst]);
      const double f_expd = guarded(f, expd, res.n_evals);
      if (f_expd < f_refl) {
        pts[worst] = expd;
        fv[worst] = f_expd;
      } else {
        pts[worst] = refl;
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[second]) {
      pts[worst] = refl;
      fv[worst] = f_refl;
    } else {
      const bool outside = f_refl < fv[worst];
      const Eigen::VectorXd contr =
          outside ? centroid + 0.5 * (refl - centroid)
                  : centroid - 0.5 * (centroid - pts[worst]);
      const double f_contr = guarded(f, contr, res.n_evals);
      if (f_contr < std::min(f_refl, fv[worst])) {
        pts[worst] = contr;
        fv[worst] = f_contr;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          fv[i] = guarded(f, pts[i], res.n_evals);
        }
      }
    }
  }

  sort_simplex();
  res.x = pts[order[0]];
  res.fx = fv[order[0]];
  res.iterations = iter;
  return res;
}

namespace {

// Central differences, falling back to one-sided when a neighbor is
// rejected by the objective.
bool numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double fx,
                        Eigen::VectorXd& g, int& evals) {
  const int n = static_cast<int>(x.size());
  g.resize(n);
  for (int i = 0; i < n; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x(i)));
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    const double fp = guarded(f, xp, evals);
    const double fm = guarded(f, xm, evals);
    if (std::isfinite(fp) && std::isfinite(fm)) {
      g(i) = (fp - fm) / (2.0 * h);
    } else if (std::isfinite(fp)) {
      g(i) = (fp - fx) / h;
    } else if (std::isfinite(fm)) {
      g(i) = (fx - fm) / h;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

OptimResult bfgs(const Objective& f, const Eigen::VectorXd& x0,
                 const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  res.x = x0;
  res.fx = guarded(f, x0, res.n_evals);
  if (n == 0 || !std::isfinite(res.fx)) {
    res.converged = n == 0;
    return res;
  }
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : 200;

  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g;
  if (!numerical_gradient(f, res.x, res.fx, g, res.n_evals)) return res;

  for (int iter = 0; iter < max_iters; ++iter) {
    res.iterations = iter + 1;
    if (g.lpNorm<Eigen::Infinity>() <= opts.grad_tol * (1.0 + std::abs(res.fx))) {
      res.converged = true;
      return res;
    }

    Eigen::VectorXd dir = -H * g;
    if (dir.dot(g) >= 0.0) dir = -g;  // reset on loss of descent direction

    // Armijo backtracking.
    double step = 1.0;
    const double slope = g.dot(dir);
    double f_new = kInf;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = res.x + step * dir;
      f_new = guarded(f, x_new, res.n_evals);
      if (std::isfinite(f_new) && f_new <= res.fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no further progress along any tried step
      return res;
    }

    Eigen::VectorXd g_new;
    if (!numerical_gradient(f, x_new, f_new, g_new, res.n_evals)) {
      res.x = x_new;
      res.fx = f_new;
      return res;
    }

    const Eigen::VectorXd sVec = x_new - res.x;
    const Eigen::VectorXd yVec = g_new - g;
    const double sy = sVec.dot(yVec);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * sVec * yVec.transpose()) * H *
              (I - rho * yVec * sVec.transpose()) +
          rho * sVec * sVec.transpose();
    }

    const bool tiny_step =
        sVec.lpNorm<Eigen::Infinity>() <=
            opts.x_tol * (1.0 + res.x.lpNorm<Eigen::Infinity>()) &&
        std::abs(res.fx - f_new) <= opts.f_tol * (1.0 + std::abs(res.fx));
    res.x = x_new;
    res.fx = f_new;
    g = g_new;
    if (tiny_step) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace qts
