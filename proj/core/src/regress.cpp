#include "qts/regress.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qts/parallel.hpp"
#include "qts/stats.hpp"

namespace qts {

Design build_design(const Frame& frame, const DesignSpec& spec) {
  const Series& target = frame.column(spec.target);
  int max_lag = 0;
  for (const auto& t : spec.terms) {
    if (t.lag < 0) throw std::invalid_argument("negative lag for " + t.series);
    if (!frame.has(t.series)) {
      throw std::out_of_range("design references absent series '" + t.series +
                              "'");
    }
    max_lag = std::max(max_lag, t.lag);
  }
  // Frame columns share the span, so the usable window is simply the frame
  // span minus the deepest lag.
  const auto n_total = static_cast<int>(frame.length());
  const int n = n_total - max_lag;
  if (n <= 0) {
    throw std::out_of_range("design for '" + spec.target +
                            "' has no usable window: max lag " +
                            std::to_string(max_lag) + " on " +
                            std::to_string(n_total) + " observations");
  }

  const int k = static_cast<int>(spec.terms.size()) + (spec.intercept ? 1 : 0);
  Design d;
  d.y.resize(n);
  d.X.resize(n, k);
  d.dates.reserve(n);
  int col = 0;
  if (spec.intercept) {
    d.X.col(col++).setOnes();
    d.col_names.emplace_back("const");
  }
  for (const auto& t : spec.terms) {
    const Series& s = frame.column(t.series);
    for (int i = 0; i < n; ++i) d.X(i, col) = s[i + max_lag - t.lag];
    d.col_names.push_back(t.label());
    ++col;
  }
  for (int i = 0; i < n; ++i) {
    d.y(i) = target[i + max_lag];
    d.dates.push_back(frame.start().plus(max_lag + i));
  }
  return d;
}

std::vector<int> independent_columns(const Eigen::MatrixXd& X) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const auto rank = qr.rank();
  const auto& perm = qr.colsPermutation().indices();
  std::vector<int> keep(perm.data(), perm.data() + rank);
  std::sort(keep.begin(), keep.end());
  return keep;
}

OlsSummary ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                   const std::vector<std::string>& col_names) {
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  if (n <= k) {
    throw EstimationError("ols: n_obs=" + std::to_string(n) +
                          " must exceed " + std::to_string(k) + " columns");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivqr(X);
  if (pivqr.rank() < k) {
    const auto& perm = pivqr.colsPermutation().indices();
    std::string names;
    for (int j = static_cast<int>(pivqr.rank()); j < k; ++j) {
      int idx = perm(j);
      names += names.empty() ? "" : ", ";
      names += idx < static_cast<int>(col_names.size())
                   ? col_names[idx]
                   : "column " + std::to_string(idx);
    }
    throw RankError("ols: design is rank deficient; collinear: " + names);
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  OlsSummary s;
  s.n_obs = n;
  s.coefficients = qr.solve(y);
  s.residuals = y - X * s.coefficients;

  const double rss = s.residuals.squaredNorm();
  s.sigma2 = rss / n;
  // Gaussian log-likelihood at the MLE variance.
  s.loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * s.sigma2) + 1.0);
  s.aic = -2.0 * s.loglik + 2.0 * (k + 1);

  const double tss = (y.array() - y.mean()).matrix().squaredNorm();
  s.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;

  // Classical covariance s^2 (X'X)^-1 from the thin-QR factor.
  const double s2 = rss / (n - k);
  Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd cov = s2 * (Rinv * Rinv.transpose());

  s.std_errors.resize(k);
  s.t_values.resize(k);
  s.p_values.resize(k);
  for (int j = 0; j < k; ++j) {
    s.std_errors(j) = std::sqrt(cov(j, j));
    s.t_values(j) = s.coefficients(j) / s.std_errors(j);
    s.p_values(j) = 2.0 * students_t_sf(std::abs(s.t_values(j)),
                                        static_cast<double>(n - k));
  }
  return s;
}

RegressionFit fit_design(const Frame& frame, const DesignSpec& spec) {
  Design d = build_design(frame, spec);
  OlsSummary stats = ols_fit(d.y, d.X, d.col_names);
  std::vector<double> resid(stats.residuals.data(),
                            stats.residuals.data() + stats.residuals.size());
  Series residuals(spec.target + "_resid", d.dates.front(), std::move(resid));
  return RegressionFit{spec, d.col_names, std::move(stats), std::move(residuals),
                       d.dates.front(), d.dates.back()};
}

namespace {

bool aic_order(const RegressionFit& a, const RegressionFit& b) {
  if (std::abs(a.stats.aic - b.stats.aic) >= 1e-9) {
    return a.stats.aic < b.stats.aic;
  }
  if (a.spec.terms.size() != b.spec.terms.size()) {
    return a.spec.terms.size() < b.spec.terms.size();
  }
  // Deterministic order on exact ties.
  auto key = [](const RegressionFit& f) {
    std::string k = f.spec.intercept ? "i" : "-";
    for (const auto& t : f.spec.terms) k += "|" + t.label();
    return k;
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<RegressionFit> best_subset_regression(
    const Frame& frame, const std::string& target,
    const std::vector<Term>& candidate_terms, InterceptPolicy intercept) {
  if (candidate_terms.empty()) {
    throw std::invalid_argument("best_subset_regression: empty candidate set");
  }
  if (candidate_terms.size() > 20) {
    throw std::invalid_argument(
        "best_subset_regression: candidate set capped at 20 terms, got " +
        std::to_string(candidate_terms.size()));
  }
  for (std::size_t i = 0; i < candidate_terms.size(); ++i) {
    for (std::size_t j = i + 1; j < candidate_terms.size(); ++j) {
      if (candidate_terms[i] == candidate_terms[j]) {
        throw std::invalid_argument("duplicate candidate term " +
                                    candidate_terms[i].label());
      }
    }
  }

  // Common estimation window: build the full-menu design once; subsets pick
  // columns so every fit shares the same rows.
  DesignSpec full{target, candidate_terms, /*intercept=*/false};
  Design base = build_design(frame, full);

  const auto m = candidate_terms.size();
  const std::size_t n_subsets = (std::size_t{1} << m) - 1;
  std::vector<bool> with_intercept;
  switch (intercept) {
    case InterceptPolicy::Always: with_intercept = {true}; break;
    case InterceptPolicy::Never: with_intercept = {false}; break;
    case InterceptPolicy::Search: with_intercept = {true, false}; break;
  }

  const std::size_t n_cand = n_subsets * with_intercept.size();
  std::vector<std::optional<RegressionFit>> slots(n_cand);

  parallel_for(n_cand, [&](std::size_t idx) {
    const std::size_t mask = idx % n_subsets + 1;
    const bool icept = with_intercept[idx / n_subsets];
    std::vector<Term> terms;
    std::vector<int> cols;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask & (std::size_t{1} << b)) {
        terms.push_back(candidate_terms[b]);
        cols.push_back(static_cast<int>(b));
      }
    }
    const int k = static_cast<int>(cols.size()) + (icept ? 1 : 0);
    Eigen::MatrixXd X(base.y.size(), k);
    std::vector<std::string> names;
    int c = 0;
    if (icept) {
      X.col(c++).setOnes();
      names.emplace_back("const");
    }
    for (int col : cols) {
      X.col(c++) = base.X.col(col);
      names.push_back(candidate_terms[col].label());
    }
    try {
      OlsSummary stats = ols_fit(base.y, X, names);
      std::vector<double> resid(stats.residuals.data(),
                                stats.residuals.data() + stats.residuals.size());
      Series residuals(target + "_resid", base.dates.front(), std::move(resid));
      slots[idx] = RegressionFit{DesignSpec{target, std::move(terms), icept},
                                 std::move(names), std::move(stats),
                                 std::move(residuals), base.dates.front(),
                                 base.dates.back()};
    } catch (const EstimationError&) {
      // Rank-deficient or infeasible subset: leave the slot empty.
    }
  });

  std::vector<RegressionFit> fits;
  fits.reserve(n_cand);
  for (auto& s : slots) {
    if (s) fits.push_back(std::move(*s));
  }
  if (fits.empty()) {
    throw EstimationError("best_subset_regression: every candidate failed");
  }
  std::stable_sort(fits.begin(), fits.end(), aic_order);
  return fits;
}

}  // namespace qts
