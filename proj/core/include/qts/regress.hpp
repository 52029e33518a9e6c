#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "qts/intercept.hpp"
#include "qts/series.hpp"

namespace qts {

/// Estimation failed (optimizer breakdown, infeasible design, ...).
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Design matrix is rank deficient; message names the collinear columns.
struct RankError : EstimationError {
  using EstimationError::EstimationError;
};

/// One regressor: a named series entered at a non-negative lag.
struct Term {
  std::string series;
  int lag = 0;

  std::string label() const {
    return lag == 0 ? series : series + "_lag" + std::to_string(lag);
  }
  bool operator==(const Term&) const = default;
};

struct DesignSpec {
  std::string target;
  std::vector<Term> terms;
  bool intercept = true;
};

/// Rows of the regression problem: one per date where the target and every
/// lagged term are observable.
struct Design {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<QuarterDate> dates;
  std::vector<std::string> col_names;  // "const" first when intercept is set
};

Design build_design(const Frame& frame, const DesignSpec& spec);

/// Pure y-on-X least squares with classical inference.
struct OlsSummary {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_values;
  Eigen::VectorXd p_values;  // two-sided Student-t, n-k dof
  double sigma2 = 0;         // MLE variance RSS/n
  double loglik = 0;
  double aic = 0;  // -2 loglik + 2 (k+1)
  double r2 = 0;   // centered
  Eigen::VectorXd residuals;
  int n_obs = 0;
};

/// Coefficients via Householder QR. Throws RankError on rank-deficient X,
/// naming the collinear columns (when names are supplied).
OlsSummary ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                   const std::vector<std::string>& col_names = {});

/// Indices of a maximal linearly independent column subset, in ascending
/// order. Used to prune collinear auxiliary designs.
std::vector<int> independent_columns(const Eigen::MatrixXd& X);

struct RegressionFit {
  DesignSpec spec;
  std::vector<std::string> term_names;
  OlsSummary stats;
  Series residuals;
  QuarterDate window_start;
  QuarterDate window_end;
};

/// build_design + ols_fit, with residuals carried as a dated series.
RegressionFit fit_design(const Frame& frame, const DesignSpec& spec);

/// Exhaustive subset search over candidate terms, every subset fitted on the
/// common window feasible for the full candidate set so AIC values are
/// comparable. Ranked by ascending AIC; near-ties (<1e-9) go to the model
/// with fewer terms.
std::vector<RegressionFit> best_subset_regression(
    const Frame& frame, const std::string& target,
    const std::vector<Term>& candidate_terms,
    InterceptPolicy intercept = InterceptPolicy::Search);

}  // namespace qts
