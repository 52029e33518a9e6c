#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace qts {

double mean(std::span<const double> x);
/// Population variance (divide by n).
double variance(std::span<const double> x);
/// Sample variance (divide by n-1); requires n >= 2.
double sample_variance(std::span<const double> x);
/// Moment-based skewness m3 / m2^(3/2).
double skewness(std::span<const double> x);
/// Moment-based kurtosis m4 / m2^2 (3 for the normal).
double kurtosis(std::span<const double> x);

/// Standard normal CDF and its inverse.
double normal_cdf(double x);
double normal_quantile(double p);

/// Upper-tail probabilities.
double chi_squared_sf(double x, double dof);
double students_t_sf(double x, double dof);

/// Deterministic standard-normal generator (Marsaglia polar on
/// mt19937_64), stable across platforms for a given seed.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()();

  /// Uniform on [0, 1).
  double uniform();

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qts
