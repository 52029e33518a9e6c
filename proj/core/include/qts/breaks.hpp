#pragma once

#include <utility>
#include <vector>

#include "qts/series.hpp"

namespace qts {

struct BreakResult {
  /// First date of each new regime, strictly increasing.
  std::vector<QuarterDate> break_dates;
  std::vector<double> segment_means;
  double total_rss = 0;
  int n_breaks_considered = 0;
  /// (m, BIC) for every feasible break count, m = 0..max_breaks.
  std::vector<std::pair<int, double>> criterion_scores;
  int min_segment = 0;  // enforced minimum segment length
  double trim = 0;
};

/// Multiple mean-shift break detection. For each m <= max_breaks the
/// globally RSS-minimal partition into m+1 segments (each at least
/// ceil(trim*n) long) is found by dynamic programming; the reported m
/// minimizes BIC = n ln(RSS/n) + 2(m+1) ln(n). Exact RSS ties prefer the
/// earliest partition and the smaller break count.
BreakResult detect_breaks(const Series& s, int max_breaks = 3,
                          double trim = 0.15);

}  // namespace qts
