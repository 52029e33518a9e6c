#pragma once

#include <span>
#include <string>
#include <vector>

#include "qts/quarter.hpp"

namespace qts {

/// Quarterly-indexed sequence of finite reals. Immutable after
/// construction; index i corresponds to start() + i.
class Series {
 public:
  /// Throws std::length_error on empty values and std::domain_error on
  /// non-finite entries.
  Series(std::string name, QuarterDate start, std::vector<double> values);

  const std::string& name() const { return name_; }
  QuarterDate start() const { return start_; }
  QuarterDate end() const { return start_.plus(static_cast<int>(size()) - 1); }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  QuarterDate date_at(std::size_t i) const {
    return start_.plus(static_cast<int>(i));
  }
  bool contains(QuarterDate d) const {
    return d >= start_ && d <= end();
  }
  /// Value at a date; throws std::out_of_range when outside the span.
  double at(QuarterDate d) const;

  Series renamed(std::string name) const;

 private:
  std::string name_;
  QuarterDate start_;
  std::vector<double> values_;
};

/// periods-apart relative change: out[i] = s[i+periods]/s[i] - 1.
/// Requires strictly positive levels; start advances by `periods`.
Series pct_change(const Series& s, int periods = 1);

/// Shifts the series forward k quarters so the value dated t is s[t-k].
Series lag(const Series& s, int k);

/// k-fold first difference: out[i] = s[i+1] - s[i] applied k times.
Series diff(const Series& s, int k = 1);

/// Elementwise natural log; requires strictly positive values.
Series log_transform(const Series& s);

/// Cumulative sum anchored at the first value (inverse of diff up to the
/// dropped initial condition).
Series cumulate(const Series& s);

/// Subseries over the intersection of [from, to] with the span.
/// Throws std::out_of_range when the intersection is empty.
Series slice(const Series& s, QuarterDate from, QuarterDate to);

struct SummaryStats {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};

/// Quartiles use linear interpolation between order statistics
/// (h = (n-1)p, the "type-7" rule).
SummaryStats summary_stats(const Series& s);

/// Set of equal-length columns over a common start date.
class Frame {
 public:
  /// Intersects the spans of all columns; throws std::out_of_range
  /// (listing the spans) when the overlap is empty.
  static Frame align(std::vector<Series> columns);

  QuarterDate start() const { return start_; }
  QuarterDate end() const { return start_.plus(static_cast<int>(length_) - 1); }
  std::size_t length() const { return length_; }
  std::size_t n_columns() const { return columns_.size(); }

  bool has(const std::string& name) const;
  const Series& column(const std::string& name) const;
  const std::vector<Series>& columns() const { return columns_; }
  std::vector<std::string> names() const;

  Frame sliced(QuarterDate from, QuarterDate to) const;

 private:
  Frame() = default;
  QuarterDate start_;
  std::size_t length_ = 0;
  std::vector<Series> columns_;
};

}  // namespace qts
