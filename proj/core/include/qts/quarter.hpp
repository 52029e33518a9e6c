#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qts {

/// Calendar quarter, e.g. 2009Q1. Ordering is lexicographic on
/// (year, quarter); the successor of (y, 4) is (y+1, 1).
class QuarterDate {
 public:
  QuarterDate() = default;
  QuarterDate(int year, int quarter);

  int year() const { return year_; }
  int quarter() const { return quarter_; }

  /// Date `n` quarters later (or earlier for negative `n`).
  QuarterDate plus(int n) const;

  /// Signed number of quarters from `other` to `*this`.
  int minus(const QuarterDate& other) const;

  /// "2009Q1"
  std::string str() const;

  /// Parses "YYYYQn" (e.g. "2009Q1"). Throws std::invalid_argument on
  /// malformed input.
  static QuarterDate parse(std::string_view text);

  auto operator<=>(const QuarterDate&) const = default;

 private:
  // Internally a flat quarter index keeps the arithmetic trivial.
  int year_ = 2000;
  int quarter_ = 1;
};

inline QuarterDate operator+(const QuarterDate& d, int n) { return d.plus(n); }
inline QuarterDate operator-(const QuarterDate& d, int n) { return d.plus(-n); }
inline int operator-(const QuarterDate& a, const QuarterDate& b) {
  return a.minus(b);
}

}  // namespace qts
