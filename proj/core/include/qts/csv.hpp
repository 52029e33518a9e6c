#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qts/series.hpp"

namespace qts {

/// Malformed input file (missing column, gap, duplicate quarter,
/// unparseable number). Messages carry the 1-based row number.
struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Loads selected columns from a quarterly CSV. The file must have a header
/// row, a date column in YYYYQn format, strictly increasing quarters with no
/// gaps, and a decimal-point numeric value in every requested cell.
Frame load_csv(const std::filesystem::path& path, const std::string& date_column,
               const std::vector<std::string>& value_columns);

/// As above, loading every non-date column.
Frame load_csv(const std::filesystem::path& path, const std::string& date_column);

/// Writes a frame as CSV with a `date` column in YYYYQn format. Values are
/// printed with enough digits to round-trip exactly through load_csv.
void write_csv(const Frame& frame, const std::filesystem::path& path);

/// Single-series convenience wrapper around write_csv.
void write_csv(const Series& series, const std::filesystem::path& path);

}  // namespace qts
