#pragma once

#include <string>

#include "epgram/types.hpp"

namespace epgram {

/// Read a time series from CSV. Lines starting with '#' and blank lines
/// are skipped. With a multi-column file, `column` selects by header name
/// (a header row is detected by non-numeric first fields). Parse errors
/// carry 1-based line numbers.
TimeSeries read_series_csv(const std::string& path,
                           const std::string& column = "");

void write_series_csv(const std::string& path, const TimeSeries& y);

/// Matrix CSV layout: leading comment lines record n and the normalized
/// flag, then a header row "alpha,f1,f2,..." with frequencies as f = nu/n,
/// then one row per level: level, ordinates. Values are written with 17
/// significant digits so a read back is bit-exact.
void write_matrix_csv(const std::string& path, const PeriodogramMatrix& pm);

PeriodogramMatrix read_matrix_csv(const std::string& path);

/// Serialize to a string (used by both file output and tests).
std::string matrix_to_csv(const PeriodogramMatrix& pm);
PeriodogramMatrix matrix_from_csv(const std::string& text);

/// Write text to `path` atomically (temp file + rename).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace epgram
