//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_CSV_HPP_
#define PAIRSCORE_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pairscore::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line of each row, for diagnostics.
  std::vector<std::size_t> lines;
};

/// Splits one CSV record. Double-quoted fields may contain commas and "".
std::vector<std::string> split_record(std::string_view line);

/// Reads a headered CSV file; blank lines are skipped. A file with no
/// non-blank line yields an empty header. Throws FileNotFound.
Table read(const std::filesystem::path &path);

/// Parses a real in C locale form; throws InvalidArgument naming `what`.
double parse_real(std::string_view text, std::string_view what);

/// Text that round-trips the exact double ("%.17g").
std::string format_real(double value);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace pairscore::csv

#endif  // PAIRSCORE_CSV_HPP_
