#pragma once

#include <string>
#include <vector>

#include "erlang_spectral/precision.hpp"

namespace erlang_spectral::tables {

struct PublishedCell {
  std::string column;
  std::string text;  // as printed, so the last-digit unit is recoverable
};

struct PublishedRow {
  double eta{};
  std::vector<PublishedCell> cells;
};

struct PublishedTable {
  int id{};
  std::string title;
  std::vector<PublishedRow> rows;
};

const std::vector<int>& table_ids();
const PublishedTable& published_table(int id);

double parse_published(const std::string& text);
// One unit in the last printed digit of a published value.
double last_digit_unit(const std::string& text);

struct CellResult {
  int table{};
  double eta{};
  std::string column;
  double computed{};
  double published{};
  double abs_diff{};
  double tol{};
  bool pass{};
};

// Recomputes every cell; tolerance is five units of the last published digit.
std::vector<CellResult> reproduce_table(int id, Precision precision = Precision::Auto);

}  // namespace erlang_spectral::tables
