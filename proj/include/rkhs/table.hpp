#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkhs/inclusion_engine.hpp"

namespace rkhs {

struct TableParams {
  double gamma = 1.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double beta = 1.5;
  double tau = 1.0;
  int p = 4;

  void validate() const;
};

// Rows and columns in the order B, G, E, script-E, M, A.
std::vector<KernelSpec> table_kernels(int d, const TableParams& params);

struct TableEntry {
  InclusionVerdict verdict;
  bool cross_checked = false;
  bool agrees = true;         // numeric relation matches (or advisory / not checked)
  bool advisory = false;
  std::optional<double> numeric_sup;
  std::optional<double> lambda_rel_error;
  std::string note;
};

struct TableReport {
  int dim = 2;
  TableParams params;
  std::vector<std::string> labels;
  std::vector<std::vector<TableEntry>> cells;  // cells[row][col]: row kernel in column space

  int agreement_count() const;
};

// cross_check runs cross_validate on every cell with both densities available
// and records disagreements instead of throwing.
TableReport reproduce_table(int d, const TableParams& params = {}, bool cross_check = true,
                            const GridConfig& grid = {});

// Compact symbol for a table cell: "=", "<=", "!<=", "?".
std::string relation_symbol(const InclusionVerdict& v);

}  // namespace rkhs
