#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "pathgroup/harness/config.hpp"

namespace pathgroup::harness {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless
};

struct Provenance {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
};

/// Version string baked in at configure time (git describe).
std::string version_string();

Provenance provenance_for(const ExperimentConfig& config);

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<Cell> row);
  /// Index of the named column; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Header "name[unit]" then one line per row; doubles use %.17g so equal
/// results print identically. Every row ends with the provenance fields.
void write_csv(std::ostream& out, const Table& table, const Provenance& provenance);

/// One JSON object per row, keyed by column name, with a "units" map and the
/// provenance fields.
void write_jsonl(std::ostream& out, const Table& table, const Provenance& provenance);

void write_table(std::ostream& out, const Table& table, const Provenance& provenance,
                 OutputFormat format);

}  // namespace pathgroup::harness
