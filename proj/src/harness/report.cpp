#include "pathgroup/harness/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#ifndef PATHGROUP_VERSION
#define PATHGROUP_VERSION "0.1.0"
#endif

namespace pathgroup::harness {

namespace {

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.17g", v);
          return buf;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string version_string() { return PATHGROUP_VERSION; }

Provenance provenance_for(const ExperimentConfig& config) {
  return {config.experiment, config.hash(), config.seed, version_string()};
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("Table::add_row: expected " + std::to_string(columns.size()) +
                                " cells, got " + std::to_string(row.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::out_of_range("Table: no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw std::invalid_argument("Table: column '" + name + "' is not numeric");
}

void write_csv(std::ostream& out, const Table& table, const Provenance& provenance) {
  for (const auto& c : table.columns) {
    out << c.name;
    if (!c.unit.empty()) out << '[' << c.unit << ']';
    out << ',';
  }
  out << "experiment,config_hash,seed,version\n";
  for (const auto& row : table.rows) {
    for (const auto& cell : row) out << format_cell(cell) << ',';
    out << provenance.experiment << ',' << hex(provenance.config_hash) << ','
        << provenance.seed << ',' << provenance.version << '\n';
  }
}

void write_jsonl(std::ostream& out, const Table& table, const Provenance& provenance) {
  nlohmann::json units = nlohmann::json::object();
  for (const auto& c : table.columns) {
    if (!c.unit.empty()) units[c.name] = c.unit;
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i].name] = v; }, row[i]);
    }
    obj["units"] = units;
    obj["experiment"] = provenance.experiment;
    obj["config_hash"] = hex(provenance.config_hash);
    obj["seed"] = provenance.seed;
    obj["version"] = provenance.version;
    out << obj.dump() << '\n';
  }
}

void write_table(std::ostream& out, const Table& table, const Provenance& provenance,
                 OutputFormat format) {
  if (format == OutputFormat::Csv) {
    write_csv(out, table, provenance);
  } else {
    write_jsonl(out, table, provenance);
  }
}

}  // namespace pathgroup::harness
