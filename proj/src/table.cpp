#include "subnormal/table.hpp"

#include <ostream>

#include "json.hpp"

namespace subnormal {

CountTable CountTable::from_spherical(std::vector<BigInt> spherical, int requested_nmax) {
  CountTable t;
  t.requested_nmax = requested_nmax;
  t.cumulative.reserve(spherical.size());
  BigInt running = 0;
  for (const auto& s : spherical) {
    running += s;
    t.cumulative.push_back(running);
  }
  t.spherical = std::move(spherical);
  return t;
}

void write_csv(std::ostream& out, const TextTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (table.truncated) out << "# truncated: " << table.truncation_note << '\n';
}

void write_json(std::ostream& out, const TextTable& table) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      obj[table.columns[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["truncated"] = table.truncated;
  if (table.truncated) doc["truncation_note"] = table.truncation_note;
  out << doc.dump(2) << '\n';
}

}  // namespace subnormal
