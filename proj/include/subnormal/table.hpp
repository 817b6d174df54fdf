#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subnormal/bigint.hpp"
#include "subnormal/error.hpp"
#include "subnormal/search.hpp"

namespace subnormal {

// Exact per-length counts n -> count for n = 0..nmax(). When a node budget
// cut the computation short, `truncated` is set and the table holds only the
// rows that were computed completely.
struct CountTable {
  std::vector<BigInt> spherical;
  std::vector<BigInt> cumulative;
  int requested_nmax = 0;
  bool truncated = false;

  int nmax() const { return static_cast<int>(cumulative.size()) - 1; }
  const BigInt& operator[](int n) const { return cumulative.at(static_cast<std::size_t>(n)); }

  static CountTable from_spherical(std::vector<BigInt> spherical, int requested_nmax);
};

// Plain textual table shared by the CSV and JSON writers. All cells are
// already rendered (exact integers in decimal, rationals as p/q).
struct TextTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool truncated = false;
  std::string truncation_note;
};

void write_csv(std::ostream& out, const TextTable& table);
void write_json(std::ostream& out, const TextTable& table);

// Per-depth node counts, the Result type of counting search policies.
using DepthCounts = std::vector<std::uint64_t>;

inline void merge_depth_counts(DepthCounts& into, const DepthCounts& from) {
  if (into.size() < from.size()) into.resize(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
}

// Runs a counting search to nmax. If the budget is exhausted the search is
// repeated with increasing depth limits, and the table keeps every depth
// whose search completed within budget; the result is then marked truncated.
template <typename Factory>
CountTable counted_table(int rank, int nmax, Factory&& make_policy, const SearchOptions& options) {
  auto to_table = [&](const DepthCounts& counts, int depth) {
    std::vector<BigInt> spherical(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth && n < static_cast<int>(counts.size()); ++n) {
      spherical[n] = BigInt(static_cast<unsigned long>(counts[n]));
    }
    return CountTable::from_spherical(std::move(spherical), nmax);
  };
  try {
    return to_table(run_search(rank, nmax, make_policy, options), nmax);
  } catch (const BudgetExceeded&) {
  }
  CountTable best = CountTable::from_spherical({}, nmax);
  for (int depth = 0; depth < nmax; ++depth) {
    try {
      best = to_table(run_search(rank, depth, make_policy, options), depth);
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  best.truncated = true;
  return best;
}

}  // namespace subnormal
