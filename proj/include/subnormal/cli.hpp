#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subnormal/search.hpp"

namespace subnormal {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitBudget = 3;

// Settings shared by every subcommand.
struct RunConfig {
  int rank = 2;
  int level = 1;
  int nmax = 10;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::size_t memo_bytes = 64u << 20;
  int workers = 1;
  std::uint64_t seed = 1;
  std::string out;              // empty: standard output
  std::string format = "csv";   // csv or json
};

// Runs the command line (args excludes the program name) and returns the
// exit code: 0 ok, 1 a consistency check reported failures, 2 invalid input,
// 3 node budget exhausted (partial tables are still written, marked).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subnormal
