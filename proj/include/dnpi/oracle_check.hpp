// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dnpi/rational.hpp"

namespace dnpi {

struct OracleCheckConfig {
  std::size_t trials = 1000;
  std::size_t k_min = 3;
  std::size_t k_max = 7;
  std::int64_t max_count = 30;  // per cell
  std::size_t max_classes = 4;
  std::uint64_t seed = 42;
};

struct OracleTrial {
  std::size_t trial = 0;
  std::vector<std::vector<std::int64_t>> table;  // [category][class]
  Rational greedy_lower, oracle_lower;
  Rational greedy_upper, oracle_upper;
  bool agrees() const { return greedy_lower == oracle_lower && greedy_upper == oracle_upper; }
};

// Seeded random tables (every category non-empty, 2..max_classes classes),
// each scored by ci_multinomial and by the vertex enumeration.
std::vector<std::vector<std::int64_t>> random_table(std::uint64_t seed, std::size_t trial,
                                                    const OracleCheckConfig& config);
OracleTrial run_oracle_trial(std::size_t trial, const std::vector<std::vector<std::int64_t>>& table);

struct OracleCheckResult {
  std::size_t trials = 0;
  std::vector<OracleTrial> mismatches;
};

OracleCheckResult run_oracle_check(const OracleCheckConfig& config);

}  // namespace dnpi
