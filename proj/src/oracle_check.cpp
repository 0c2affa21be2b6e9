// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/oracle_check.hpp"

#include <random>

#include "dnpi/ci_split.hpp"
#include "dnpi/contingency.hpp"
#include "dnpi/errors.hpp"

namespace dnpi {

std::vector<std::vector<std::int64_t>> random_table(std::uint64_t seed, std::size_t trial,
                                                    const OracleCheckConfig& config) {
  // one stream per trial so a single table can be regenerated on its own
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick_k(config.k_min, config.k_max);
  std::uniform_int_distribution<std::size_t> pick_classes(2, config.max_classes);
  std::uniform_int_distribution<std::int64_t> pick_count(0, config.max_count);
  const std::size_t k = pick_k(rng);
  const std::size_t classes = pick_classes(rng);
  std::vector<std::vector<std::int64_t>> table(k, std::vector<std::int64_t>(classes, 0));
  for (auto& row : table) {
    std::int64_t total = 0;
    while (total == 0) {
      total = 0;
      for (auto& cell : row) total += (cell = pick_count(rng));
    }
  }
  return table;
}

OracleTrial run_oracle_trial(std::size_t trial, const std::vector<std::vector<std::int64_t>>& table) {
  const ContingencyView view = ContingencyView::from_table(0, table);
  const auto link = majority_class_map(view);
  const CIScore greedy = ci_multinomial(view, link);
  OracleTrial out;
  out.trial = trial;
  out.table = table;
  out.greedy_lower = greedy.interval.lower();
  out.greedy_upper = greedy.interval.upper();
  out.oracle_lower = ci_polytope_oracle(view, link, Direction::kMinimize);
  out.oracle_upper = ci_polytope_oracle(view, link, Direction::kMaximize);
  return out;
}

OracleCheckResult run_oracle_check(const OracleCheckConfig& config) {
  if (config.trials < 1) throw DomainError("oracle check needs at least one trial");
  if (config.k_min < 1 || config.k_min > config.k_max || config.k_max > 8) {
    throw DomainError("oracle check needs 1 <= k_min <= k_max <= 8");
  }
  if (config.max_count < 1) throw DomainError("oracle check needs max_count >= 1");
  if (config.max_classes < 2) throw DomainError("oracle check needs at least two classes");
  OracleCheckResult result;
  result.trials = config.trials;
  for (std::size_t t = 0; t < config.trials; ++t) {
    OracleTrial trial = run_oracle_trial(t, random_table(config.seed, t, config));
    if (!trial.agrees()) result.mismatches.push_back(std::move(trial));
  }
  return result;
}

}  // namespace dnpi
