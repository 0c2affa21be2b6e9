// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dnpi/dataset.hpp"
#include "dnpi/tree.hpp"

namespace dnpi {

// Counts indexed [predicted][actual].
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);
  static ConfusionMatrix from_table(const std::vector<std::vector<std::int64_t>>& table);

  void add(std::size_t predicted, std::size_t actual, std::int64_t count = 1);
  std::int64_t at(std::size_t predicted, std::size_t actual) const;
  std::size_t classes() const { return cells_.size(); }
  std::int64_t total() const;
  std::int64_t correct() const;

 private:
  std::vector<std::vector<std::int64_t>> cells_;
};

// Trace over total.
double accuracy(const ConfusionMatrix& matrix);

ConfusionMatrix confusion(const DecisionTree& tree, const Dataset& data,
                          std::span<const std::size_t> rows);

// Seeded shuffle cut into k folds whose sizes differ by at most one; the
// first n % k folds are the larger ones.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

// Same fold sizes, with each class dealt round-robin over the folds.
std::vector<std::vector<std::size_t>> stratified_kfold_split(std::span<const int> labels,
                                                             std::size_t k, std::uint64_t seed);

struct CvConfig {
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::uint64_t seed = 42;
  bool stratified = false;
  std::size_t threads = 1;
};

struct FoldRecord {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  std::uint64_t seed = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double accuracy = 0.0;   // percent, held-out fold
  double in_sample = 0.0;  // percent, the fold model on its own training rows
  std::size_t tree_size = 0;
};

struct EvalReport {
  std::string dataset;
  Algorithm algorithm = Algorithm::kDnpi;
  BuildParams params;
  CvConfig config;
  std::vector<FoldRecord> folds;
  double accuracy = 0.0;
  double in_sample = 0.0;
  double tree_size = 0.0;
};

// Seed used for repeat r of a run seeded with `seed`.
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat);

EvalReport cross_validate(const Dataset& data, const BuildParams& params, const CvConfig& config);

enum class Metric { kAccuracy, kInSample, kTreeSize };
enum class TableFormat { kText, kJson };

Metric parse_metric(const std::string& name);
std::string metric_name(Metric metric);

// One row per dataset and one column per algorithm with a closing average
// row. Best cells (largest accuracy, smallest tree) are marked with '*'.
std::string report_table(const std::vector<EvalReport>& reports, Metric metric,
                         TableFormat format);

// One JSON object per line: a run header, then one record per
// (dataset, algorithm, repeat, fold).
std::string raw_log(const std::vector<EvalReport>& reports, const std::string& header_json = "{}");

}  // namespace dnpi
