// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dnpi/errors.hpp"

namespace dnpi {

using json = nlohmann::ordered_json;

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : cells_(classes, std::vector<std::int64_t>(classes, 0)) {}

ConfusionMatrix ConfusionMatrix::from_table(const std::vector<std::vector<std::int64_t>>& table) {
  ConfusionMatrix m(table.size());
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (table[p].size() != table.size()) throw DomainError("confusion matrix must be square");
    for (std::size_t a = 0; a < table.size(); ++a) m.add(p, a, table[p][a]);
  }
  return m;
}

void ConfusionMatrix::add(std::size_t predicted, std::size_t actual, std::int64_t count) {
  if (predicted >= cells_.size() || actual >= cells_.size()) {
    throw DomainError("class index outside the confusion matrix");
  }
  if (count < 0) throw DomainError("negative confusion count");
  cells_[predicted][actual] += count;
}

std::int64_t ConfusionMatrix::at(std::size_t predicted, std::size_t actual) const {
  return cells_.at(predicted).at(actual);
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto& row : cells_) sum += std::accumulate(row.begin(), row.end(), std::int64_t{0});
  return sum;
}

std::int64_t ConfusionMatrix::correct() const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) sum += cells_[i][i];
  return sum;
}

double accuracy(const ConfusionMatrix& matrix) {
  const std::int64_t total = matrix.total();
  if (total < 1) throw DomainError("accuracy of an empty confusion matrix");
  return static_cast<double>(matrix.correct()) / static_cast<double>(total);
}

ConfusionMatrix confusion(const DecisionTree& tree, const Dataset& data,
                          std::span<const std::size_t> rows) {
  ConfusionMatrix m(data.target.arity());
  for (std::size_t r : rows) {
    if (data.labels[r] == kMissing) throw DomainError("cannot score unlabelled rows");
    m.add(classify(tree, data, r), static_cast<std::size_t>(data.labels[r]));
  }
  return m;
}

namespace {

std::vector<std::vector<std::size_t>> deal(const std::vector<std::size_t>& order, std::size_t k,
                                           bool round_robin) {
  const std::size_t n = order.size();
  std::vector<std::vector<std::size_t>> folds(k);
  if (round_robin) {
    for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
    return folds;
  }
  std::size_t next = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                    order.begin() + static_cast<std::ptrdiff_t>(next + size));
    next += size;
  }
  return folds;
}

}  // namespace

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw DomainError("k-fold split needs k >= 2");
  if (n < k) {
    throw DomainError("cannot split " + std::to_string(n) + " instances into " + std::to_string(k) +
                      " folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return deal(order, k, false);
}

std::vector<std::vector<std::size_t>> stratified_kfold_split(std::span<const int> labels,
                                                             std::size_t k, std::uint64_t seed) {
  if (k < 2) throw DomainError("k-fold split needs k >= 2");
  if (labels.size() < k) throw DomainError("fewer instances than folds");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    order.insert(order.end(), members.begin(), members.end());
  }
  return deal(order, k, true);
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(repeat) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

EvalReport cross_validate(const Dataset& data, const BuildParams& params, const CvConfig& config) {
  if (config.repeats < 1) throw DomainError("cross-validation needs at least one repeat");
  if (data.rows() < config.folds) {
    throw DomainError("cannot run " + std::to_string(config.folds) + "-fold CV on " +
                      std::to_string(data.rows()) + " instances");
  }
  EvalReport report;
  report.dataset = data.name;
  report.algorithm = params.algorithm;
  report.params = params;
  report.config = config;

  struct Unit {
    std::size_t repeat;
    std::size_t fold;
    std::uint64_t seed;
    std::vector<std::size_t> test;
    std::vector<std::size_t> train;
  };
  std::vector<Unit> units;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = repeat_seed(config.seed, r);
    const auto folds = config.stratified ? stratified_kfold_split(data.labels, config.folds, seed)
                                         : kfold_split(data.rows(), config.folds, seed);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      Unit unit{r, f, seed, folds[f], {}};
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) unit.train.insert(unit.train.end(), folds[g].begin(), folds[g].end());
      }
      std::sort(unit.train.begin(), unit.train.end());
      if (unit.train.empty()) throw InternalError("empty training fold");
      units.push_back(std::move(unit));
    }
  }

  report.folds.resize(units.size());
  auto run_unit = [&](std::size_t i) {
    const Unit& unit = units[i];
    const DecisionTree tree = build_tree(data, unit.train, params);
    FoldRecord& record = report.folds[i];
    record.repeat = unit.repeat;
    record.fold = unit.fold;
    record.seed = unit.seed;
    record.train_size = unit.train.size();
    record.test_size = unit.test.size();
    record.accuracy = 100.0 * accuracy(confusion(tree, data, unit.test));
    record.in_sample = 100.0 * accuracy(confusion(tree, data, unit.train));
    record.tree_size = tree_size(tree);
  };

  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, units.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < units.size(); ++i) run_unit(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < units.size(); i = next++) run_unit(i);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const FoldRecord& record : report.folds) {
    report.accuracy += record.accuracy;
    report.in_sample += record.in_sample;
    report.tree_size += static_cast<double>(record.tree_size);
  }
  const auto count = static_cast<double>(report.folds.size());
  report.accuracy /= count;
  report.in_sample /= count;
  report.tree_size /= count;
  return report;
}

Metric parse_metric(const std::string& name) {
  if (name == "accuracy") return Metric::kAccuracy;
  if (name == "in_sample") return Metric::kInSample;
  if (name == "tree_size") return Metric::kTreeSize;
  throw DomainError("unknown metric '" + name + "'");
}

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::kAccuracy:
      return "accuracy";
    case Metric::kInSample:
      return "in_sample";
    case Metric::kTreeSize:
      return "tree_size";
  }
  return "accuracy";
}

namespace {

double metric_value(const EvalReport& report, Metric metric) {
  switch (metric) {
    case Metric::kAccuracy:
      return report.accuracy;
    case Metric::kInSample:
      return report.in_sample;
    case Metric::kTreeSize:
      return report.tree_size;
  }
  return report.accuracy;
}

std::string fixed2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string report_table(const std::vector<EvalReport>& reports, Metric metric,
                         TableFormat format) {
  if (reports.empty()) throw DomainError("no reports to tabulate");
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const EvalReport& r : reports) {
    const std::string algo = algorithm_name(r.algorithm);
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
    if (std::find(algorithms.begin(), algorithms.end(), algo) == algorithms.end()) {
      algorithms.push_back(algo);
    }
    if (!cells.emplace(std::make_pair(r.dataset, algo), metric_value(r, metric)).second) {
      throw DomainError("duplicate report for " + r.dataset + " / " + algo);
    }
  }
  std::string missing;
  for (const auto& d : datasets) {
    for (const auto& a : algorithms) {
      if (!cells.contains({d, a})) missing += " " + d + "/" + a;
    }
  }
  if (!missing.empty()) throw DomainError("reports do not cover every dataset/algorithm:" + missing);

  const bool smaller_is_better = metric == Metric::kTreeSize;
  auto best_of = [&](const std::vector<double>& row) {
    return smaller_is_better ? *std::min_element(row.begin(), row.end())
                             : *std::max_element(row.begin(), row.end());
  };

  std::vector<std::vector<double>> rows;
  for (const auto& d : datasets) {
    std::vector<double> row;
    for (const auto& a : algorithms) row.push_back(cells.at({d, a}));
    rows.push_back(row);
  }
  std::vector<double> averages(algorithms.size(), 0.0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) averages[j] += row[j];
  }
  for (double& v : averages) v /= static_cast<double>(rows.size());

  // Compare at the printed precision so visually equal scores tie.
  auto is_best = [&](const std::vector<double>& row, std::size_t j) {
    return fixed2(row[j]) == fixed2(best_of(row));
  };

  if (format == TableFormat::kJson) {
    json doc;
    doc["metric"] = metric_name(metric);
    doc["algorithms"] = algorithms;
    json body = json::array();
    auto render = [&](const std::string& label, const std::vector<double>& row) {
      json values = json::object();
      json best = json::array();
      for (std::size_t j = 0; j < row.size(); ++j) {
        values[algorithms[j]] = row[j];
        if (is_best(row, j)) best.push_back(algorithms[j]);
      }
      return json{{"dataset", label}, {"values", values}, {"best", best}};
    };
    for (std::size_t i = 0; i < rows.size(); ++i) body.push_back(render(datasets[i], rows[i]));
    doc["rows"] = body;
    doc["average"] = render("Average", averages);
    return doc.dump(2) + "\n";
  }

  std::size_t first_width = std::string("Average").size();
  for (const auto& d : datasets) first_width = std::max(first_width, d.size());
  std::vector<std::size_t> widths;
  for (const auto& a : algorithms) widths.push_back(std::max<std::size_t>(a.size(), 8));

  std::ostringstream out;
  out << pad("Dataset", first_width, true);
  for (std::size_t j = 0; j < algorithms.size(); ++j) out << "  " << pad(algorithms[j], widths[j], false);
  out << '\n';
  std::size_t rule = first_width;
  for (std::size_t w : widths) rule += w + 2;
  out << std::string(rule, '-') << '\n';
  auto emit = [&](const std::string& label, const std::vector<double>& row) {
    out << pad(label, first_width, true);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << "  " << pad(fixed2(row[j]) + (is_best(row, j) ? "*" : " "), widths[j], false);
    }
    out << '\n';
  };
  for (std::size_t i = 0; i < rows.size(); ++i) emit(datasets[i], rows[i]);
  out << std::string(rule, '-') << '\n';
  emit("Average", averages);
  return out.str();
}

std::string raw_log(const std::vector<EvalReport>& reports, const std::string& header_json) {
  std::ostringstream out;
  json header;
  header["record"] = "run";
  try {
    header["config"] = json::parse(header_json);
  } catch (const json::exception& e) {
    throw DomainError(std::string("raw log header is not valid JSON: ") + e.what());
  }
  out << header.dump() << '\n';
  for (const EvalReport& r : reports) {
    for (const FoldRecord& f : r.folds) {
      json line;
      line["record"] = "fold";
      line["dataset"] = r.dataset;
      line["algorithm"] = algorithm_name(r.algorithm);
      line["min_split"] = r.params.min_split;
      line["stratified"] = r.config.stratified;
      line["repeat"] = f.repeat;
      line["fold"] = f.fold;
      line["seed"] = f.seed;
      line["train_size"] = f.train_size;
      line["test_size"] = f.test_size;
      line["accuracy"] = f.accuracy;
      line["in_sample"] = f.in_sample;
      line["tree_size"] = f.tree_size;
      out << line.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace dnpi
