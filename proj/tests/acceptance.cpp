// Apache License, Version 2.0, refer to LICENSE.txt

// Acceptance suite: one line per criterion.
//   acceptance            run everything
//   acceptance --only N   run criterion N
// Exit status: 0 all pass, 1 any failure, 77 nothing failed but something
// could not run (missing dataset).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dnpi/ci_split.hpp"
#include "dnpi/contingency.hpp"
#include "dnpi/dataset.hpp"
#include "dnpi/eval.hpp"
#include "dnpi/npi.hpp"
#include "dnpi/oracle_check.hpp"
#include "dnpi/tree.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace dnpi;

namespace {

enum class Verdict { kPass, kFail, kNotRun };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

// Collects failures inside one criterion.
struct Checker {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {Verdict::kPass, summary + ", " + std::to_string(checks) + " checks"};
    return {Verdict::kFail, std::to_string(failures) + "/" + std::to_string(checks) +
                                " checks failed; first: " + first};
  }
};

std::string data_path(const std::string& name) { return std::string(DNPI_DATA_DIR) + "/" + name; }

std::string str(const Rational& q) { return q.get_str(); }

std::string fmt2(double v) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.2f", v);
  return b;
}

ContingencyView pure_view(const std::vector<std::int64_t>& counts) {
  std::vector<std::vector<std::int64_t>> table;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::vector<std::int64_t> row(counts.size(), 0);
    row[i] = counts[i];
    table.push_back(row);
  }
  return ContingencyView::from_table(0, table);
}

std::vector<Rational> over(std::initializer_list<long> nums, long den) {
  std::vector<Rational> out;
  for (long x : nums) out.push_back(ratio(x, den));
  return out;
}

std::string show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + str(v[i]);
  return s + ")";
}

// 1 ------------------------------------------------------------------------
Outcome golden_mass_vectors() {
  Checker c;
  auto six = pure_view({1, 2, 3, 4, 5, 6});
  auto s6 = ci_multinomial(six, majority_class_map(six));
  auto five = pure_view({1, 2, 3, 4, 5});
  auto s5 = ci_multinomial(five, majority_class_map(five));
  const auto l6 = over({2, 3, 4, 3, 4, 5}, 21), u6 = over({0, 1, 2, 5, 6, 7}, 21);
  const auto l5 = over({2, 3, 3, 3, 4}, 15), u5 = over({0, 1, 3, 5, 6}, 15);
  c.expect(s6.lower_masses == l6, "lower k=6 " + show(s6.lower_masses));
  c.expect(s6.upper_masses == u6, "upper k=6 " + show(s6.upper_masses));
  c.expect(s5.lower_masses == l5, "lower k=5 " + show(s5.lower_masses));
  c.expect(s5.upper_masses == u5, "upper k=5 " + show(s5.upper_masses));
  return c.outcome("4 vectors exact");
}

// 2 ------------------------------------------------------------------------
Outcome greedy_oracle_equivalence() {
  Checker c;
  OracleCheckConfig config;
  config.trials = 1000;
  config.k_min = 3;
  config.k_max = 7;
  config.max_count = 30;
  config.seed = 20260101;
  std::set<std::size_t> ks;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const auto table = random_table(config.seed, t, config);
    ks.insert(table.size());
    const OracleTrial trial = run_oracle_trial(t, table);
    c.expect(trial.agrees(), "trial " + std::to_string(t) + ": greedy [" + str(trial.greedy_lower) +
                                 "," + str(trial.greedy_upper) + "] vs vertices [" +
                                 str(trial.oracle_lower) + "," + str(trial.oracle_upper) + "]");
    // second, independent optimum of the same program
    std::vector<std::vector<long>> t_long;
    for (const auto& row : table) t_long.emplace_back(row.begin(), row.end());
    const auto ref = oracle::ci_multinomial(t_long);
    c.expect(trial.greedy_lower == ref.lower && trial.greedy_upper == ref.upper,
             "trial " + std::to_string(t) + " disagrees with the knapsack optimum");
  }
  c.expect(ks == std::set<std::size_t>{3, 4, 5, 6, 7}, "not every k in 3..7 was drawn");
  return c.outcome("1000 tables, k in 3..7, cells <= 30");
}

// 3 ------------------------------------------------------------------------
Outcome bernoulli_conjugacy() {
  Checker c;
  std::size_t events = 0;
  for (int n = 0; n <= 6; ++n) {
    for (int s = 0; s <= n; ++s) {
      for (int m = 1; m <= 4; ++m) {
        for (unsigned mask = 1; mask < (1u << (m + 1)); ++mask) {
          std::vector<std::int64_t> r, rc;
          std::set<int> r_set;
          for (int j = 0; j <= m; ++j) {
            if (mask & (1u << j)) {
              r.push_back(j);
              r_set.insert(j);
            } else {
              rc.push_back(j);
            }
          }
          ++events;
          const std::string tag = "n=" + std::to_string(n) + " s=" + std::to_string(s) +
                                  " m=" + std::to_string(m) + " mask=" + std::to_string(mask);
          const Rational lower = bernoulli_event_lower({n, s}, {m, r});
          const Rational expected = rc.empty() ? Rational(1) : 1 - bernoulli_event_upper({n, s}, {m, rc});
          c.expect(lower == expected, "conjugacy " + tag);
          const auto enumerated = oracle::bernoulli_by_enumeration(n, s, m, r_set);
          c.expect(lower == enumerated.lower, "lower vs enumeration " + tag);
          c.expect(bernoulli_event_upper({n, s}, {m, r}) == enumerated.upper,
                   "upper vs enumeration " + tag);
        }
        if (m == 1) {
          const std::string tag = "m=1 n=" + std::to_string(n) + " s=" + std::to_string(s);
          c.expect(bernoulli_event_lower({n, s}, {1, {1}}) == oracle::frac(s, n + 1), tag);
          c.expect(bernoulli_event_upper({n, s}, {1, {1}}) == oracle::frac(s + 1, n + 1), tag);
          c.expect(bernoulli_event_upper({n, s}, {1, {0}}) == oracle::frac(n - s + 1, n + 1), tag);
          const auto next = bernoulli_next_interval({n, s});
          c.expect(next.lower() == oracle::frac(s, n + 1) && next.upper() == oracle::frac(s + 1, n + 1),
                   tag + " next interval");
        }
      }
    }
  }
  return c.outcome(std::to_string(events) + " events");
}

// 4 ------------------------------------------------------------------------
Outcome npim_consistency() {
  Checker c;
  std::size_t vectors = 0;
  std::vector<std::int64_t> counts;
  std::function<void(int, int)> grow = [&](int left, int k) {
    if (static_cast<int>(counts.size()) == k) {
      if (left != 0) return;
      ++vectors;
      // K = 1 leaves the event certain, outside the singleton formula's scope
      for (int big_k = std::max(k, 2); big_k <= 6; ++big_k) {
        MultinomialCounts mc{counts, big_k};
        for (std::size_t i = 0; i < counts.size(); ++i) {
          const auto event = multinomial_event_interval(mc, {{i}, 0});
          const auto single = multinomial_singleton_interval(mc, i);
          if (!(event == single)) {
            std::string v;
            for (auto x : counts) v += std::to_string(x) + " ";
            c.expect(false, "counts (" + v + ") K=" + std::to_string(big_k) + " i=" + std::to_string(i));
          } else {
            c.expect(true, "");
          }
        }
      }
      return;
    }
    for (int x = 1; x <= left; ++x) {
      counts.push_back(x);
      grow(left - x, k);
      counts.pop_back();
    }
  };
  for (int n = 1; n <= 20; ++n) {
    for (int k = 1; k <= std::min(n, 6); ++k) grow(n, k);
  }
  return c.outcome(std::to_string(vectors) + " count vectors, K in max(k,2)..6");
}

// 5 ------------------------------------------------------------------------
Outcome no_attribute_value() {
  Checker c;
  const std::int64_t counts[] = {70, 30};
  const auto iv = no_attribute_interval(counts, 2);
  c.expect(iv.lower() == ratio(70, 101), "lower " + str(iv.lower()));
  c.expect(iv.upper() == ratio(71, 101), "upper " + str(iv.upper()));
  const std::int64_t swapped[] = {30, 70};
  c.expect(no_attribute_interval(swapped, 2) == iv, "class order changed the interval");
  return c.outcome("[70/101, 71/101]");
}

// 6 ------------------------------------------------------------------------
std::vector<std::vector<long>> table_of(const Dataset& d, const std::vector<std::size_t>& rows,
                                        std::size_t a) {
  std::vector<std::vector<long>> t(d.attributes[a].arity(), std::vector<long>(d.target.arity(), 0));
  for (auto r : rows) ++t[static_cast<std::size_t>(d.codes[a][r])][static_cast<std::size_t>(d.labels[r])];
  return t;
}

Outcome stop_rule_soundness() {
  Checker c;
  std::size_t internal = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    // column 2 is constant everywhere; the rest vary in arity
    const std::vector<std::size_t> arities{2 + seed % 3, 3, 1, 2, 4 + seed % 2};
    const std::size_t classes = 2 + seed % 3;
    auto d = testdata::random_dataset(1000 + seed, 40 + (seed * 7) % 160, arities, classes,
                                      0.35 + 0.005 * static_cast<double>(seed));
    std::vector<std::size_t> all(d.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto tree = build_dnpi(d);
    const auto subsets = node_rows(tree, d, all);
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& node = tree.nodes()[i];
      if (node.is_leaf()) continue;
      ++internal;
      const std::size_t a = *node.attribute;
      const auto& rows = subsets[i];
      const std::string tag = "seed " + std::to_string(seed) + " node " + std::to_string(i);
      std::vector<long> counts(classes, 0);
      for (auto r : rows) ++counts[static_cast<std::size_t>(d.labels[r])];
      const auto none = oracle::no_attribute(counts);

      const auto t = table_of(d, rows, a);
      std::vector<std::vector<long>> observed;
      for (const auto& row : t) {
        if (std::accumulate(row.begin(), row.end(), 0L) > 0) observed.push_back(row);
      }
      c.expect(observed.size() >= 2, tag + ": split on an attribute constant at the node");
      c.expect(a != 2, tag + ": split on the constant column");
      if (observed.size() < 2) continue;
      const auto ci = t.size() == 2 ? oracle::ci_binary(t) : oracle::ci_multinomial(observed);
      c.expect(ci.lower > none.lower, tag + ": CI lower " + str(ci.lower) + " <= " + str(none.lower));
      c.expect(ci.upper > none.upper, tag + ": CI upper " + str(ci.upper) + " <= " + str(none.upper));
    }
  }
  c.expect(internal > 100, "too few internal nodes to be a meaningful replay");
  return c.outcome("100 datasets, " + std::to_string(internal) + " internal nodes replayed");
}

// 7 ------------------------------------------------------------------------
std::optional<Dataset> load_bankruptcy() {
  std::string path;
  if (const char* env = std::getenv("DNPI_QB_CSV")) path = env;
  if (path.empty()) path = data_path("qualitative_bankruptcy.csv");
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  // the distributed file has no header row
  const std::string first = text.substr(0, text.find_first_of(",\r\n"));
  if (first == "P" || first == "A" || first == "N") {
    text = "industrial_risk,management_risk,financial_flexibility,credibility,competitiveness,"
           "operating_risk,class\n" + text;
  }
  std::istringstream stream(text);
  CsvOptions options;
  options.force_categorical = true;
  Dataset d = load_csv(stream, options);
  d.name = "qualitative_bankruptcy";
  return d;
}

Outcome benchmark_bands() {
  Checker c;
  CvConfig config;  // 10 folds, 10 repeats, seed 42, unstratified
  std::string summary;
  auto run = [&](const Dataset& d, Algorithm algo, double lo, double hi) {
    BuildParams params;
    params.algorithm = algo;
    const auto report = cross_validate(d, params, config);
    const bool ok = report.accuracy >= lo && report.accuracy <= hi;
    const std::string line = d.name + "/" + algorithm_name(algo) + " " + fmt2(report.accuracy);
    c.expect(ok, line + " outside [" + fmt2(lo) + ", " + fmt2(hi) + "]");
    summary += (summary.empty() ? "" : "; ") + line;
  };
  auto load = [](const std::string& stem) {
    CsvOptions options;
    options.schema = load_schema(data_path(stem + ".schema.json"));
    return load_csv(data_path(stem + ".csv"), options);
  };
  const Dataset monks = load("monks1");
  c.expect(monks.rows() == 124, "monks1 has " + std::to_string(monks.rows()) + " rows");
  run(monks, Algorithm::kDnpi, 73.33 - 8, 73.33 + 8);
  const Dataset lenses = load("lenses");
  c.expect(lenses.rows() == 24 && lenses.attributes.size() == 4 && lenses.target.arity() == 3,
           "lenses shape");
  run(lenses, Algorithm::kDnpi, 81.67 - 12, 81.67 + 12);

  const auto qb = load_bankruptcy();
  if (!qb) {
    Outcome o = c.outcome(summary);
    if (o.verdict == Verdict::kFail) return o;
    return {Verdict::kNotRun,
            summary + "; Qualitative-Bankruptcy not found (set DNPI_QB_CSV or add "
                      "data/qualitative_bankruptcy.csv), its two bands are unchecked"};
  }
  c.expect(qb->rows() == 250, "qualitative_bankruptcy has " + std::to_string(qb->rows()) + " rows");
  run(*qb, Algorithm::kDnpi, 97.6, 100.0);
  run(*qb, Algorithm::kGainRatio, 96.0, 100.0);
  return c.outcome(summary);
}

// 8 ------------------------------------------------------------------------
Outcome measure_definitions() {
  Checker c;
  // predicted x actual: TN=40, FN=5 / FP=5, TP=50
  const auto m = ConfusionMatrix::from_table({{40, 5}, {5, 50}});
  c.expect(accuracy(m) == 0.90, "accuracy " + std::to_string(accuracy(m)));
  c.expect(m.correct() * 10 == m.total() * 9, "trace/total is not 9/10");
  Attribute a{"a", false, {"x", "y"}};
  Attribute target{"t", false, {"p", "q"}};
  TreeNode leaf;
  c.expect(tree_size(DecisionTree({a}, target, {leaf})) == 1, "single leaf size");
  TreeNode root;
  root.attribute = 0;
  root.children = {1, 2};
  c.expect(tree_size(DecisionTree({a}, target, {root, leaf, leaf})) == 2, "stump size");
  return c.outcome("accuracy 0.90, leaf counts");
}

// 9 ------------------------------------------------------------------------
Outcome bench_determinism() {
  Checker c;
  const auto dir = std::filesystem::temp_directory_path() / "dnpi_acceptance";
  std::filesystem::create_directories(dir);
  auto run = [&](const std::string& tag) {
    const auto log = (dir / ("raw_" + tag + ".jsonl")).string();
    const auto out = (dir / ("table_" + tag + ".txt")).string();
    std::filesystem::remove(log);
    const std::string cmd = std::string("\"") + DNPI_CLI_PATH + "\" bench --data \"" +
                            data_path("lenses.csv") + "\" --data \"" + data_path("monks1.csv") +
                            "\" --algo dnpi,gain_ratio --folds 10 --repeats 10 --seed 7 --log \"" +
                            log + "\" --out \"" + out + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    c.expect(status == 0, "bench exited with " + std::to_string(status));
    std::ifstream in(log, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string first = run("a");
  const std::string second = run("b");
  c.expect(!first.empty(), "empty raw log");
  c.expect(first == second, "raw logs differ between runs");
  const auto lines = std::count(first.begin(), first.end(), '\n');
  c.expect(lines == 1 + 400, "raw log has " + std::to_string(lines) + " lines, expected 401");
  return c.outcome("two runs, " + std::to_string(first.size()) + " identical bytes");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "golden mass vectors", 1.0, golden_mass_vectors},
      {2, "greedy equals vertex enumeration", 30.0, greedy_oracle_equivalence},
      {3, "Bernoulli conjugacy and m=1", 10.0, bernoulli_conjugacy},
      {4, "NPI-M event vs singleton bounds", 10.0, npim_consistency},
      {5, "no-attribute interval 70/30", 1.0, no_attribute_value},
      {6, "stop-rule replay", 60.0, stop_rule_soundness},
      {7, "benchmark tolerance bands", 120.0, benchmark_bands},
      {8, "accuracy and tree size definitions", 1.0, measure_definitions},
      {9, "bench raw log determinism", 60.0, bench_determinism},
  };

  bool failed = false, skipped = false;
  for (const auto& cr : criteria) {
    if (only != 0 && cr.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.verdict != Verdict::kFail && seconds > cr.budget_seconds) {
      o = {Verdict::kFail, "took " + fmt2(seconds) + " s, budget " + fmt2(cr.budget_seconds) + " s"};
    }
    const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "NOT RUN";
    std::printf("[%s] criterion %d: %s (%.3f s) - %s\n", tag, cr.id, cr.title, seconds, o.detail.c_str());
    std::fflush(stdout);
    failed = failed || o.verdict == Verdict::kFail;
    skipped = skipped || o.verdict == Verdict::kNotRun;
  }
  if (failed) return 1;
  return skipped ? 77 : 0;
}
