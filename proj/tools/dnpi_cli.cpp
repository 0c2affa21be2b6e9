// Apache License, Version 2.0, refer to LICENSE.txt

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dnpi/dnpi.h"

namespace {

using json = nlohmann::ordered_json;

// Carries a status out of a command.
struct Failure {
  int status;
  std::string message;
};

void check(int status) {
  if (status != DNPI_OK) throw Failure{status, dnpi_last_error()};
}

struct DatasetDeleter {
  void operator()(dnpi_dataset* d) const { dnpi_dataset_free(d); }
};
struct TreeDeleter {
  void operator()(dnpi_tree* t) const { dnpi_tree_free(t); }
};
struct ReportDeleter {
  void operator()(dnpi_report* r) const { dnpi_report_free(r); }
};
using DatasetPtr = std::unique_ptr<dnpi_dataset, DatasetDeleter>;
using TreePtr = std::unique_ptr<dnpi_tree, TreeDeleter>;
using ReportPtr = std::unique_ptr<dnpi_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  dnpi_string_free(s);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{DNPI_ERR_IO, "cannot write '" + path + "'"};
  out << text;
  out.close();
  if (!out) throw Failure{DNPI_ERR_IO, "failed writing '" + path + "'"};
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    write_file(*path, text);
  } else {
    std::cout << text;
  }
}

// Sidecar next to a CSV: data/x.csv -> data/x.schema.json
std::string sidecar_for(const std::string& csv) {
  std::filesystem::path p(csv);
  return (p.parent_path() / (p.stem().string() + ".schema.json")).string();
}

struct Input {
  std::string data;
  std::string schema;  // empty: look for the sidecar
  bool no_schema = false;
  std::string class_column;
  std::string missing = "?";
  bool force_categorical = false;

  std::string resolved_schema() const {
    if (no_schema) return "";
    if (!schema.empty()) return schema;
    const std::string guess = sidecar_for(data);
    return std::filesystem::exists(guess) ? guess : "";
  }

  void add_options(CLI::App* app, bool data_required = true) {
    auto* opt = app->add_option("--data", data, "input CSV");
    if (data_required) opt->required();
    app->add_option("--schema", schema, "schema sidecar (default: <stem>.schema.json if present)");
    app->add_flag("--no-schema", no_schema, "ignore any schema sidecar");
    app->add_option("--class", class_column, "class column (default: schema or last column)");
    app->add_option("--missing", missing, "missing-value marker")->capture_default_str();
    app->add_flag("--categorical", force_categorical, "treat every column as categorical");
  }

  DatasetPtr load(const std::string& path, const std::string& schema_path) const {
    dnpi_csv_options options;
    dnpi_csv_options_init(&options);
    options.class_column = class_column.empty() ? nullptr : class_column.c_str();
    options.missing_marker = missing.c_str();
    options.schema_path = schema_path.empty() ? nullptr : schema_path.c_str();
    options.force_categorical = force_categorical ? 1 : 0;
    dnpi_dataset* raw = nullptr;
    check(dnpi_dataset_load_csv(path.c_str(), &options, &raw));
    return DatasetPtr(raw);
  }

  DatasetPtr load() const { return load(data, resolved_schema()); }

  json config() const {
    return {{"data", data}, {"schema", resolved_schema()}, {"class", class_column},
            {"missing", missing}, {"categorical", force_categorical}};
  }
};

json base_config(const std::string& command) {
  return {{"tool", "dnpi"}, {"version", dnpi_version()}, {"command", command}};
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

// ---- prep ----

struct PrepArgs {
  Input input;
  bool impute = false;
  std::vector<std::string> discretize;
  std::vector<std::string> binarize;
  std::string out;
  std::string out_schema;
};

void run_prep(const PrepArgs& args) {
  DatasetPtr data = args.input.load();
  json config = base_config("prep");
  config["input"] = args.input.config();
  config["impute"] = args.impute;
  config["discretize"] = args.discretize;
  config["binarize"] = args.binarize;

  if (args.impute) {
    const std::size_t before = dnpi_dataset_missing_cells(data.get());
    check(dnpi_dataset_impute(data.get()));
    std::cerr << "impute: filled " << before << " missing cells\n";
  }
  for (const auto& spec : args.discretize) {
    const auto colon = spec.rfind(':');
    std::string name = spec;
    std::size_t bins = 3;
    if (colon != std::string::npos) {
      name = spec.substr(0, colon);
      try {
        bins = std::stoul(spec.substr(colon + 1));
      } catch (const std::exception&) {
        throw Failure{DNPI_ERR_ARGUMENT, "bad bin count in --discretize '" + spec + "'"};
      }
    }
    check(dnpi_dataset_discretize(data.get(), name.c_str(), bins));
    std::cerr << "discretize: " << name << " into " << bins << " equal-frequency bins\n";
  }
  json thresholds = json::object();
  for (const auto& name : args.binarize) {
    double threshold = 0.0, ratio = 0.0, gain = 0.0;
    check(dnpi_dataset_binarize(data.get(), name.c_str(), &threshold, &ratio, &gain));
    thresholds[name] = {{"threshold", threshold}, {"gain_ratio", ratio}, {"information_gain", gain}};
    std::cerr << "binarize: " << name << " threshold=" << threshold << " gain_ratio=" << ratio
              << " information_gain=" << gain << (gain <= 1e-9 ? " (no information)" : "") << "\n";
  }
  if (!thresholds.empty()) config["thresholds"] = thresholds;
  config["note"] = "preprocessing statistics come from the full dataset";
  const std::string schema_out = args.out_schema.empty() ? sidecar_for(args.out) : args.out_schema;
  check(dnpi_dataset_write(data.get(), args.out.c_str(), schema_out.c_str(), config.dump().c_str()));
  std::cerr << "wrote " << args.out << " and " << schema_out << "\n";
}

// ---- train ----

struct TrainArgs {
  Input input;
  std::string algorithm = "dnpi";
  std::size_t min_split = 2;
  std::uint64_t seed = 42;
  std::string out;
};

void run_train(const TrainArgs& args) {
  DatasetPtr data = args.input.load();
  dnpi_build_params params;
  dnpi_build_params_init(&params);
  params.algorithm = args.algorithm.c_str();
  params.min_split = args.min_split;
  dnpi_tree* raw = nullptr;
  check(dnpi_tree_train(data.get(), &params, &raw));
  TreePtr tree(raw);

  json metadata = base_config("train");
  metadata["input"] = args.input.config();
  metadata["algorithm"] = args.algorithm;
  metadata["min_split"] = args.min_split;
  metadata["seed"] = args.seed;
  metadata["rows"] = dnpi_dataset_rows(data.get());
  metadata["tree_size"] = dnpi_tree_size(tree.get());
  metadata["depth"] = dnpi_tree_depth(tree.get());
  check(dnpi_tree_save(tree.get(), args.out.c_str(), metadata.dump().c_str()));
  std::cerr << "trained " << args.algorithm << " tree: " << dnpi_tree_size(tree.get())
            << " leaves, depth " << dnpi_tree_depth(tree.get()) << "; wrote " << args.out << "\n";
}

// ---- predict ----

struct PredictArgs {
  std::string model;
  std::string data;
  std::string missing = "?";
  std::optional<std::string> out;
};

void run_predict(const PredictArgs& args) {
  dnpi_tree* raw_tree = nullptr;
  check(dnpi_tree_load(args.model.c_str(), &raw_tree));
  TreePtr tree(raw_tree);
  dnpi_dataset* raw_data = nullptr;
  check(dnpi_dataset_load_for_tree(args.data.c_str(), tree.get(), args.missing.c_str(), &raw_data));
  DatasetPtr data(raw_data);

  const std::size_t rows = dnpi_dataset_rows(data.get());
  std::vector<std::size_t> predictions(rows);
  double accuracy = 0.0;
  std::size_t labelled = 0;
  check(dnpi_tree_predict(tree.get(), data.get(), predictions.data(), predictions.size(), &accuracy,
                          &labelled));

  json config = base_config("predict");
  config["model"] = args.model;
  config["data"] = args.data;
  config["missing"] = args.missing;
  config["model_metadata"] = json::parse(dnpi_tree_metadata(tree.get()));

  std::ostringstream text;
  text << "# " << config.dump() << "\n";
  text << "row,predicted" << (labelled ? ",actual" : "") << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    text << r + 1 << ',' << dnpi_tree_class_label(tree.get(), predictions[r]);
    if (labelled) {
      const int actual = dnpi_dataset_row_label(data.get(), r);
      text << ',' << (actual < 0 ? "?" : dnpi_tree_class_label(tree.get(), actual));
    }
    text << "\n";
  }
  if (labelled) {
    char line[96];
    std::snprintf(line, sizeof(line), "# accuracy %.6f (%zu labelled rows)\n", accuracy, labelled);
    text << line;
    std::cerr << line + 2;
  }
  emit(args.out, text.str());
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::string> data;
  std::vector<std::string> schemas;
  bool no_schema = false;
  std::string class_column;
  std::string missing = "?";
  std::vector<std::string> algorithms{"dnpi,gain_ratio"};
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::uint64_t seed = 42;
  std::size_t min_split = 2;
  bool stratified = false;
  std::size_t threads = 1;
  std::string metric = "accuracy";
  std::optional<std::string> out;
  std::optional<std::string> log;
  std::optional<std::string> json_out;
};

void run_bench(const BenchArgs& args) {
  const std::vector<std::string> files = split_list(args.data);
  const std::vector<std::string> algorithms = split_list(args.algorithms);
  if (files.empty()) throw Failure{DNPI_ERR_ARGUMENT, "bench needs at least one --data"};
  if (algorithms.empty()) throw Failure{DNPI_ERR_ARGUMENT, "bench needs at least one --algo"};
  if (!args.schemas.empty() && args.schemas.size() != files.size()) {
    throw Failure{DNPI_ERR_ARGUMENT, "give one --schema per --data, or none"};
  }
  if (args.folds < 2) throw Failure{DNPI_ERR_ARGUMENT, "--folds must be at least 2"};

  json config = base_config("bench");
  config["algorithms"] = algorithms;
  config["folds"] = args.folds;
  config["repeats"] = args.repeats;
  config["seed"] = args.seed;
  config["min_split"] = args.min_split;
  config["stratified"] = args.stratified;
  config["missing"] = args.missing;
  config["note"] =
      "preprocessing statistics come from the full dataset; compared algorithms: dnpi, gain_ratio "
      "only";
  json inputs = json::array();

  ReportPtr report(dnpi_report_new());
  if (!report) throw Failure{DNPI_ERR_INTERNAL, "out of memory"};
  dnpi_cv_config cv;
  dnpi_cv_config_init(&cv);
  cv.folds = args.folds;
  cv.repeats = args.repeats;
  cv.seed = args.seed;
  cv.stratified = args.stratified ? 1 : 0;
  cv.threads = args.threads;

  for (std::size_t i = 0; i < files.size(); ++i) {
    Input input;
    input.data = files[i];
    input.schema = args.schemas.empty() ? "" : args.schemas[i];
    input.no_schema = args.no_schema;
    input.class_column = args.class_column;
    input.missing = args.missing;
    DatasetPtr data = input.load();
    inputs.push_back({{"data", files[i]},
                      {"schema", input.resolved_schema()},
                      {"rows", dnpi_dataset_rows(data.get())}});
    for (const auto& algorithm : algorithms) {
      dnpi_build_params params;
      dnpi_build_params_init(&params);
      params.algorithm = algorithm.c_str();
      params.min_split = args.min_split;
      check(dnpi_cross_validate(data.get(), &params, &cv, report.get()));
      double accuracy = 0.0, in_sample = 0.0, size = 0.0;
      check(dnpi_report_summary(report.get(), dnpi_report_count(report.get()) - 1, &accuracy,
                                &in_sample, &size, nullptr));
      std::fprintf(stderr, "%s %s: accuracy %.2f  in-sample %.2f  tree size %.2f\n",
                   dnpi_dataset_name(data.get()), algorithm.c_str(), accuracy, in_sample, size);
    }
  }
  config["inputs"] = inputs;
  // threads do not change results, so they stay out of the recorded config

  auto table = [&](const char* metric, const char* format) {
    char* raw = nullptr;
    check(dnpi_report_table(report.get(), metric, format, &raw));
    return take(raw);
  };

  if (args.log) {
    char* raw = nullptr;
    check(dnpi_report_raw_log(report.get(), config.dump().c_str(), &raw));
    write_file(*args.log, take(raw));
  }
  if (args.json_out) {
    json doc;
    doc["config"] = config;
    for (const char* metric : {"accuracy", "in_sample", "tree_size"}) {
      doc[metric] = json::parse(table(metric, "json"));
    }
    write_file(*args.json_out, doc.dump(2) + "\n");
  }

  std::ostringstream text;
  text << "# " << config.dump() << "\n";
  if (args.out) {
    for (const char* metric : {"accuracy", "in_sample", "tree_size"}) {
      text << "\n[" << metric << "]\n" << table(metric, "text");
    }
  } else {
    text << "\n[" << args.metric << "]\n" << table(args.metric.c_str(), "text");
  }
  emit(args.out, text.str());
}

// ---- inspect-splits ----

struct InspectArgs {
  Input input;
  std::string format = "text";
};

void run_inspect(const InspectArgs& args) {
  DatasetPtr data = args.input.load();
  char* raw = nullptr;
  check(dnpi_inspect_splits(data.get(), args.format.c_str(), &raw));
  const std::string result = take(raw);
  json config = base_config("inspect-splits");
  config["input"] = args.input.config();
  if (args.format == "json") {
    json doc = json::parse(result);
    doc["config"] = config;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# " << config.dump() << "\n" << result;
  }
}

// ---- oracle-check ----

struct OracleArgs {
  dnpi_oracle_config config{};
  std::optional<std::string> out;
};

int run_oracle(const OracleArgs& args) {
  std::size_t mismatches = 0;
  char* raw = nullptr;
  const int status = dnpi_oracle_check(&args.config, &mismatches, &raw);
  if (raw == nullptr) check(status);
  json doc = json::parse(take(raw));
  json config = base_config("oracle-check");
  config["seed"] = args.config.seed;
  doc["config"] = config;
  emit(args.out, doc.dump(2) + "\n");
  std::cerr << "oracle-check: " << mismatches << " mismatches in " << args.config.trials
            << " trials\n";
  check(status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-NPI classification trees: preprocessing, training, prediction, benchmarks"};
  app.set_version_flag("--version", std::string(dnpi_version()));
  app.require_subcommand(1);

  PrepArgs prep;
  auto* prep_cmd = app.add_subcommand("prep", "impute, discretize and binarize a CSV");
  prep.input.add_options(prep_cmd);
  prep_cmd->add_flag("--impute", prep.impute, "replace missing cells by the column mode");
  prep_cmd->add_option("--discretize", prep.discretize, "attr[:bins] equal-frequency bins (default 3)");
  prep_cmd->add_option("--binarize", prep.binarize, "attr: two-way split by gain ratio");
  prep_cmd->add_option("--out", prep.out, "output CSV")->required();
  prep_cmd->add_option("--out-schema", prep.out_schema, "output schema (default: <stem>.schema.json)");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "build a tree and write the model");
  train.input.add_options(train_cmd);
  train_cmd->add_option("--algo", train.algorithm, "dnpi or gain_ratio")
      ->check(CLI::IsMember({"dnpi", "gain_ratio"}))
      ->capture_default_str();
  train_cmd->add_option("--min-split", train.min_split, "smallest node that may split")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "recorded in the model metadata")->capture_default_str();
  train_cmd->add_option("--out", train.out, "model file (JSON)")->required();

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "classify a CSV with a saved model");
  predict_cmd->add_option("--model", predict.model, "model file")->required();
  predict_cmd->add_option("--data", predict.data, "input CSV")->required();
  predict_cmd->add_option("--missing", predict.missing, "missing-value marker")->capture_default_str();
  predict_cmd->add_option("--out", predict.out, "prediction file (default: stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "repeated k-fold cross-validation");
  bench_cmd->add_option("--data", bench.data, "CSV files (repeatable or comma separated)")->required();
  bench_cmd->add_option("--schema", bench.schemas, "one schema per --data");
  bench_cmd->add_flag("--no-schema", bench.no_schema, "ignore schema sidecars");
  bench_cmd->add_option("--class", bench.class_column, "class column");
  bench_cmd->add_option("--missing", bench.missing, "missing-value marker")->capture_default_str();
  bench_cmd->add_option("--algo", bench.algorithms, "dnpi,gain_ratio")->capture_default_str();
  bench_cmd->add_option("--folds", bench.folds, "folds per repeat")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "repeats")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "base seed")->capture_default_str();
  bench_cmd->add_option("--min-split", bench.min_split, "smallest node that may split")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  bench_cmd->add_flag("--stratified", bench.stratified, "stratify folds by class");
  bench_cmd->add_option("--threads", bench.threads, "worker threads")->capture_default_str();
  bench_cmd->add_option("--metric", bench.metric, "table printed without --out")
      ->check(CLI::IsMember({"accuracy", "in_sample", "tree_size"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "text report with all three tables");
  bench_cmd->add_option("--json", bench.json_out, "structured report");
  bench_cmd->add_option("--log", bench.log, "raw per-fold log (JSON lines)");

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect-splits", "root-node split diagnostics");
  inspect.input.add_options(inspect_cmd);
  inspect_cmd->add_option("--format", inspect.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  OracleArgs oracle;
  dnpi_oracle_config_init(&oracle.config);
  auto* oracle_cmd = app.add_subcommand("oracle-check", "greedy CI against vertex enumeration");
  oracle_cmd->add_option("--trials", oracle.config.trials, "random tables")->capture_default_str();
  oracle_cmd->add_option("--k-min", oracle.config.k_min, "fewest categories")->capture_default_str();
  oracle_cmd->add_option("--k-max", oracle.config.k_max, "most categories (<= 8)")->capture_default_str();
  oracle_cmd->add_option("--max-count", oracle.config.max_count, "largest cell count")
      ->capture_default_str();
  oracle_cmd->add_option("--max-classes", oracle.config.max_classes, "most classes")
      ->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.config.seed, "seed")->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "JSON summary (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error status=argument message=" << json(e.what()).dump() << "\n";
    return DNPI_ERR_ARGUMENT;
  }

  try {
    if (*prep_cmd) run_prep(prep);
    if (*train_cmd) run_train(train);
    if (*predict_cmd) run_predict(predict);
    if (*bench_cmd) run_bench(bench);
    if (*inspect_cmd) run_inspect(inspect);
    if (*oracle_cmd) return run_oracle(oracle);
  } catch (const Failure& f) {
    std::cerr << "error status=" << dnpi_status_name(f.status) << " message=" << json(f.message).dump()
              << "\n";
    return f.status;
  } catch (const std::exception& e) {
    std::cerr << "error status=internal message=" << json(e.what()).dump() << "\n";
    return DNPI_ERR_INTERNAL;
  }
  return 0;
}
