// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/dnpi.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dnpi/ci_split.hpp"
#include "dnpi/dataset.hpp"
#include "dnpi/errors.hpp"
#include "dnpi/eval.hpp"
#include "dnpi/oracle_check.hpp"
#include "dnpi/serialize.hpp"
#include "dnpi/tree.hpp"

struct dnpi_dataset {
  dnpi::Dataset data;
};

struct dnpi_tree {
  dnpi::DecisionTree tree;
  std::string metadata = "{}";
};

struct dnpi_report {
  std::vector<dnpi::EvalReport> reports;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string last_error;

int fail(int status, const std::string& message) {
  last_error = message;
  return status;
}

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
int guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ArgumentError& e) {
    return fail(DNPI_ERR_ARGUMENT, e.what());
  } catch (const OutputError& e) {
    return fail(DNPI_ERR_IO, e.what());
  } catch (const dnpi::DomainError& e) {
    return fail(DNPI_ERR_DOMAIN, e.what());
  } catch (const dnpi::IngestError& e) {
    return fail(DNPI_ERR_INGEST, e.what());
  } catch (const dnpi::InternalError& e) {
    return fail(DNPI_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DNPI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DNPI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DNPI_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
T& need(T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

std::string need_text(const char* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return p;
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** out, const std::string& s) {
  if (out != nullptr) *out = copy_out(s);
}

std::string text_or(const char* s, const char* fallback) {
  return s == nullptr ? fallback : s;
}

dnpi::BuildParams to_params(const dnpi_build_params* p) {
  dnpi::BuildParams params;
  if (p == nullptr) return params;
  params.min_split = p->min_split;
  params.algorithm = dnpi::parse_algorithm(text_or(p->algorithm, "dnpi"));
  return params;
}

json parse_json_arg(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string fixed12(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12f", v);
  return buffer;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

extern "C" {

const char* dnpi_version(void) { return DNPI_VERSION; }

const char* dnpi_last_error(void) { return last_error.c_str(); }

const char* dnpi_status_name(int status) {
  switch (status) {
    case DNPI_OK:
      return "ok";
    case DNPI_ERR_ARGUMENT:
      return "argument";
    case DNPI_ERR_DOMAIN:
      return "domain";
    case DNPI_ERR_INGEST:
      return "ingest";
    case DNPI_ERR_IO:
      return "io";
    case DNPI_ERR_MISMATCH:
      return "mismatch";
    case DNPI_ERR_INTERNAL:
      return "internal";
    default:
      return "unknown";
  }
}

void dnpi_string_free(char* s) { std::free(s); }

void dnpi_csv_options_init(dnpi_csv_options* options) {
  if (options == nullptr) return;
  options->class_column = nullptr;
  options->missing_marker = nullptr;
  options->schema_path = nullptr;
  options->require_class = 1;
  options->force_categorical = 0;
}

int dnpi_dataset_load_csv(const char* path, const dnpi_csv_options* options, dnpi_dataset** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output handle is null");
    *out = nullptr;
    need_text(path, "path");
    dnpi::CsvOptions csv;
    if (options != nullptr) {
      csv.class_column = text_or(options->class_column, "");
      csv.missing_marker = text_or(options->missing_marker, "?");
      csv.require_class = options->require_class != 0;
      csv.force_categorical = options->force_categorical != 0;
      if (options->schema_path != nullptr && *options->schema_path != '\0') {
        csv.schema = dnpi::load_schema(options->schema_path);
      }
    }
    auto handle = std::make_unique<dnpi_dataset>();
    handle->data = dnpi::load_csv(std::string(path), csv);
    *out = handle.release();
    return DNPI_OK;
  });
}

int dnpi_dataset_load_for_tree(const char* path, const dnpi_tree* tree, const char* missing_marker,
                               dnpi_dataset** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output handle is null");
    *out = nullptr;
    need_text(path, "path");
    const dnpi::DecisionTree& model = need(tree, "tree").tree;
    dnpi::Schema schema;
    schema.class_column = model.target().name;
    schema.class_labels = model.target().labels;
    schema.attributes = model.attributes();
    schema.missing_marker = text_or(missing_marker, "?");
    dnpi::CsvOptions csv;
    csv.missing_marker = schema.missing_marker;
    csv.require_class = false;
    csv.schema = schema;
    dnpi::Dataset loaded = dnpi::load_csv(std::string(path), csv);

    // Align columns with the model; columns the model does not use are dropped.
    dnpi::Dataset aligned;
    aligned.name = loaded.name;
    aligned.target = model.target();
    aligned.labels = loaded.labels;
    for (const dnpi::Attribute& a : model.attributes()) {
      const std::size_t i = loaded.attribute_index(a.name);
      aligned.attributes.push_back(a);
      aligned.codes.push_back(std::move(loaded.codes[i]));
      aligned.values.push_back(std::move(loaded.values[i]));
    }
    *out = new dnpi_dataset{std::move(aligned)};
    return DNPI_OK;
  });
}

void dnpi_dataset_free(dnpi_dataset* dataset) { delete dataset; }

size_t dnpi_dataset_rows(const dnpi_dataset* dataset) {
  return dataset ? dataset->data.rows() : 0;
}

size_t dnpi_dataset_num_attributes(const dnpi_dataset* dataset) {
  return dataset ? dataset->data.attributes.size() : 0;
}

const char* dnpi_dataset_name(const dnpi_dataset* dataset) {
  return dataset ? dataset->data.name.c_str() : nullptr;
}

const char* dnpi_dataset_attribute_name(const dnpi_dataset* dataset, size_t attribute) {
  if (!dataset || attribute >= dataset->data.attributes.size()) return nullptr;
  return dataset->data.attributes[attribute].name.c_str();
}

int dnpi_dataset_attribute_is_numeric(const dnpi_dataset* dataset, size_t attribute) {
  if (!dataset || attribute >= dataset->data.attributes.size()) return 0;
  return dataset->data.attributes[attribute].numeric ? 1 : 0;
}

size_t dnpi_dataset_attribute_arity(const dnpi_dataset* dataset, size_t attribute) {
  if (!dataset || attribute >= dataset->data.attributes.size()) return 0;
  return dataset->data.attributes[attribute].arity();
}

size_t dnpi_dataset_num_classes(const dnpi_dataset* dataset) {
  return dataset ? dataset->data.target.arity() : 0;
}

const char* dnpi_dataset_class_label(const dnpi_dataset* dataset, size_t label) {
  if (!dataset || label >= dataset->data.target.arity()) return nullptr;
  return dataset->data.target.labels[label].c_str();
}

int dnpi_dataset_row_label(const dnpi_dataset* dataset, size_t row) {
  if (!dataset || row >= dataset->data.rows()) return -1;
  return dataset->data.labels[row];
}

size_t dnpi_dataset_missing_cells(const dnpi_dataset* dataset) {
  if (!dataset) return 0;
  size_t count = 0;
  for (std::size_t a = 0; a < dataset->data.attributes.size(); ++a) {
    for (std::size_t r = 0; r < dataset->data.rows(); ++r) count += dataset->data.is_missing(a, r);
  }
  return count;
}

int dnpi_dataset_impute(dnpi_dataset* dataset) {
  return guarded([&] {
    dnpi_dataset& d = need(dataset, "dataset");
    d.data = dnpi::impute_modal(d.data);
    return DNPI_OK;
  });
}

int dnpi_dataset_discretize(dnpi_dataset* dataset, const char* attribute, size_t bins) {
  return guarded([&] {
    dnpi_dataset& d = need(dataset, "dataset");
    const std::size_t index = d.data.attribute_index(need_text(attribute, "attribute name"));
    d.data = dnpi::discretize_equal_frequency(d.data, index, bins);
    return DNPI_OK;
  });
}

int dnpi_dataset_binarize(dnpi_dataset* dataset, const char* attribute, double* threshold,
                          double* gain_ratio, double* information_gain) {
  return guarded([&] {
    dnpi_dataset& d = need(dataset, "dataset");
    const std::size_t index = d.data.attribute_index(need_text(attribute, "attribute name"));
    dnpi::Binarization result = dnpi::binarize_by_gain_ratio(d.data, index);
    if (threshold) *threshold = result.threshold;
    if (gain_ratio) *gain_ratio = result.gain_ratio;
    if (information_gain) *information_gain = result.information_gain;
    d.data = std::move(result.data);
    return DNPI_OK;
  });
}

int dnpi_dataset_write(const dnpi_dataset* dataset, const char* csv_path, const char* schema_path,
                       const char* provenance_json) {
  return guarded([&] {
    const dnpi::Dataset& data = need(dataset, "dataset").data;
    const std::string path = need_text(csv_path, "csv path");
    const json provenance = parse_json_arg(provenance_json, "provenance");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot write '" + path + "'");
    dnpi::write_csv(data, out);
    out.close();
    if (!out) throw OutputError("failed writing '" + path + "'");
    if (schema_path != nullptr) {
      json doc = json::parse(dnpi::schema_to_json(dnpi::schema_of(data)));
      if (!provenance.empty()) doc["provenance"] = provenance;
      std::ofstream sidecar(schema_path, std::ios::binary);
      if (!sidecar) throw OutputError(std::string("cannot write '") + schema_path + "'");
      sidecar << doc.dump(2) << '\n';
      sidecar.close();
      if (!sidecar) throw OutputError(std::string("failed writing '") + schema_path + "'");
    }
    return DNPI_OK;
  });
}

void dnpi_build_params_init(dnpi_build_params* params) {
  if (params == nullptr) return;
  params->min_split = 2;
  params->algorithm = "dnpi";
}

int dnpi_tree_train(const dnpi_dataset* dataset, const dnpi_build_params* params, dnpi_tree** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output handle is null");
    *out = nullptr;
    const dnpi::Dataset& data = need(dataset, "dataset").data;
    *out = new dnpi_tree{dnpi::build_tree(data, to_params(params)), "{}"};
    return DNPI_OK;
  });
}

int dnpi_tree_load(const char* path, dnpi_tree** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output handle is null");
    *out = nullptr;
    const std::string file = need_text(path, "path");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw dnpi::IngestError("cannot open model file '" + file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    *out = new dnpi_tree{dnpi::tree_from_json(text), dnpi::tree_metadata(text)};
    return DNPI_OK;
  });
}

int dnpi_tree_save(const dnpi_tree* tree, const char* path, const char* metadata_json) {
  return guarded([&] {
    const dnpi::DecisionTree& model = need(tree, "tree").tree;
    const std::string file = need_text(path, "path");
    const std::string text = dnpi::tree_to_json(model, parse_json_arg(metadata_json, "metadata").dump());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw OutputError("cannot write '" + file + "'");
    out << text;
    out.close();
    if (!out) throw OutputError("failed writing '" + file + "'");
    return DNPI_OK;
  });
}

int dnpi_tree_to_json(const dnpi_tree* tree, const char* metadata_json, char** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output string is null");
    const dnpi::DecisionTree& model = need(tree, "tree").tree;
    *out = copy_out(dnpi::tree_to_json(model, parse_json_arg(metadata_json, "metadata").dump()));
    return DNPI_OK;
  });
}

void dnpi_tree_free(dnpi_tree* tree) { delete tree; }

size_t dnpi_tree_size(const dnpi_tree* tree) { return tree ? dnpi::tree_size(tree->tree) : 0; }

size_t dnpi_tree_depth(const dnpi_tree* tree) { return tree ? tree->tree.depth() : 0; }

size_t dnpi_tree_num_nodes(const dnpi_tree* tree) { return tree ? tree->tree.nodes().size() : 0; }

size_t dnpi_tree_num_classes(const dnpi_tree* tree) {
  return tree ? tree->tree.target().arity() : 0;
}

const char* dnpi_tree_class_label(const dnpi_tree* tree, size_t label) {
  if (!tree || label >= tree->tree.target().arity()) return nullptr;
  return tree->tree.target().labels[label].c_str();
}

const char* dnpi_tree_metadata(const dnpi_tree* tree) {
  return tree ? tree->metadata.c_str() : nullptr;
}

int dnpi_tree_predict(const dnpi_tree* tree, const dnpi_dataset* dataset, size_t* predictions,
                      size_t capacity, double* accuracy, size_t* labelled) {
  return guarded([&] {
    const dnpi::DecisionTree& model = need(tree, "tree").tree;
    const dnpi::Dataset& data = need(dataset, "dataset").data;
    if (data.rows() > 0 && predictions == nullptr) throw ArgumentError("prediction buffer is null");
    if (capacity < data.rows()) {
      throw ArgumentError("prediction buffer holds " + std::to_string(capacity) + " entries, need " +
                          std::to_string(data.rows()));
    }
    if (data.target.labels != model.target().labels) {
      throw dnpi::DomainError("dataset class labels differ from the model's");
    }
    std::size_t scored = 0;
    std::size_t correct = 0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
      predictions[r] = dnpi::classify(model, data, r);
      if (data.labels[r] == dnpi::kMissing) continue;
      ++scored;
      correct += predictions[r] == static_cast<std::size_t>(data.labels[r]);
    }
    if (labelled) *labelled = scored;
    if (accuracy && scored > 0) *accuracy = static_cast<double>(correct) / static_cast<double>(scored);
    return DNPI_OK;
  });
}

void dnpi_cv_config_init(dnpi_cv_config* config) {
  if (config == nullptr) return;
  const dnpi::CvConfig defaults;
  config->folds = defaults.folds;
  config->repeats = defaults.repeats;
  config->seed = defaults.seed;
  config->stratified = defaults.stratified ? 1 : 0;
  config->threads = defaults.threads;
}

dnpi_report* dnpi_report_new(void) { return new (std::nothrow) dnpi_report{}; }

void dnpi_report_free(dnpi_report* report) { delete report; }

int dnpi_cross_validate(const dnpi_dataset* dataset, const dnpi_build_params* params,
                        const dnpi_cv_config* config, dnpi_report* report) {
  return guarded([&] {
    const dnpi::Dataset& data = need(dataset, "dataset").data;
    if (report == nullptr) throw ArgumentError("report is null");
    dnpi::CvConfig cv;
    if (config != nullptr) {
      cv.folds = config->folds;
      cv.repeats = config->repeats;
      cv.seed = config->seed;
      cv.stratified = config->stratified != 0;
      cv.threads = config->threads;
    }
    report->reports.push_back(dnpi::cross_validate(data, to_params(params), cv));
    return DNPI_OK;
  });
}

size_t dnpi_report_count(const dnpi_report* report) {
  return report ? report->reports.size() : 0;
}

int dnpi_report_summary(const dnpi_report* report, size_t index, double* accuracy,
                        double* in_sample, double* tree_size, size_t* fold_records) {
  return guarded([&] {
    const auto& reports = need(report, "report").reports;
    if (index >= reports.size()) throw ArgumentError("report index out of range");
    const dnpi::EvalReport& r = reports[index];
    if (accuracy) *accuracy = r.accuracy;
    if (in_sample) *in_sample = r.in_sample;
    if (tree_size) *tree_size = r.tree_size;
    if (fold_records) *fold_records = r.folds.size();
    return DNPI_OK;
  });
}

int dnpi_report_table(const dnpi_report* report, const char* metric, const char* format,
                      char** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output string is null");
    const auto& reports = need(report, "report").reports;
    const std::string kind = text_or(format, "text");
    if (kind != "text" && kind != "json") throw ArgumentError("unknown format '" + kind + "'");
    *out = copy_out(dnpi::report_table(reports, dnpi::parse_metric(text_or(metric, "accuracy")),
                                       kind == "json" ? dnpi::TableFormat::kJson
                                                      : dnpi::TableFormat::kText));
    return DNPI_OK;
  });
}

int dnpi_report_raw_log(const dnpi_report* report, const char* header_json, char** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output string is null");
    const auto& reports = need(report, "report").reports;
    *out = copy_out(dnpi::raw_log(reports, parse_json_arg(header_json, "header").dump()));
    return DNPI_OK;
  });
}

int dnpi_inspect_splits(const dnpi_dataset* dataset, const char* format, char** out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("output string is null");
    const dnpi::Dataset& data = need(dataset, "dataset").data;
    const std::string kind = text_or(format, "text");
    if (kind != "text" && kind != "json") throw ArgumentError("unknown format '" + kind + "'");
    for (const auto& a : data.attributes) {
      if (a.numeric) throw dnpi::DomainError("attribute '" + a.name + "' is numeric");
    }
    std::vector<std::size_t> rows(data.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (data.labels[r] == dnpi::kMissing) throw dnpi::DomainError("rows need class labels");
      rows[r] = r;
    }
    std::vector<std::size_t> attributes(data.attributes.size());
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      for (std::size_t r : rows) {
        if (data.codes[a][r] == dnpi::kMissing) {
          throw dnpi::DomainError("attribute '" + data.attributes[a].name +
                                  "' has missing values; impute first");
        }
      }
      attributes[a] = a;
    }
    const dnpi::SplitDecision decision = dnpi::select_split_dnpi(data, rows, attributes);
    const auto& none = decision.no_attribute;

    if (kind == "json") {
      json doc;
      doc["dataset"] = data.name;
      doc["rows"] = data.rows();
      doc["no_attribute"] = {{"lower", dnpi::to_string(none.lower())},
                             {"upper", dnpi::to_string(none.upper())},
                             {"lower_value", dnpi::to_double(none.lower())},
                             {"upper_value", dnpi::to_double(none.upper())}};
      json rows_json = json::array();
      for (const auto& c : decision.candidates) {
        const auto& iv = c.score.interval;
        rows_json.push_back({{"attribute", data.attributes[c.score.attribute].name},
                             {"lower", dnpi::to_string(iv.lower())},
                             {"upper", dnpi::to_string(iv.upper())},
                             {"lower_value", dnpi::to_double(iv.lower())},
                             {"upper_value", dnpi::to_double(iv.upper())},
                             {"lower_ok", c.lower_ok},
                             {"upper_ok", c.upper_ok},
                             {"selected", decision.chosen == c.score.attribute}});
      }
      doc["attributes"] = rows_json;
      doc["selected"] = decision.chosen ? json(data.attributes[*decision.chosen].name) : json();
      *out = copy_out(doc.dump(2) + "\n");
      return DNPI_OK;
    }

    std::size_t width = std::string("attribute").size();
    for (const auto& a : data.attributes) width = std::max(width, a.name.size());
    std::ostringstream text;
    text << "no-attribute interval [" << fixed12(dnpi::to_double(none.lower())) << ", "
         << fixed12(dnpi::to_double(none.upper())) << "]  (" << dnpi::to_string(none.lower())
         << ", " << dnpi::to_string(none.upper()) << ")\n";
    text << pad("attribute", width) << "  " << pad("ci_lower", 14) << "  " << pad("ci_upper", 14)
         << "  lower_ok  upper_ok  selected\n";
    for (const auto& c : decision.candidates) {
      const auto& iv = c.score.interval;
      text << pad(data.attributes[c.score.attribute].name, width) << "  "
           << pad(fixed12(dnpi::to_double(iv.lower())), 14) << "  "
           << pad(fixed12(dnpi::to_double(iv.upper())), 14) << "  "
           << pad(c.lower_ok ? "pass" : "fail", 8) << "  " << pad(c.upper_ok ? "pass" : "fail", 8)
           << "  " << (decision.chosen == c.score.attribute ? "*" : "") << "\n";
    }
    *out = copy_out(text.str());
    return DNPI_OK;
  });
}

void dnpi_oracle_config_init(dnpi_oracle_config* config) {
  if (config == nullptr) return;
  const dnpi::OracleCheckConfig defaults;
  config->trials = defaults.trials;
  config->k_min = defaults.k_min;
  config->k_max = defaults.k_max;
  config->max_count = defaults.max_count;
  config->max_classes = defaults.max_classes;
  config->seed = defaults.seed;
}

int dnpi_oracle_check(const dnpi_oracle_config* config, size_t* mismatches, char** out) {
  return guarded([&] {
    dnpi::OracleCheckConfig cfg;
    if (config != nullptr) {
      cfg.trials = config->trials;
      cfg.k_min = config->k_min;
      cfg.k_max = config->k_max;
      cfg.max_count = config->max_count;
      cfg.max_classes = config->max_classes;
      cfg.seed = config->seed;
    }
    const dnpi::OracleCheckResult result = dnpi::run_oracle_check(cfg);
    if (mismatches) *mismatches = result.mismatches.size();
    json doc;
    doc["trials"] = result.trials;
    doc["k_min"] = cfg.k_min;
    doc["k_max"] = cfg.k_max;
    doc["max_count"] = cfg.max_count;
    doc["max_classes"] = cfg.max_classes;
    doc["seed"] = cfg.seed;
    doc["mismatches"] = result.mismatches.size();
    json bad = json::array();
    for (const auto& t : result.mismatches) {
      bad.push_back({{"trial", t.trial},
                     {"table", t.table},
                     {"greedy_lower", dnpi::to_string(t.greedy_lower)},
                     {"oracle_lower", dnpi::to_string(t.oracle_lower)},
                     {"greedy_upper", dnpi::to_string(t.greedy_upper)},
                     {"oracle_upper", dnpi::to_string(t.oracle_upper)}});
    }
    doc["offending"] = bad;
    set_out(out, doc.dump(2) + "\n");
    if (!result.mismatches.empty()) {
      last_error = std::to_string(result.mismatches.size()) + " of " +
                   std::to_string(result.trials) + " tables disagree with the oracle";
      return DNPI_ERR_MISMATCH;
    }
    return DNPI_OK;
  });
}

int dnpi_ci_interval(const int64_t* table, size_t categories, size_t classes, char** lower,
                     char** upper, double* lower_value, double* upper_value) {
  return guarded([&] {
    if (table == nullptr) throw ArgumentError("table is null");
    if (categories < 1 || classes < 1) throw dnpi::DomainError("table needs rows and columns");
    std::vector<std::vector<std::int64_t>> cells(categories, std::vector<std::int64_t>(classes));
    for (std::size_t c = 0; c < categories; ++c) {
      for (std::size_t k = 0; k < classes; ++k) cells[c][k] = table[c * classes + k];
    }
    const dnpi::CIScore score =
        dnpi::score_attribute(dnpi::ContingencyView::from_table(0, std::move(cells)));
    const auto& iv = score.interval;
    set_out(lower, dnpi::to_string(iv.lower()));
    set_out(upper, dnpi::to_string(iv.upper()));
    if (lower_value) *lower_value = dnpi::to_double(iv.lower());
    if (upper_value) *upper_value = dnpi::to_double(iv.upper());
    return DNPI_OK;
  });
}

}  // extern "C"
