// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "dnpi/classic_split.hpp"
#include "dnpi/contingency.hpp"
#include "dnpi/errors.hpp"

namespace dnpi {

using json = nlohmann::json;

std::optional<std::size_t> Attribute::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t Dataset::attribute_index(std::string_view attribute_name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == attribute_name) return i;
  }
  throw DomainError("unknown attribute '" + std::string(attribute_name) + "'");
}

bool Dataset::all_categorical() const {
  return std::none_of(attributes.begin(), attributes.end(),
                      [](const Attribute& a) { return a.numeric; });
}

bool Dataset::is_missing(std::size_t attribute, std::size_t row) const {
  return attributes[attribute].numeric ? std::isnan(values[attribute][row])
                                       : codes[attribute][row] == kMissing;
}

bool Dataset::has_missing() const {
  for (std::size_t a = 0; a < attributes.size(); ++a) {
    for (std::size_t r = 0; r < rows(); ++r) {
      if (is_missing(a, r)) return true;
    }
  }
  return false;
}

const Attribute* Schema::find(std::string_view attribute_name) const {
  for (const auto& a : attributes) {
    if (a.name == attribute_name) return &a;
  }
  return nullptr;
}

// Schema documents look like
//   {"class": "lenses", "missing": "?", "class_labels": [...],
//    "attributes": {"age": {"type": "categorical", "labels": [...]}, ...}}
// Attribute order follows the CSV header, so the object's key order is not
// significant.
Schema schema_from_json(const std::string& text) {
  Schema schema;
  try {
    const json doc = json::parse(text);
    schema.class_column = doc.value("class", "");
    schema.missing_marker = doc.value("missing", "?");
    if (doc.contains("class_labels")) {
      schema.class_labels = doc.at("class_labels").get<std::vector<std::string>>();
    }
    if (doc.contains("attributes")) {
      for (const auto& [name, spec] : doc.at("attributes").items()) {
        Attribute a;
        a.name = name;
        const std::string type = spec.value("type", "categorical");
        if (type == "numeric") {
          a.numeric = true;
        } else if (type != "categorical") {
          throw IngestError("schema: attribute '" + name + "' has unknown type '" + type + "'");
        }
        if (spec.contains("labels")) a.labels = spec.at("labels").get<std::vector<std::string>>();
        schema.attributes.push_back(std::move(a));
      }
    }
  } catch (const json::exception& e) {
    throw IngestError(std::string("schema: ") + e.what());
  }
  return schema;
}

Schema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open schema file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return schema_from_json(buffer.str());
}

Schema schema_of(const Dataset& dataset) {
  Schema schema;
  schema.class_column = dataset.target.name;
  schema.class_labels = dataset.target.labels;
  schema.attributes = dataset.attributes;
  return schema;
}

std::string schema_to_json(const Schema& schema) {
  json attributes = json::object();
  for (const auto& a : schema.attributes) {
    json spec = {{"type", a.numeric ? "numeric" : "categorical"}};
    if (!a.numeric) spec["labels"] = a.labels;
    attributes[a.name] = spec;
  }
  json doc = {{"class", schema.class_column},
              {"missing", schema.missing_marker},
              {"class_labels", schema.class_labels},
              {"attributes", attributes}};
  return doc.dump(2) + "\n";
}

void save_schema(const Schema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write schema file '" + path + "'");
  out << schema_to_json(schema);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 style: comma separated, double quotes around fields, "" for a
// literal quote, CRLF or LF line ends. Unquoted fields are trimmed. Blank
// lines are skipped.
std::vector<CsvRecord> parse_csv(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  current.line = line;

  auto finish_field = [&] {
    current.fields.push_back(field_was_quoted ? field : trim(field));
    field.clear();
    field_was_quoted = false;
  };
  auto finish_record = [&] {
    finish_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    current.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!trim(field).empty()) {
          throw IngestError("line " + std::to_string(line) + ": stray quote inside field");
        }
        field.clear();
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        finish_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        finish_record();
        break;
      default:
        field.push_back(ch);
    }
  }
  if (quoted) throw IngestError("line " + std::to_string(line) + ": unterminated quoted field");
  if (!field.empty() || field_was_quoted || !current.fields.empty()) finish_record();
  return records;
}

std::optional<double> parse_number(const std::string& s) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

Dataset load_csv(std::istream& in, const CsvOptions& options) {
  const std::vector<CsvRecord> records = parse_csv(in);
  if (records.empty()) throw IngestError("CSV input is empty");
  const std::vector<std::string>& header = records.front().fields;
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != width) {
      throw IngestError("line " + std::to_string(records[r].line) + ": expected " +
                        std::to_string(width) + " fields, found " +
                        std::to_string(records[r].fields.size()));
    }
  }

  const Schema* schema = options.schema ? &*options.schema : nullptr;
  const std::string missing = schema && options.missing_marker == "?" ? schema->missing_marker
                                                                       : options.missing_marker;
  std::string class_name = options.class_column;
  if (class_name.empty() && schema) class_name = schema->class_column;

  std::optional<std::size_t> class_col;
  if (class_name.empty()) {
    if (options.require_class) class_col = width - 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) {
      if (header[c] == class_name) class_col = c;
    }
    if (!class_col && options.require_class) {
      throw IngestError("class column '" + class_name + "' not found in header");
    }
  }

  if (schema) {
    for (const auto& a : schema->attributes) {
      if (std::find(header.begin(), header.end(), a.name) == header.end()) {
        throw IngestError("schema attribute '" + a.name + "' not found in header");
      }
    }
  }

  const std::size_t n = records.size() - 1;
  auto cell = [&](std::size_t row, std::size_t col) -> const std::string& {
    return records[row + 1].fields[col];
  };
  auto is_missing_cell = [&](const std::string& s) { return s == missing || s.empty(); };

  // Categorical column: declared labels are fixed, otherwise collected in
  // order of first appearance.
  auto read_categorical = [&](std::size_t col, Attribute& attr, bool declared,
                              std::vector<int>& out) {
    out.assign(n, kMissing);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string& s = cell(r, col);
      if (is_missing_cell(s)) continue;
      auto idx = attr.find(s);
      if (!idx) {
        if (declared) {
          throw IngestError("line " + std::to_string(records[r + 1].line) + ", column '" +
                            header[col] + "': value '" + s + "' not among declared labels");
        }
        attr.labels.push_back(s);
        idx = attr.labels.size() - 1;
      }
      out[r] = static_cast<int>(*idx);
    }
  };

  Dataset data;
  for (std::size_t col = 0; col < width; ++col) {
    if (class_col && col == *class_col) continue;
    Attribute attr;
    attr.name = header[col];
    const Attribute* declared = schema ? schema->find(attr.name) : nullptr;
    if (declared) {
      attr = *declared;
    } else if (!options.force_categorical) {
      bool any = false;
      bool numeric = true;
      for (std::size_t r = 0; r < n && numeric; ++r) {
        if (is_missing_cell(cell(r, col))) continue;
        any = true;
        numeric = parse_number(cell(r, col)).has_value();
      }
      attr.numeric = any && numeric;
    }

    std::vector<int> codes;
    std::vector<double> values;
    if (attr.numeric) {
      values.assign(n, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& s = cell(r, col);
        if (is_missing_cell(s)) continue;
        auto v = parse_number(s);
        if (!v) {
          throw IngestError("line " + std::to_string(records[r + 1].line) + ", column '" +
                            header[col] + "': '" + s + "' is not a number");
        }
        values[r] = *v;
      }
    } else {
      read_categorical(col, attr, declared && !declared->labels.empty(), codes);
    }
    data.attributes.push_back(std::move(attr));
    data.codes.push_back(std::move(codes));
    data.values.push_back(std::move(values));
  }

  data.target.name = class_col ? header[*class_col] : class_name;
  if (schema) data.target.labels = schema->class_labels;
  if (class_col) {
    read_categorical(*class_col, data.target, schema && !schema->class_labels.empty(), data.labels);
    if (options.require_class) {
      for (std::size_t r = 0; r < n; ++r) {
        if (data.labels[r] == kMissing) {
          throw IngestError("line " + std::to_string(records[r + 1].line) +
                            ": missing class label");
        }
      }
    }
  } else {
    data.labels.assign(n, kMissing);
  }
  return data;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open data file '" + path + "'");
  Dataset data = load_csv(in, options);
  const auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  data.name = stem;
  return data;
}

namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_csv(const Dataset& dataset, std::ostream& out, const std::string& missing_marker) {
  for (const auto& a : dataset.attributes) out << quote_csv(a.name) << ',';
  out << quote_csv(dataset.target.name) << '\n';
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    for (std::size_t a = 0; a < dataset.attributes.size(); ++a) {
      const Attribute& attr = dataset.attributes[a];
      if (dataset.is_missing(a, r)) {
        out << missing_marker;
      } else if (attr.numeric) {
        out << format_number(dataset.values[a][r]);
      } else {
        out << quote_csv(attr.labels[static_cast<std::size_t>(dataset.codes[a][r])]);
      }
      out << ',';
    }
    const int label = dataset.labels[r];
    out << (label == kMissing ? missing_marker
                              : quote_csv(dataset.target.labels[static_cast<std::size_t>(label)]))
        << '\n';
  }
}

Dataset impute_modal(const Dataset& dataset) {
  Dataset out = dataset;
  for (std::size_t a = 0; a < out.attributes.size(); ++a) {
    const Attribute& attr = out.attributes[a];
    if (attr.numeric) {
      std::map<double, std::size_t> freq;
      for (double v : out.values[a]) {
        if (!std::isnan(v)) ++freq[v];
      }
      if (freq.empty()) throw IngestError("attribute '" + attr.name + "' is entirely missing");
      double mode = freq.begin()->first;
      std::size_t best = 0;
      for (const auto& [v, c] : freq) {
        if (c > best) {
          best = c;
          mode = v;
        }
      }
      for (double& v : out.values[a]) {
        if (std::isnan(v)) v = mode;
      }
    } else {
      std::vector<std::size_t> freq(attr.arity(), 0);
      bool any = false;
      for (int code : out.codes[a]) {
        if (code == kMissing) continue;
        ++freq[static_cast<std::size_t>(code)];
        any = true;
      }
      if (!any) throw IngestError("attribute '" + attr.name + "' is entirely missing");
      const auto mode = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());
      for (int& code : out.codes[a]) {
        if (code == kMissing) code = mode;
      }
    }
  }
  return out;
}

std::vector<double> equal_frequency_cuts(std::vector<double> values, std::size_t bins) {
  if (bins < 2) throw DomainError("equal-frequency discretization needs at least 2 bins");
  std::erase_if(values, [](double v) { return std::isnan(v); });
  std::sort(values.begin(), values.end());
  std::vector<double> unique_values = values;
  unique_values.erase(std::unique(unique_values.begin(), unique_values.end()), unique_values.end());
  if (unique_values.size() < bins) {
    throw IngestError("only " + std::to_string(unique_values.size()) +
                      " distinct values for " + std::to_string(bins) + " bins");
  }
  const std::size_t n = values.size();
  std::vector<double> cuts;
  for (std::size_t j = 1; j < bins; ++j) cuts.push_back(values[j * n / bins]);
  return cuts;
}

Dataset discretize_equal_frequency(const Dataset& dataset, std::size_t attribute, std::size_t bins,
                                   std::vector<std::string> labels) {
  if (attribute >= dataset.attributes.size()) throw DomainError("attribute index out of range");
  const Attribute& attr = dataset.attributes[attribute];
  if (!attr.numeric) throw DomainError("attribute '" + attr.name + "' is not numeric");
  if (labels.empty()) {
    if (bins == 3) {
      labels = {"L", "M", "H"};
    } else {
      for (std::size_t b = 1; b <= bins; ++b) labels.push_back("Q" + std::to_string(b));
    }
  }
  if (labels.size() != bins) throw DomainError("need one label per bin");
  const std::vector<double> cuts = equal_frequency_cuts(dataset.values[attribute], bins);

  Dataset out = dataset;
  out.attributes[attribute] = Attribute{attr.name, false, labels};
  out.values[attribute].clear();
  auto& codes = out.codes[attribute];
  codes.assign(dataset.rows(), kMissing);
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    const double v = dataset.values[attribute][r];
    if (std::isnan(v)) continue;
    codes[r] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
  }
  return out;
}

Binarization binarize_by_gain_ratio(const Dataset& dataset, std::size_t attribute) {
  if (attribute >= dataset.attributes.size()) throw DomainError("attribute index out of range");
  const Attribute& attr = dataset.attributes[attribute];
  if (!attr.numeric) throw DomainError("attribute '" + attr.name + "' is not numeric");

  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    if (std::isnan(dataset.values[attribute][r])) continue;
    if (dataset.labels[r] == kMissing) throw DomainError("binarization needs labelled rows");
    order.push_back(r);
  }
  const auto& v = dataset.values[attribute];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  if (order.empty() || v[order.front()] == v[order.back()]) {
    throw IngestError("attribute '" + attr.name + "' is constant; nothing to binarize");
  }

  // Sweep thresholds left to right, moving rows from the upper to the lower
  // side of the split.
  const std::size_t classes = dataset.target.arity();
  std::vector<std::vector<std::int64_t>> sides(2, std::vector<std::int64_t>(classes, 0));
  for (std::size_t r : order) ++sides[1][static_cast<std::size_t>(dataset.labels[r])];

  Binarization best;
  bool found = false;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const auto label = static_cast<std::size_t>(dataset.labels[order[i]]);
    --sides[1][label];
    ++sides[0][label];
    const double here = v[order[i]];
    const double next = v[order[i + 1]];
    if (here == next) continue;
    const auto view = ContingencyView::from_table(attribute, sides);
    const double ratio_here = gain_ratio(view);
    if (!found || ratio_here > best.gain_ratio) {
      found = true;
      best.gain_ratio = ratio_here;
      best.information_gain = information_gain(view);
      best.threshold = here + (next - here) / 2.0;
    }
  }

  const std::string theta = format_number(best.threshold);
  best.data = dataset;
  best.data.attributes[attribute] = Attribute{attr.name, false, {"<=" + theta, ">" + theta}};
  best.data.values[attribute].clear();
  auto& codes = best.data.codes[attribute];
  codes.assign(dataset.rows(), kMissing);
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    if (std::isnan(v[r])) continue;
    codes[r] = v[r] <= best.threshold ? 0 : 1;
  }
  return best;
}

}  // namespace dnpi
