// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dnpi {

inline constexpr int kMissing = -1;

struct Attribute {
  std::string name;
  bool numeric = false;
  std::vector<std::string> labels;  // declared categories, in schema order

  std::size_t arity() const { return labels.size(); }
  std::optional<std::size_t> find(std::string_view label) const;
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Column-major table: one categorical code column and one numeric column per
// attribute (only the one matching the attribute kind is populated), plus
// the class codes. Missing categorical cells hold kMissing, missing numeric
// cells hold NaN.
struct Dataset {
  std::string name;
  std::vector<Attribute> attributes;
  Attribute target;
  std::vector<std::vector<int>> codes;
  std::vector<std::vector<double>> values;
  std::vector<int> labels;

  std::size_t rows() const { return labels.size(); }
  std::size_t attribute_index(std::string_view attribute_name) const;
  bool all_categorical() const;
  bool has_missing() const;
  bool is_missing(std::size_t attribute, std::size_t row) const;
};

// Optional sidecar describing column types, declared labels and the class
// column. Stored as JSON.
struct Schema {
  std::string class_column;
  std::string missing_marker = "?";
  std::vector<Attribute> attributes;
  std::vector<std::string> class_labels;

  const Attribute* find(std::string_view attribute_name) const;
};

Schema load_schema(const std::string& path);
Schema schema_of(const Dataset& dataset);
void save_schema(const Schema& schema, const std::string& path);
std::string schema_to_json(const Schema& schema);
Schema schema_from_json(const std::string& text);

struct CsvOptions {
  std::string class_column;  // empty: last column
  std::string missing_marker = "?";
  bool require_class = true;
  bool force_categorical = false;
  std::optional<Schema> schema;
};

Dataset load_csv(std::istream& in, const CsvOptions& options);
Dataset load_csv(const std::string& path, const CsvOptions& options);
void write_csv(const Dataset& dataset, std::ostream& out, const std::string& missing_marker = "?");

// Replaces missing cells by the column mode (first label in schema order, or
// the smallest value for numeric columns, on ties).
Dataset impute_modal(const Dataset& dataset);

// Cut points at ranks floor(j * N / bins), j = 1 .. bins-1, of the sorted
// non-missing values. Bins are closed on the left.
std::vector<double> equal_frequency_cuts(std::vector<double> values, std::size_t bins);

Dataset discretize_equal_frequency(const Dataset& dataset, std::size_t attribute,
                                   std::size_t bins = 3, std::vector<std::string> labels = {});

struct Binarization {
  Dataset data;
  double threshold = 0.0;
  double gain_ratio = 0.0;
  double information_gain = 0.0;
};

// Two-way split of a numeric attribute at the midpoint threshold with the
// largest gain ratio against the class; ties keep the smallest threshold.
Binarization binarize_by_gain_ratio(const Dataset& dataset, std::size_t attribute);

std::string format_number(double value);

}  // namespace dnpi
