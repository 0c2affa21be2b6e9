// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dnpi/npi.hpp"

namespace dnpi {

// Cross-tabulation of one attribute's categories against the class labels at
// a tree node. Categories and classes are schema indices; categories with a
// zero total are kept so the view always spans the attribute's schema.
class ContingencyView {
 public:
  ContingencyView(std::size_t attribute, std::size_t num_categories, std::size_t num_classes);

  // Builds a view directly from a [category][class] table.
  static ContingencyView from_table(std::size_t attribute,
                                    std::vector<std::vector<std::int64_t>> table);

  void add(std::size_t category, std::size_t label, std::int64_t count = 1);

  std::size_t attribute() const { return attribute_; }
  std::size_t num_categories() const { return table_.size(); }
  std::size_t num_classes() const { return num_classes_; }

  std::int64_t count(std::size_t category, std::size_t label) const;
  std::int64_t category_total(std::size_t category) const;
  std::int64_t class_total(std::size_t label) const;
  std::int64_t node_total() const { return node_total_; }
  std::size_t observed_categories() const;

  // Largest class at the node, first in label order on ties.
  std::size_t majority_class() const;

 private:
  std::size_t attribute_;
  std::size_t num_classes_;
  std::vector<std::vector<std::int64_t>> table_;
  std::int64_t node_total_ = 0;
};

// [n^C(t=c)/(n(t=c)+1), (n^C(t=c)+1)/(n(t=c)+1)]; vacuous [0, 1] for an
// empty category.
ProbabilityInterval conditional_class_interval(const ContingencyView& view, std::size_t category,
                                               std::size_t label);

// Links every category to its most frequent class. Ties go to the earlier
// class label; empty categories inherit the node majority.
std::vector<std::size_t> majority_class_map(const ContingencyView& view);

}  // namespace dnpi
