// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/contingency.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dnpi/errors.hpp"

namespace dnpi {

ContingencyView::ContingencyView(std::size_t attribute, std::size_t num_categories,
                                 std::size_t num_classes)
    : attribute_(attribute),
      num_classes_(num_classes),
      table_(num_categories, std::vector<std::int64_t>(num_classes, 0)) {
  if (num_classes == 0) throw DomainError("contingency view needs at least one class");
}

ContingencyView ContingencyView::from_table(std::size_t attribute,
                                            std::vector<std::vector<std::int64_t>> table) {
  const std::size_t classes = table.empty() ? 0 : table.front().size();
  ContingencyView view(attribute, table.size(), classes);
  for (std::size_t c = 0; c < table.size(); ++c) {
    if (table[c].size() != classes) throw DomainError("ragged contingency table");
    for (std::size_t y = 0; y < classes; ++y) view.add(c, y, table[c][y]);
  }
  return view;
}

void ContingencyView::add(std::size_t category, std::size_t label, std::int64_t count) {
  if (category >= table_.size()) {
    throw DomainError("unknown category index " + std::to_string(category));
  }
  if (label >= num_classes_) throw DomainError("unknown class index " + std::to_string(label));
  if (count < 0 || table_[category][label] + count < 0) throw DomainError("negative count");
  table_[category][label] += count;
  node_total_ += count;
}

std::int64_t ContingencyView::count(std::size_t category, std::size_t label) const {
  if (category >= table_.size()) {
    throw DomainError("unknown category index " + std::to_string(category));
  }
  if (label >= num_classes_) throw DomainError("unknown class index " + std::to_string(label));
  return table_[category][label];
}

std::int64_t ContingencyView::category_total(std::size_t category) const {
  if (category >= table_.size()) {
    throw DomainError("unknown category index " + std::to_string(category));
  }
  const auto& row = table_[category];
  return std::accumulate(row.begin(), row.end(), std::int64_t{0});
}

std::int64_t ContingencyView::class_total(std::size_t label) const {
  if (label >= num_classes_) throw DomainError("unknown class index " + std::to_string(label));
  std::int64_t total = 0;
  for (const auto& row : table_) total += row[label];
  return total;
}

std::size_t ContingencyView::observed_categories() const {
  std::size_t k = 0;
  for (std::size_t c = 0; c < table_.size(); ++c) k += category_total(c) > 0 ? 1 : 0;
  return k;
}

std::size_t ContingencyView::majority_class() const {
  std::size_t best = 0;
  for (std::size_t y = 1; y < num_classes_; ++y) {
    if (class_total(y) > class_total(best)) best = y;
  }
  return best;
}

ProbabilityInterval conditional_class_interval(const ContingencyView& view, std::size_t category,
                                               std::size_t label) {
  const std::int64_t in_class = view.count(category, label);
  const std::int64_t total = view.category_total(category);
  return ProbabilityInterval::make(ratio(in_class, total + 1), ratio(in_class + 1, total + 1));
}

std::vector<std::size_t> majority_class_map(const ContingencyView& view) {
  const std::size_t fallback = view.majority_class();
  std::vector<std::size_t> link(view.num_categories(), fallback);
  for (std::size_t c = 0; c < view.num_categories(); ++c) {
    if (view.category_total(c) == 0) continue;
    std::size_t best = 0;
    for (std::size_t y = 1; y < view.num_classes(); ++y) {
      if (view.count(c, y) > view.count(c, best)) best = y;
    }
    link[c] = best;
  }
  return link;
}

}  // namespace dnpi
