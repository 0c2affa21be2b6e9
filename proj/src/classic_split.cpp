// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/classic_split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dnpi/errors.hpp"

namespace dnpi {

namespace {

// -sum (w_i / W) log2 (w_i / W) over nonzero weights.
double weighted_entropy(std::span<const std::int64_t> weights) {
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  double h = 0.0;
  for (std::int64_t w : weights) {
    if (w <= 0) continue;
    const double p = static_cast<double>(w) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<std::int64_t> class_totals(const ContingencyView& view) {
  std::vector<std::int64_t> totals(view.num_classes());
  for (std::size_t y = 0; y < view.num_classes(); ++y) totals[y] = view.class_total(y);
  return totals;
}

}  // namespace

double entropy(std::span<const std::int64_t> class_counts) {
  std::int64_t total = 0;
  for (std::int64_t c : class_counts) {
    if (c < 0) throw DomainError("negative class count");
    total += c;
  }
  if (total == 0) throw DomainError("entropy of an empty set");
  return weighted_entropy(class_counts);
}

double information_gain(const ContingencyView& view) {
  if (view.node_total() < 1) throw DomainError("information gain at an empty node");
  const auto totals = class_totals(view);
  double remainder = 0.0;
  std::vector<std::int64_t> row(view.num_classes());
  for (std::size_t c = 0; c < view.num_categories(); ++c) {
    const std::int64_t size = view.category_total(c);
    if (size == 0) continue;
    for (std::size_t y = 0; y < view.num_classes(); ++y) row[y] = view.count(c, y);
    remainder += static_cast<double>(size) / static_cast<double>(view.node_total()) *
                 weighted_entropy(row);
  }
  // Clamp rounding noise so perfectly independent attributes report 0.
  return std::max(0.0, weighted_entropy(totals) - remainder);
}

double split_information(const ContingencyView& view) {
  if (view.node_total() < 1) throw DomainError("split information at an empty node");
  std::vector<std::int64_t> sizes(view.num_categories());
  for (std::size_t c = 0; c < view.num_categories(); ++c) sizes[c] = view.category_total(c);
  return weighted_entropy(sizes);
}

double gain_ratio(const ContingencyView& view) {
  const double si = split_information(view);
  if (si <= 0.0) return 0.0;
  return information_gain(view) / si;
}

}  // namespace dnpi
