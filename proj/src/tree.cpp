// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dnpi/classic_split.hpp"
#include "dnpi/errors.hpp"

namespace dnpi {

std::string algorithm_name(Algorithm algorithm) {
  return algorithm == Algorithm::kDnpi ? "dnpi" : "gain_ratio";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dnpi") return Algorithm::kDnpi;
  if (name == "gain_ratio") return Algorithm::kGainRatio;
  throw DomainError("unknown algorithm '" + name + "' (expected dnpi or gain_ratio)");
}

DecisionTree::DecisionTree(std::vector<Attribute> attributes, Attribute target,
                           std::vector<TreeNode> nodes)
    : attributes_(std::move(attributes)), target_(std::move(target)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DomainError("a tree needs at least one node");
  for (const TreeNode& node : nodes_) {
    if (node.label >= target_.arity()) throw DomainError("node class outside the class list");
    if (node.is_leaf()) continue;
    if (*node.attribute >= attributes_.size()) throw DomainError("node attribute out of range");
    if (node.children.size() != attributes_[*node.attribute].arity()) {
      throw DomainError("internal node needs one child slot per category");
    }
    for (const auto& child : node.children) {
      if (child && (*child == 0 || *child >= nodes_.size())) {
        throw DomainError("child index out of range");
      }
    }
  }
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    const TreeNode& node = nodes_[i];
    std::size_t deepest = 0;
    for (const auto& child : node.children) {
      if (child) deepest = std::max(deepest, 1 + walk(*child));
    }
    return deepest;
  };
  return walk(0);
}

namespace {

std::size_t argmax(std::span<const std::int64_t> counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return best;
}

std::vector<std::int64_t> class_counts(const Dataset& data, std::span<const std::size_t> rows) {
  std::vector<std::int64_t> counts(data.target.arity(), 0);
  for (std::size_t r : rows) ++counts[static_cast<std::size_t>(data.labels[r])];
  return counts;
}

void check_training_data(const Dataset& data, std::span<const std::size_t> rows) {
  if (rows.empty()) throw DomainError("cannot build a tree from an empty dataset");
  if (data.target.arity() == 0) throw DomainError("dataset declares no class labels");
  for (const Attribute& a : data.attributes) {
    if (a.numeric) {
      throw DomainError("attribute '" + a.name + "' is numeric; discretize or binarize it first");
    }
  }
  for (std::size_t r : rows) {
    if (r >= data.rows()) throw DomainError("row index out of range");
    if (data.labels[r] == kMissing) throw DomainError("training rows need class labels");
    for (std::size_t a = 0; a < data.attributes.size(); ++a) {
      if (data.codes[a][r] == kMissing) {
        throw DomainError("attribute '" + data.attributes[a].name +
                          "' has missing values; impute first");
      }
    }
  }
}

}  // namespace

ProbabilityInterval no_attribute_interval(std::span<const std::int64_t> class_counts,
                                          std::size_t target_arity) {
  const std::int64_t n = std::accumulate(class_counts.begin(), class_counts.end(), std::int64_t{0});
  if (n < 1) throw DomainError("no-attribute interval of an empty node");
  const std::size_t best = argmax(class_counts);
  if (target_arity <= 2) return bernoulli_next_interval({n, class_counts[best]});
  MultinomialCounts counts{{class_counts.begin(), class_counts.end()},
                           static_cast<std::int64_t>(target_arity)};
  return multinomial_singleton_interval(counts, best);
}

ContingencyView tabulate(const Dataset& data, std::span<const std::size_t> rows,
                         std::size_t attribute) {
  ContingencyView view(attribute, data.attributes[attribute].arity(), data.target.arity());
  const auto& column = data.codes[attribute];
  for (std::size_t r : rows) {
    view.add(static_cast<std::size_t>(column[r]), static_cast<std::size_t>(data.labels[r]));
  }
  return view;
}

SplitDecision select_split_dnpi(const Dataset& data, std::span<const std::size_t> rows,
                                std::span<const std::size_t> attributes) {
  if (rows.empty()) throw DomainError("cannot select a split at an empty node");
  const auto counts = class_counts(data, rows);
  SplitDecision decision{no_attribute_interval(counts, data.target.arity()), {}, std::nullopt};

  const SplitCandidate* best = nullptr;
  for (std::size_t attribute : attributes) {
    SplitCandidate candidate;
    candidate.score = score_attribute(tabulate(data, rows, attribute));
    candidate.lower_ok = candidate.score.interval.lower() > decision.no_attribute.lower();
    candidate.upper_ok = candidate.score.interval.upper() > decision.no_attribute.upper();
    decision.candidates.push_back(std::move(candidate));
  }
  for (const SplitCandidate& candidate : decision.candidates) {
    if (!candidate.lower_ok || !candidate.upper_ok) continue;
    if (best == nullptr) {
      best = &candidate;
      continue;
    }
    const auto& a = candidate.score.interval;
    const auto& b = best->score.interval;
    const bool better = a.lower() > b.lower() || (a.lower() == b.lower() && a.upper() > b.upper()) ||
                        (a.lower() == b.lower() && a.upper() == b.upper() &&
                         candidate.score.attribute < best->score.attribute);
    if (better) best = &candidate;
  }
  if (best) decision.chosen = best->score.attribute;
  return decision;
}

std::optional<std::size_t> select_split_gain_ratio(const Dataset& data,
                                                   std::span<const std::size_t> rows,
                                                   std::span<const std::size_t> attributes) {
  constexpr double kMinGain = 1e-12;
  std::vector<std::size_t> ordered(attributes.begin(), attributes.end());
  std::sort(ordered.begin(), ordered.end());
  std::optional<std::size_t> chosen;
  double best = 0.0;
  for (std::size_t attribute : ordered) {
    const ContingencyView view = tabulate(data, rows, attribute);
    if (information_gain(view) <= kMinGain) continue;
    const double ratio = gain_ratio(view);
    if (!chosen || ratio > best) {
      chosen = attribute;
      best = ratio;
    }
  }
  return chosen;
}

DecisionTree build_tree(const Dataset& data, std::span<const std::size_t> rows,
                        const BuildParams& params) {
  if (params.min_split < 2) throw DomainError("min_split must be at least 2");
  check_training_data(data, rows);

  std::vector<TreeNode> nodes;
  std::function<std::size_t(std::vector<std::size_t>, std::vector<std::size_t>)> grow =
      [&](std::vector<std::size_t> subset, std::vector<std::size_t> available) -> std::size_t {
    const std::size_t index = nodes.size();
    nodes.emplace_back();
    TreeNode node;
    node.class_counts = class_counts(data, subset);
    node.label = argmax(node.class_counts);

    const auto present = std::count_if(node.class_counts.begin(), node.class_counts.end(),
                                       [](std::int64_t c) { return c > 0; });
    std::optional<std::size_t> split;
    if (present > 1 && !available.empty() && subset.size() >= params.min_split) {
      if (params.algorithm == Algorithm::kDnpi) {
        split = select_split_dnpi(data, subset, available).chosen;
      } else {
        split = select_split_gain_ratio(data, subset, available);
      }
    }
    if (!split) {
      nodes[index] = std::move(node);
      return index;
    }

    node.attribute = *split;
    const std::size_t arity = data.attributes[*split].arity();
    std::vector<std::vector<std::size_t>> parts(arity);
    for (std::size_t r : subset) parts[static_cast<std::size_t>(data.codes[*split][r])].push_back(r);
    std::erase(available, *split);
    node.children.assign(arity, std::nullopt);
    for (std::size_t c = 0; c < arity; ++c) {
      if (parts[c].empty()) continue;
      node.children[c] = grow(std::move(parts[c]), available);
    }
    nodes[index] = std::move(node);
    return index;
  };

  std::vector<std::size_t> all_attributes(data.attributes.size());
  std::iota(all_attributes.begin(), all_attributes.end(), std::size_t{0});
  grow(std::vector<std::size_t>(rows.begin(), rows.end()), all_attributes);
  return DecisionTree(data.attributes, data.target, std::move(nodes));
}

DecisionTree build_tree(const Dataset& data, const BuildParams& params) {
  std::vector<std::size_t> rows(data.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return build_tree(data, rows, params);
}

DecisionTree build_dnpi(const Dataset& data, BuildParams params) {
  params.algorithm = Algorithm::kDnpi;
  return build_tree(data, params);
}

DecisionTree build_gain_ratio_tree(const Dataset& data, BuildParams params) {
  params.algorithm = Algorithm::kGainRatio;
  return build_tree(data, params);
}

std::size_t classify(const DecisionTree& tree, std::span<const int> instance) {
  std::size_t index = 0;
  while (true) {
    const TreeNode& node = tree.nodes()[index];
    if (node.is_leaf()) return node.label;
    const std::size_t attribute = *node.attribute;
    if (attribute >= instance.size()) {
      throw DomainError("instance has no value for attribute '" +
                        tree.attributes()[attribute].name + "'");
    }
    const int code = instance[attribute];
    if (code < 0 || static_cast<std::size_t>(code) >= node.children.size() ||
        !node.children[static_cast<std::size_t>(code)]) {
      return node.label;
    }
    index = *node.children[static_cast<std::size_t>(code)];
  }
}

std::size_t classify(const DecisionTree& tree, const Dataset& data, std::size_t row) {
  if (data.attributes.size() != tree.attributes().size()) {
    throw DomainError("dataset has " + std::to_string(data.attributes.size()) +
                      " attributes, the tree expects " +
                      std::to_string(tree.attributes().size()));
  }
  std::vector<int> instance(data.attributes.size());
  for (std::size_t a = 0; a < instance.size(); ++a) instance[a] = data.codes[a][row];
  return classify(tree, instance);
}

std::size_t tree_size(const DecisionTree& tree) {
  return static_cast<std::size_t>(std::count_if(tree.nodes().begin(), tree.nodes().end(),
                                                [](const TreeNode& n) { return n.is_leaf(); }));
}

std::vector<std::vector<std::size_t>> node_rows(const DecisionTree& tree, const Dataset& data,
                                                std::span<const std::size_t> rows) {
  std::vector<std::vector<std::size_t>> out(tree.nodes().size());
  for (std::size_t r : rows) {
    std::size_t index = 0;
    while (true) {
      out[index].push_back(r);
      const TreeNode& node = tree.nodes()[index];
      if (node.is_leaf()) break;
      const int code = data.codes[*node.attribute][r];
      if (code < 0 || !node.children[static_cast<std::size_t>(code)]) break;
      index = *node.children[static_cast<std::size_t>(code)];
    }
  }
  return out;
}

}  // namespace dnpi
