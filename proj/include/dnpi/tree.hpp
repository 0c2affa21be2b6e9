// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnpi/ci_split.hpp"
#include "dnpi/dataset.hpp"
#include "dnpi/npi.hpp"

namespace dnpi {

enum class Algorithm { kDnpi, kGainRatio };

std::string algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

struct BuildParams {
  std::size_t min_split = 2;
  Algorithm algorithm = Algorithm::kDnpi;
};

// Flat node storage, root at index 0. Internal nodes keep one child slot per
// schema category of their attribute; an empty slot routes to the node's
// fallback class (its training majority).
struct TreeNode {
  std::optional<std::size_t> attribute;  // nullopt for leaves
  std::size_t label = 0;                 // leaf class, or fallback class
  std::vector<std::optional<std::size_t>> children;
  std::vector<std::int64_t> class_counts;

  bool is_leaf() const { return !attribute.has_value(); }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree(std::vector<Attribute> attributes, Attribute target, std::vector<TreeNode> nodes);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& target() const { return target_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }

  std::size_t depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<Attribute> attributes_;
  Attribute target_;
  std::vector<TreeNode> nodes_;
};

// Interval for simply predicting the node's most common class: the Bernoulli
// next-observation interval for a two-class target, the NPI-M singleton
// interval of the largest class otherwise.
ProbabilityInterval no_attribute_interval(std::span<const std::int64_t> class_counts,
                                          std::size_t target_arity);

struct SplitCandidate {
  CIScore score;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct SplitDecision {
  ProbabilityInterval no_attribute;
  std::vector<SplitCandidate> candidates;  // same order as the attribute list
  std::optional<std::size_t> chosen;       // attribute index
};

// Scores every listed attribute on the given rows. Survivors must beat both
// no-attribute bounds strictly; the winner has the greatest CI lower bound,
// then the greatest upper bound, then comes first in schema order.
SplitDecision select_split_dnpi(const Dataset& data, std::span<const std::size_t> rows,
                                std::span<const std::size_t> attributes);

// Attribute with the largest gain ratio among those with positive gain.
std::optional<std::size_t> select_split_gain_ratio(const Dataset& data,
                                                   std::span<const std::size_t> rows,
                                                   std::span<const std::size_t> attributes);

ContingencyView tabulate(const Dataset& data, std::span<const std::size_t> rows,
                         std::size_t attribute);

DecisionTree build_tree(const Dataset& data, std::span<const std::size_t> rows,
                        const BuildParams& params);
DecisionTree build_tree(const Dataset& data, const BuildParams& params);
DecisionTree build_dnpi(const Dataset& data, BuildParams params = {});
DecisionTree build_gain_ratio_tree(const Dataset& data, BuildParams params = {});

// Walks the tree on per-attribute category codes. Missing or unseen values
// stop at the current node's fallback class.
std::size_t classify(const DecisionTree& tree, std::span<const int> instance);
std::size_t classify(const DecisionTree& tree, const Dataset& data, std::size_t row);

// Number of leaves.
std::size_t tree_size(const DecisionTree& tree);

// Rows reaching each node, indexed like DecisionTree::nodes(). Replaying a
// build on its training rows recovers every node's training subset.
std::vector<std::vector<std::size_t>> node_rows(const DecisionTree& tree, const Dataset& data,
                                                std::span<const std::size_t> rows);

}  // namespace dnpi
