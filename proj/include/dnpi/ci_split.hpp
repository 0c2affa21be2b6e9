// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <vector>

#include "dnpi/contingency.hpp"
#include "dnpi/npi.hpp"

namespace dnpi {

// Correct Indication interval for one attribute, with the category masses
// that attain each bound. Mass vectors follow the view's category order and
// carry zero for categories that are empty at the node.
struct CIScore {
  std::size_t attribute = 0;
  ProbabilityInterval interval;
  std::vector<Rational> lower_masses;
  std::vector<Rational> upper_masses;
};

enum class Direction { kMinimize, kMaximize };

// Two-category attribute. The category probability p ranges over the
// Bernoulli next-observation interval [n(t=1)/(n+1), (n(t=1)+1)/(n+1)] and the
// endpoint is chosen per bound. Each category is linked to its majority class
// unless a link is supplied.
CIScore ci_binary(const ContingencyView& view);
CIScore ci_binary(const ContingencyView& view, const std::vector<std::size_t>& class_link);

// Attribute with every category observed (n_i >= 1). Masses start at
// (n_i - 1)/n; the k leftover slices go two per category to the smallest
// (lower bound) or largest (upper bound) fractions, the odd one to the middle.
CIScore ci_multinomial(const ContingencyView& view, const std::vector<std::size_t>& class_link);

// Optimises sum_i fraction_i * p_i over {(n_i-1)/n <= p_i <= (n_i+1)/n,
// sum p_i = 1} by enumerating vertices of the polytope. Independent check on
// ci_multinomial; only for views with every category observed and k <= 8.
Rational ci_polytope_oracle(const ContingencyView& view, const std::vector<std::size_t>& class_link,
                            Direction direction);

// Score an attribute as the tree does: drop empty categories, use the
// binary rule for two-category schemas and the multinomial rule otherwise.
// A single observed category scores its conditional interval with p = 1.
CIScore score_attribute(const ContingencyView& view);

}  // namespace dnpi
