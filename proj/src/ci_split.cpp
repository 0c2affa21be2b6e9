// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/ci_split.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "dnpi/errors.hpp"

namespace dnpi {

namespace {

void check_link(const ContingencyView& view, const std::vector<std::size_t>& class_link) {
  if (class_link.size() != view.num_categories()) {
    throw DomainError("class link has " + std::to_string(class_link.size()) +
                      " entries for a view with " + std::to_string(view.num_categories()) +
                      " categories");
  }
  for (std::size_t label : class_link) {
    if (label >= view.num_classes()) throw DomainError("class link points past the class list");
  }
}

Rational lower_fraction(const ContingencyView& view, std::size_t c, std::size_t label) {
  return ratio(view.count(c, label), view.category_total(c) + 1);
}

Rational upper_fraction(const ContingencyView& view, std::size_t c, std::size_t label) {
  return ratio(view.count(c, label) + 1, view.category_total(c) + 1);
}

Rational weighted_sum(const std::vector<Rational>& fractions, const std::vector<Rational>& masses) {
  Rational sum = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) sum += fractions[i] * masses[i];
  return sum;
}

// One observed category: it indicates its linked class with certainty of
// occurrence, so the score is just its conditional interval.
CIScore single_category_score(const ContingencyView& view,
                              const std::vector<std::size_t>& class_link) {
  std::optional<std::size_t> only;
  for (std::size_t c = 0; c < view.num_categories(); ++c) {
    if (view.category_total(c) > 0) only = c;
  }
  if (!only) throw DomainError("cannot score an attribute at an empty node");
  CIScore score;
  score.attribute = view.attribute();
  score.interval = conditional_class_interval(view, *only, class_link[*only]);
  score.lower_masses.assign(view.num_categories(), Rational(0));
  score.lower_masses[*only] = 1;
  score.upper_masses = score.lower_masses;
  return score;
}

// Greedy assignment over the box-and-simplex structure; see ci_multinomial.
std::vector<Rational> greedy_masses(const std::vector<Rational>& fractions,
                                    const ContingencyView& view, Direction direction) {
  const std::size_t k = fractions.size();
  const std::int64_t n = view.node_total();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fractions[a] < fractions[b]; });

  std::vector<Rational> masses(k);
  for (std::size_t i = 0; i < k; ++i) masses[i] = ratio(view.category_total(i) - 1, n);

  const Rational two_slices = ratio(2, n);
  const std::size_t pairs = k / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const std::size_t target = direction == Direction::kMinimize ? order[j] : order[k - 1 - j];
    masses[target] += two_slices;
  }
  if (k % 2 == 1) masses[order[pairs]] += ratio(1, n);
  return masses;
}

}  // namespace

CIScore ci_binary(const ContingencyView& view) { return ci_binary(view, majority_class_map(view)); }

CIScore ci_binary(const ContingencyView& view, const std::vector<std::size_t>& class_link) {
  if (view.num_categories() != 2) {
    throw DomainError("binary CI needs a two-category attribute, got " +
                      std::to_string(view.num_categories()));
  }
  check_link(view, class_link);
  if (view.node_total() < 1) throw DomainError("cannot score an attribute at an empty node");
  if (view.observed_categories() == 1) return single_category_score(view, class_link);

  const std::int64_t n = view.node_total();
  const std::int64_t n_one = view.category_total(1);
  const Rational p_low = ratio(n_one, n + 1);
  const Rational p_high = ratio(n_one + 1, n + 1);

  const Rational f0 = lower_fraction(view, 0, class_link[0]);
  const Rational f1 = lower_fraction(view, 1, class_link[1]);
  const Rational g0 = upper_fraction(view, 0, class_link[0]);
  const Rational g1 = upper_fraction(view, 1, class_link[1]);

  const Rational p_lower_bound = f0 >= f1 ? p_high : p_low;
  const Rational p_upper_bound = g0 <= g1 ? p_high : p_low;

  CIScore score;
  score.attribute = view.attribute();
  score.interval = ProbabilityInterval::make(f0 * (1 - p_lower_bound) + f1 * p_lower_bound,
                                             g0 * (1 - p_upper_bound) + g1 * p_upper_bound);
  score.lower_masses = {1 - p_lower_bound, p_lower_bound};
  score.upper_masses = {1 - p_upper_bound, p_upper_bound};
  return score;
}

CIScore ci_multinomial(const ContingencyView& view, const std::vector<std::size_t>& class_link) {
  check_link(view, class_link);
  const std::size_t k = view.num_categories();
  if (k == 0 || view.node_total() < 1) throw DomainError("cannot score an attribute at an empty node");
  for (std::size_t c = 0; c < k; ++c) {
    if (view.category_total(c) == 0) {
      throw InternalError("multinomial CI received empty category " + std::to_string(c));
    }
  }
  if (k == 1) return single_category_score(view, class_link);

  std::vector<Rational> f(k);
  std::vector<Rational> g(k);
  for (std::size_t c = 0; c < k; ++c) {
    f[c] = lower_fraction(view, c, class_link[c]);
    g[c] = upper_fraction(view, c, class_link[c]);
  }
  CIScore score;
  score.attribute = view.attribute();
  score.lower_masses = greedy_masses(f, view, Direction::kMinimize);
  score.upper_masses = greedy_masses(g, view, Direction::kMaximize);
  score.interval = ProbabilityInterval::make(weighted_sum(f, score.lower_masses),
                                             weighted_sum(g, score.upper_masses));
  return score;
}

Rational ci_polytope_oracle(const ContingencyView& view, const std::vector<std::size_t>& class_link,
                            Direction direction) {
  check_link(view, class_link);
  const std::size_t k = view.num_categories();
  if (k < 1 || k > 8) throw DomainError("polytope oracle supports 1 <= k <= 8");
  const std::int64_t n = view.node_total();
  std::vector<Rational> fraction(k);
  std::vector<Rational> low(k);
  std::vector<Rational> high(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::int64_t n_c = view.category_total(c);
    if (n_c == 0) throw DomainError("polytope oracle needs every category observed");
    fraction[c] = direction == Direction::kMinimize ? lower_fraction(view, c, class_link[c])
                                                    : upper_fraction(view, c, class_link[c]);
    low[c] = ratio(n_c - 1, n);
    high[c] = ratio(n_c + 1, n);
  }

  // A vertex pins every coordinate to a box endpoint except at most one,
  // which the simplex constraint then determines.
  std::optional<Rational> best;
  std::vector<Rational> p(k);
  for (std::size_t free = 0; free <= k; ++free) {  // free == k: no free coordinate
    const std::size_t pinned = free == k ? k : k - 1;
    for (std::uint32_t mask = 0; mask < (1u << pinned); ++mask) {
      Rational sum = 0;
      std::size_t bit = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == free) continue;
        p[c] = (mask >> bit++) & 1u ? high[c] : low[c];
        sum += p[c];
      }
      if (free == k) {
        if (sum != 1) continue;
      } else {
        p[free] = 1 - sum;
        if (p[free] < low[free] || p[free] > high[free]) continue;
      }
      Rational value = weighted_sum(fraction, p);
      if (!best || (direction == Direction::kMinimize ? value < *best : value > *best)) {
        best = std::move(value);
      }
    }
  }
  if (!best) throw InternalError("CI polytope is infeasible");
  return *best;
}

CIScore score_attribute(const ContingencyView& view) {
  if (view.node_total() < 1) throw DomainError("cannot score an attribute at an empty node");
  const std::vector<std::size_t> link = majority_class_map(view);
  if (view.num_categories() == 2) return ci_binary(view, link);
  if (view.observed_categories() == 1) return single_category_score(view, link);

  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < view.num_categories(); ++c) {
    if (view.category_total(c) > 0) kept.push_back(c);
  }
  ContingencyView compact(view.attribute(), kept.size(), view.num_classes());
  std::vector<std::size_t> compact_link(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t y = 0; y < view.num_classes(); ++y) compact.add(i, y, view.count(kept[i], y));
    compact_link[i] = link[kept[i]];
  }
  CIScore inner = ci_multinomial(compact, compact_link);

  CIScore score;
  score.attribute = view.attribute();
  score.interval = inner.interval;
  score.lower_masses.assign(view.num_categories(), Rational(0));
  score.upper_masses.assign(view.num_categories(), Rational(0));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    score.lower_masses[kept[i]] = inner.lower_masses[i];
    score.upper_masses[kept[i]] = inner.upper_masses[i];
  }
  return score;
}

}  // namespace dnpi
