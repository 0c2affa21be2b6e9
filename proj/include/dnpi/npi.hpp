// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dnpi/rational.hpp"

namespace dnpi {

// Lower/upper probability pair. Constructed only through the checked
// factory so 0 <= lower <= upper <= 1 always holds.
class ProbabilityInterval {
 public:
  ProbabilityInterval() : lower_(0), upper_(1) {}
  static ProbabilityInterval make(Rational lower, Rational upper);

  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }
  Rational imprecision() const { return upper_ - lower_; }

  friend bool operator==(const ProbabilityInterval& a, const ProbabilityInterval& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  ProbabilityInterval(Rational lower, Rational upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {}
  Rational lower_;
  Rational upper_;
};

// s successes observed in n exchangeable Bernoulli trials.
struct BernoulliRecord {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
};

// Event "the number of successes among the next `future_trials` trials lies
// in `outcomes`". Outcomes must be strictly increasing within [0, m].
struct BernoulliEventSpec {
  std::int64_t future_trials = 1;
  std::vector<std::int64_t> outcomes;
};

// Per-category counts with the declared size K of the category universe.
// Categories with count zero are the unobserved ones.
struct MultinomialCounts {
  std::vector<std::int64_t> counts;
  std::int64_t universe_size = 0;

  std::int64_t total() const;
  std::int64_t observed_categories() const;
};

// Event "the next observation falls in one of these categories". The
// observed part indexes into MultinomialCounts::counts (entries with n_i > 0);
// unobserved categories are interchangeable so only their number matters.
struct MultinomialEventSpec {
  std::vector<std::size_t> observed_members;
  std::int64_t unobserved_count = 0;
};

// NPI upper probability for a Bernoulli event, summed term by term from the
// binomial expression (no resummation).
Rational bernoulli_event_upper(const BernoulliRecord& record, const BernoulliEventSpec& event);

// Conjugate of the upper probability of the complementary outcome set.
Rational bernoulli_event_lower(const BernoulliRecord& record, const BernoulliEventSpec& event);

// m = 1 case: [s/(n+1), (s+1)/(n+1)].
ProbabilityInterval bernoulli_next_interval(const BernoulliRecord& record);

// NPI-M bounds for a union of categories with K known.
ProbabilityInterval multinomial_event_interval(const MultinomialCounts& counts,
                                               const MultinomialEventSpec& event);

// NPI-M bounds for the single observed category `index`.
ProbabilityInterval multinomial_singleton_interval(const MultinomialCounts& counts,
                                                   std::size_t index);

}  // namespace dnpi
