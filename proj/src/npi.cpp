// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/npi.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dnpi/errors.hpp"

namespace dnpi {

ProbabilityInterval ProbabilityInterval::make(Rational lower, Rational upper) {
  if (lower < 0 || upper > 1 || lower > upper) {
    throw DomainError("invalid probability interval [" + lower.get_str() + ", " +
                      upper.get_str() + "]");
  }
  return ProbabilityInterval(std::move(lower), std::move(upper));
}

std::int64_t MultinomialCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t MultinomialCounts::observed_categories() const {
  return std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; });
}

namespace {

void check_record(const BernoulliRecord& record) {
  if (record.trials < 0 || record.successes < 0 || record.successes > record.trials) {
    throw DomainError("Bernoulli record needs 0 <= s <= n, got n=" +
                      std::to_string(record.trials) + " s=" + std::to_string(record.successes));
  }
}

void check_outcomes(const BernoulliEventSpec& event, bool allow_empty) {
  if (event.future_trials < 1) throw DomainError("Bernoulli event needs m >= 1");
  if (!allow_empty && event.outcomes.empty()) throw DomainError("Bernoulli event set is empty");
  std::int64_t previous = -1;
  for (std::int64_t r : event.outcomes) {
    if (r < 0 || r > event.future_trials) {
      throw DomainError("outcome " + std::to_string(r) + " outside [0, " +
                        std::to_string(event.future_trials) + "]");
    }
    if (r <= previous) throw DomainError("outcome set must be strictly increasing");
    previous = r;
  }
}

// The binomial sum itself; an empty outcome set gives 0.
Rational upper_sum(const BernoulliRecord& record, const BernoulliEventSpec& event) {
  const auto n = static_cast<unsigned long>(record.trials);
  const auto s = static_cast<unsigned long>(record.successes);
  const auto m = static_cast<unsigned long>(event.future_trials);
  mpz_class sum = 0;
  mpz_class previous = 0;  // C(s + r_0, s) := 0
  for (std::int64_t r_signed : event.outcomes) {
    const auto r = static_cast<unsigned long>(r_signed);
    mpz_class current = binomial(s + r, s);
    sum += (current - previous) * binomial(n - s + m - r, n - s);
    previous = current;
  }
  Rational out(sum, binomial(n + m, n));
  out.canonicalize();
  return out;
}

}  // namespace

Rational bernoulli_event_upper(const BernoulliRecord& record, const BernoulliEventSpec& event) {
  check_record(record);
  check_outcomes(event, false);
  return upper_sum(record, event);
}

Rational bernoulli_event_lower(const BernoulliRecord& record, const BernoulliEventSpec& event) {
  check_record(record);
  check_outcomes(event, false);
  BernoulliEventSpec complement{event.future_trials, {}};
  auto it = event.outcomes.begin();
  for (std::int64_t r = 0; r <= event.future_trials; ++r) {
    if (it != event.outcomes.end() && *it == r) {
      ++it;
    } else {
      complement.outcomes.push_back(r);
    }
  }
  return 1 - upper_sum(record, complement);
}

ProbabilityInterval bernoulli_next_interval(const BernoulliRecord& record) {
  check_record(record);
  return ProbabilityInterval::make(ratio(record.successes, record.trials + 1),
                                   ratio(record.successes + 1, record.trials + 1));
}

namespace {

void check_counts(const MultinomialCounts& counts) {
  for (std::int64_t c : counts.counts) {
    if (c < 0) throw DomainError("negative category count");
  }
  if (counts.total() < 1) throw DomainError("NPI-M needs at least one observation");
  if (counts.universe_size < counts.observed_categories()) {
    throw DomainError("declared category count K=" + std::to_string(counts.universe_size) +
                      " is below the observed count k=" +
                      std::to_string(counts.observed_categories()));
  }
}

}  // namespace

ProbabilityInterval multinomial_event_interval(const MultinomialCounts& counts,
                                               const MultinomialEventSpec& event) {
  check_counts(counts);
  const std::int64_t n = counts.total();
  const std::int64_t k = counts.observed_categories();
  const std::int64_t big_k = counts.universe_size;

  std::vector<std::size_t> members = event.observed_members;
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw DomainError("duplicate category in event");
  }
  std::int64_t member_total = 0;
  for (std::size_t j : members) {
    if (j >= counts.counts.size() || counts.counts[j] == 0) {
      throw DomainError("event member " + std::to_string(j) + " is not an observed category");
    }
    member_total += counts.counts[j];
  }
  const auto r = static_cast<std::int64_t>(members.size());
  const std::int64_t l = event.unobserved_count;
  if (l < 0 || l > big_k - k) {
    throw DomainError("event includes " + std::to_string(l) + " unobserved categories but only " +
                      std::to_string(big_k - k) + " exist");
  }
  const std::int64_t lower = member_total - r + std::max<std::int64_t>(2 * r + l - big_k, 0);
  const std::int64_t upper = member_total - r + std::min<std::int64_t>(2 * r + l, k);
  return ProbabilityInterval::make(ratio(lower, n), ratio(upper, n));
}

ProbabilityInterval multinomial_singleton_interval(const MultinomialCounts& counts,
                                                   std::size_t index) {
  check_counts(counts);
  if (index >= counts.counts.size() || counts.counts[index] == 0) {
    throw DomainError("singleton bounds need an observed category");
  }
  const std::int64_t n = counts.total();
  const std::int64_t n_i = counts.counts[index];
  return ProbabilityInterval::make(std::max(Rational(0), Rational(ratio(n_i - 1, n))),
                                   std::min(Rational(1), Rational(ratio(n_i + 1, n))));
}

}  // namespace dnpi
