// Apache License, Version 2.0, refer to LICENSE.txt

#include <random>

#include "doctest.h"

#include "dnpi/classic_split.hpp"
#include "dnpi/errors.hpp"
#include "oracles.hpp"

using namespace dnpi;

TEST_CASE("entropy") {
  const std::int64_t even[] = {5, 5};
  const std::int64_t pure[] = {10, 0};
  const std::int64_t nine_five[] = {9, 5};
  const std::int64_t none[] = {0, 0};
  CHECK(entropy(even) == doctest::Approx(1.0));
  CHECK(entropy(pure) == 0.0);
  CHECK(entropy(nine_five) == doctest::Approx(0.940286).epsilon(1e-6));
  CHECK(entropy(nine_five) == doctest::Approx(oracle::entropy_bits({9, 5})).epsilon(1e-12));
  CHECK_THROWS_AS(entropy(none), DomainError);
}

TEST_CASE("information gain bounds") {
  auto independent = ContingencyView::from_table(0, {{2, 4}, {1, 2}, {3, 6}});
  CHECK(information_gain(independent) == doctest::Approx(0.0).epsilon(1e-12));
  auto perfect = ContingencyView::from_table(0, {{5, 0}, {0, 7}});
  CHECK(information_gain(perfect) == doctest::Approx(oracle::entropy_bits({5, 7})));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::int64_t>> t(3, std::vector<std::int64_t>(3));
    std::vector<double> totals(3, 0);
    for (auto& row : t) {
      for (std::size_t c = 0; c < 3; ++c) totals[c] += static_cast<double>(row[c] = pick(rng));
    }
    if (totals[0] + totals[1] + totals[2] == 0) continue;
    auto view = ContingencyView::from_table(0, t);
    const double gain = information_gain(view);
    CHECK(gain >= 0.0);
    CHECK(gain <= oracle::entropy_bits(totals) + 1e-12);
  }
}

TEST_CASE("split information") {
  auto halves = ContingencyView::from_table(0, {{3, 1}, {2, 2}});
  CHECK(split_information(halves) == doctest::Approx(1.0));
  auto single = ContingencyView::from_table(0, {{3, 1}, {0, 0}});
  CHECK(split_information(single) == 0.0);
  // branch sizes (2,4,6): -(1/6)log2(1/6) - (1/3)log2(1/3) - (1/2)log2(1/2)
  auto three = ContingencyView::from_table(0, {{1, 1}, {4, 0}, {3, 3}});
  const double hand = (1.0 / 6) * std::log2(6.0) + (1.0 / 3) * std::log2(3.0) + 0.5;
  CHECK(split_information(three) == doctest::Approx(hand).epsilon(1e-9));
  CHECK(hand == doctest::Approx(1.459148).epsilon(1e-6));
}

TEST_CASE("gain ratio") {
  auto single = ContingencyView::from_table(0, {{3, 1}, {0, 0}});
  CHECK(gain_ratio(single) == 0.0);
  auto perfect = ContingencyView::from_table(0, {{6, 0}, {0, 6}});
  CHECK(gain_ratio(perfect) == doctest::Approx(1.0));

  // 3x2 table evaluated independently
  std::vector<std::vector<double>> t{{4, 1}, {2, 3}, {0, 5}};
  auto view = ContingencyView::from_table(0, {{4, 1}, {2, 3}, {0, 5}});
  const double n = 15;
  double children = 0, si = 0;
  for (const auto& row : t) {
    const double size = row[0] + row[1];
    children += size / n * oracle::entropy_bits(row);
    si -= size / n * std::log2(size / n);
  }
  const double gain = oracle::entropy_bits({6, 9}) - children;
  CHECK(gain_ratio(view) == doctest::Approx(gain / si).epsilon(1e-9));

  // duplicating every instance leaves the ratio alone
  auto doubled = ContingencyView::from_table(0, {{8, 2}, {4, 6}, {0, 10}});
  CHECK(gain_ratio(doubled) == doctest::Approx(gain_ratio(view)).epsilon(1e-12));
}
