// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <random>
#include <string>

#include "dnpi/dataset.hpp"

namespace testdata {

// Categorical data built in memory. Attribute a has arities[a] categories;
// the class depends on the first attribute with probability `signal`.
inline dnpi::Dataset random_dataset(std::uint64_t seed, std::size_t rows,
                                    const std::vector<std::size_t>& arities, std::size_t classes,
                                    double signal) {
  std::mt19937_64 rng(seed);
  dnpi::Dataset d;
  d.name = "synthetic" + std::to_string(seed);
  for (std::size_t a = 0; a < arities.size(); ++a) {
    dnpi::Attribute attr{"a" + std::to_string(a), false, {}};
    for (std::size_t c = 0; c < arities[a]; ++c) attr.labels.push_back("v" + std::to_string(c));
    d.attributes.push_back(attr);
    d.codes.emplace_back(rows);
    d.values.emplace_back();
  }
  for (std::size_t c = 0; c < classes; ++c) d.target.labels.push_back("c" + std::to_string(c));
  d.target.name = "class";
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < arities.size(); ++a) {
      d.codes[a][r] = static_cast<int>(rng() % arities[a]);
    }
    const int driven = d.codes.empty() ? 0 : d.codes[0][r] % static_cast<int>(classes);
    d.labels.push_back(coin(rng) < signal ? driven : static_cast<int>(rng() % classes));
  }
  return d;
}

inline dnpi::Dataset from_rows(const std::vector<std::vector<int>>& rows,
                               const std::vector<std::size_t>& arities, std::size_t classes) {
  dnpi::Dataset d = random_dataset(0, 0, arities, classes, 0.0);
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < arities.size(); ++a) d.codes[a].push_back(row[a]);
    d.labels.push_back(row.back());
  }
  return d;
}

}  // namespace testdata
