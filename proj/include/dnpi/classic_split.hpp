// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <span>

#include "dnpi/contingency.hpp"

namespace dnpi {

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(std::span<const std::int64_t> class_counts);

double information_gain(const ContingencyView& view);

double split_information(const ContingencyView& view);

// Gain over split information; 0 when the attribute does not split the node.
double gain_ratio(const ContingencyView& view);

}  // namespace dnpi
