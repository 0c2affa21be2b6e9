// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>

#include "dnpi/tree.hpp"

namespace dnpi {

// Model documents are JSON:
//   {"format": "dnpi-tree", "version": 1, "metadata": {...},
//    "attributes": [{"name": ..., "labels": [...]}, ...],
//    "class": {"name": ..., "labels": [...]},
//    "nodes": [{"kind": "internal", "attribute": "age", "fallback": "none",
//               "counts": [..], "branches": {"young": 1, ...}},
//              {"kind": "leaf", "class": "soft", "counts": [..]}, ...]}
// Node 0 is the root. Branches name only categories that have a child.
std::string tree_to_json(const DecisionTree& tree, const std::string& metadata_json = "{}");
DecisionTree tree_from_json(const std::string& text);

// The "metadata" object of a model document, re-serialized.
std::string tree_metadata(const std::string& text);

DecisionTree load_tree(const std::string& path);
void save_tree(const DecisionTree& tree, const std::string& path,
               const std::string& metadata_json = "{}");

}  // namespace dnpi
