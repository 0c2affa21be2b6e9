// Apache License, Version 2.0, refer to LICENSE.txt

#include "dnpi/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dnpi/errors.hpp"

namespace dnpi {

using json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

std::size_t label_index(const Attribute& attribute, const std::string& label) {
  const auto idx = attribute.find(label);
  if (!idx) {
    throw IngestError("model: '" + label + "' is not a label of '" + attribute.name + "'");
  }
  return *idx;
}

}  // namespace

std::string tree_to_json(const DecisionTree& tree, const std::string& metadata_json) {
  json doc;
  doc["format"] = "dnpi-tree";
  doc["version"] = kFormatVersion;
  try {
    doc["metadata"] = json::parse(metadata_json);
  } catch (const json::exception& e) {
    throw DomainError(std::string("model metadata is not valid JSON: ") + e.what());
  }
  json attributes = json::array();
  for (const Attribute& a : tree.attributes()) {
    attributes.push_back({{"name", a.name}, {"labels", a.labels}});
  }
  doc["attributes"] = attributes;
  doc["class"] = {{"name", tree.target().name}, {"labels", tree.target().labels}};

  json nodes = json::array();
  for (const TreeNode& node : tree.nodes()) {
    json entry;
    if (node.is_leaf()) {
      entry["kind"] = "leaf";
      entry["class"] = tree.target().labels[node.label];
    } else {
      const Attribute& attribute = tree.attributes()[*node.attribute];
      entry["kind"] = "internal";
      entry["attribute"] = attribute.name;
      entry["fallback"] = tree.target().labels[node.label];
      json branches = json::object();
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        if (node.children[c]) branches[attribute.labels[c]] = *node.children[c];
      }
      entry["branches"] = branches;
    }
    entry["counts"] = node.class_counts;
    nodes.push_back(entry);
  }
  doc["nodes"] = nodes;
  return doc.dump(1) + "\n";
}

DecisionTree tree_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "dnpi-tree") throw IngestError("model: not a dnpi-tree document");
    if (doc.value("version", 0) != kFormatVersion) {
      throw IngestError("model: unsupported format version");
    }
    std::vector<Attribute> attributes;
    for (const auto& a : doc.at("attributes")) {
      attributes.push_back(
          Attribute{a.at("name").get<std::string>(), false, a.at("labels").get<std::vector<std::string>>()});
    }
    Attribute target{doc.at("class").at("name").get<std::string>(), false,
                     doc.at("class").at("labels").get<std::vector<std::string>>()};

    std::vector<TreeNode> nodes;
    for (const auto& entry : doc.at("nodes")) {
      TreeNode node;
      node.class_counts = entry.at("counts").get<std::vector<std::int64_t>>();
      const std::string kind = entry.at("kind").get<std::string>();
      if (kind == "leaf") {
        node.label = label_index(target, entry.at("class").get<std::string>());
      } else if (kind == "internal") {
        const std::string name = entry.at("attribute").get<std::string>();
        std::optional<std::size_t> attribute;
        for (std::size_t i = 0; i < attributes.size(); ++i) {
          if (attributes[i].name == name) attribute = i;
        }
        if (!attribute) throw IngestError("model: unknown attribute '" + name + "'");
        node.attribute = attribute;
        node.label = label_index(target, entry.at("fallback").get<std::string>());
        node.children.assign(attributes[*attribute].arity(), std::nullopt);
        for (const auto& [label, child] : entry.at("branches").items()) {
          node.children[label_index(attributes[*attribute], label)] = child.get<std::size_t>();
        }
      } else {
        throw IngestError("model: unknown node kind '" + kind + "'");
      }
      nodes.push_back(std::move(node));
    }
    return DecisionTree(std::move(attributes), std::move(target), std::move(nodes));
  } catch (const json::exception& e) {
    throw IngestError(std::string("model: ") + e.what());
  } catch (const DomainError& e) {
    throw IngestError(std::string("model: ") + e.what());
  }
}

std::string tree_metadata(const std::string& text) {
  try {
    return json::parse(text).value("metadata", json::object()).dump();
  } catch (const json::exception& e) {
    throw IngestError(std::string("model: ") + e.what());
  }
}

DecisionTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return tree_from_json(buffer.str());
}

void save_tree(const DecisionTree& tree, const std::string& path, const std::string& metadata_json) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write model file '" + path + "'");
  out << tree_to_json(tree, metadata_json);
}

}  // namespace dnpi
