// taxonomy.hpp
// Entity-type DAG rooted at a universal type, normalized to depth
// consistency: every root-to-node path for a node has the same length.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"

namespace newscite::corpus {

class TypeTaxonomy {
public:
  std::string root;
  std::map<std::string, long> entity_counts;            // node id -> #entities
  std::map<std::string, std::set<std::string>> parents;  // child -> parents

  void add_node(const std::string& id, long count = 0);
  void add_edge(const std::string& child, const std::string& parent);

  bool has_node(const std::string& id) const { return entity_counts.count(id) > 0; }
  std::set<std::string> children_of(const std::string& id) const;
  // All ancestors up to the root (excluding the node itself).
  std::set<std::string> ancestors_of(const std::string& id) const;

  // Shortest distance from the root; nullopt when unreachable.
  std::optional<int> depth(const std::string& id) const;
  bool is_depth_consistent() const;

  // Throws on a cycle.
  void assert_acyclic() const;

  std::string to_json() const;
  static TypeTaxonomy from_json(const std::string& text);
  static TypeTaxonomy load(const std::string& path);
  void save(const std::string& path) const;
};

// Removes every child->parent edge whose parent depth exceeds the minimum
// depth among the child's parents; the result is depth-consistent.
TypeTaxonomy make_depth_consistent(const TypeTaxonomy& taxonomy);

}  // namespace newscite::corpus
