#include "newscite/corpus/taxonomy.hpp"

#include <deque>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/corpus/jsonl.hpp"

namespace newscite::corpus {

void TypeTaxonomy::add_node(const std::string& id, long count) {
  entity_counts.emplace(id, 0);
  entity_counts[id] = std::max(entity_counts[id], count);
  parents.emplace(id, std::set<std::string>{});
}

void TypeTaxonomy::add_edge(const std::string& child, const std::string& parent) {
  add_node(child);
  add_node(parent);
  parents[child].insert(parent);
}

std::set<std::string> TypeTaxonomy::children_of(const std::string& id) const {
  std::set<std::string> out;
  for (const auto& [child, ps] : parents) {
    if (ps.count(id)) out.insert(child);
  }
  return out;
}

std::set<std::string> TypeTaxonomy::ancestors_of(const std::string& id) const {
  std::set<std::string> out;
  std::deque<std::string> queue;
  auto it = parents.find(id);
  if (it == parents.end()) return out;
  for (const auto& p : it->second) queue.push_back(p);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    if (!out.insert(cur).second) continue;
    auto pit = parents.find(cur);
    if (pit != parents.end()) {
      for (const auto& p : pit->second) queue.push_back(p);
    }
  }
  return out;
}

std::optional<int> TypeTaxonomy::depth(const std::string& id) const {
  std::map<std::string, int> dist;
  std::deque<std::string> queue;
  dist[root] = 0;
  queue.push_back(root);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& child : children_of(cur)) {
      if (!dist.count(child)) {
        dist[child] = dist[cur] + 1;
        queue.push_back(child);
      }
    }
  }
  auto it = dist.find(id);
  if (it == dist.end()) return std::nullopt;
  return it->second;
}

void TypeTaxonomy::assert_acyclic() const {
  // Kahn's algorithm over child->parent edges
  std::map<std::string, int> out_degree;  // edges toward parents
  for (const auto& [child, ps] : parents) out_degree[child] = static_cast<int>(ps.size());
  std::deque<std::string> queue;
  for (const auto& [node, deg] : out_degree) {
    if (deg == 0) queue.push_back(node);
  }
  std::size_t visited = 0;
  std::map<std::string, std::set<std::string>> children;
  for (const auto& [child, ps] : parents) {
    for (const auto& p : ps) children[p].insert(child);
  }
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    ++visited;
    for (const auto& child : children[cur]) {
      if (--out_degree[child] == 0) queue.push_back(child);
    }
  }
  if (visited != entity_counts.size()) throw Error("taxonomy contains a cycle");
}

bool TypeTaxonomy::is_depth_consistent() const {
  // all root paths equal length <=> for every node, all kept parents share
  // one depth and node depth = parent depth + 1 along every path
  for (const auto& [child, ps] : parents) {
    if (ps.empty()) continue;
    std::optional<int> expected;
    for (const auto& p : ps) {
      auto d = depth(p);
      if (!d) return false;
      if (expected && *expected != *d) return false;
      expected = d;
    }
  }
  return true;
}

TypeTaxonomy make_depth_consistent(const TypeTaxonomy& taxonomy) {
  taxonomy.assert_acyclic();
  TypeTaxonomy out = taxonomy;

  // process nodes in order of min-depth; by induction parents are final
  std::map<std::string, int> dist;
  std::deque<std::string> queue;
  dist[out.root] = 0;
  queue.push_back(out.root);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& child : out.children_of(cur)) {
      if (!dist.count(child)) {
        dist[child] = dist[cur] + 1;
        queue.push_back(child);
      }
    }
  }
  for (auto& [child, ps] : out.parents) {
    if (ps.empty()) continue;
    int min_depth = INT32_MAX;
    for (const auto& p : ps) {
      auto it = dist.find(p);
      if (it != dist.end()) min_depth = std::min(min_depth, it->second);
    }
    if (min_depth == INT32_MAX) continue;  // disconnected subgraph: left as-is
    std::set<std::string> kept;
    for (const auto& p : ps) {
      auto it = dist.find(p);
      if (it != dist.end() && it->second == min_depth) kept.insert(p);
    }
    ps = std::move(kept);
  }
  return out;
}

std::string TypeTaxonomy::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-taxonomy";
  j["version"] = 1;
  j["root"] = root;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& [id, count] : entity_counts) nodes.push_back({{"id", id}, {"count", count}});
  j["nodes"] = std::move(nodes);
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [child, ps] : parents) {
    for (const auto& p : ps) edges.push_back({{"child", child}, {"parent", p}});
  }
  j["edges"] = std::move(edges);
  return j.dump(2);
}

TypeTaxonomy TypeTaxonomy::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-taxonomy") throw Error("not a taxonomy file");
  if (j.value("version", 0) > 1) throw Error("taxonomy file version is newer than supported (1)");
  TypeTaxonomy t;
  t.root = j.at("root").get<std::string>();
  for (const auto& n : j.at("nodes")) t.add_node(n.at("id").get<std::string>(), n.value("count", 0l));
  for (const auto& e : j.at("edges")) t.add_edge(e.at("child").get<std::string>(), e.at("parent").get<std::string>());
  if (!t.has_node(t.root)) throw Error("taxonomy root is not a node");
  return t;
}

TypeTaxonomy TypeTaxonomy::load(const std::string& path) { return from_json(read_file(path)); }

void TypeTaxonomy::save(const std::string& path) const { write_file(path, to_json()); }

}  // namespace newscite::corpus
