#include "newscite/suggest/templates.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/index/inverted_index.hpp"
#include "newscite/ml/cluster.hpp"

namespace newscite::suggest {

namespace {

std::vector<std::string> section_terms(const std::string& heading, const std::string& text) {
  auto terms = index::analyze_terms(heading + " " + text, {});
  return terms;
}

// dense embedding over a fixed term order
std::vector<double> densify(const text::SparseVector& v, const std::vector<std::string>& vocab) {
  std::vector<double> out(vocab.size(), 0.0);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    auto it = v.find(vocab[i]);
    if (it != v.end()) out[i] = it->second;
  }
  return out;
}

}  // namespace

SectionTemplate build_section_templates(const std::string& entity_class,
                                        const std::vector<TemplateInput>& sections,
                                        const TemplateParams& params) {
  if (sections.empty()) throw Error("build_section_templates: no sections for class " + entity_class);
  SectionTemplate tmpl;
  tmpl.entity_class = entity_class;

  for (const auto& s : sections) tmpl.stats.add_document(section_terms(s.heading, s.text));

  std::vector<text::SparseVector> vectors;
  std::set<std::string> vocab_set;
  for (const auto& s : sections) {
    auto v = text::tfidf_vector(section_terms(s.heading, s.text), tmpl.stats);
    text::l2_normalize(v);
    for (const auto& [term, w] : v) vocab_set.insert(term);
    vectors.push_back(std::move(v));
  }
  std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  std::vector<ml::Point> points;
  points.reserve(vectors.size());
  for (const auto& v : vectors) points.push_back(densify(v, vocab));

  std::vector<int> assignment;
  std::size_t k;
  if (static_cast<int>(sections.size()) < std::max(params.kmin, 2) || params.kmin < 2) {
    assignment.assign(sections.size(), 0);
    k = 1;
  } else {
    auto clustering = ml::xmeans(points, params.kmin, std::min<int>(params.kmax, static_cast<int>(points.size())),
                                 params.seed);
    assignment = clustering.assignment;
    k = clustering.centroids.size();
  }

  tmpl.sections.resize(k);
  std::vector<std::map<std::string, int>> heading_counts(k);
  std::vector<int> member_count(k, 0);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    auto c = static_cast<std::size_t>(assignment[i]);
    CanonicalSection& cs = tmpl.sections[c];
    heading_counts[c][sections[i].heading] += 1;
    member_count[static_cast<std::size_t>(assignment[i])] += 1;
    cs.member_texts.push_back(sections[i].text);
    cs.aggregated_gamma.insert(sections[i].linked_entities.begin(), sections[i].linked_entities.end());
    for (const auto& [term, w] : vectors[i]) cs.centroid[term] += w;
  }
  // drop clusters that ended up empty (possible when xmeans reseeds)
  std::vector<CanonicalSection> kept;
  for (std::size_t c = 0; c < k; ++c) {
    if (member_count[c] == 0) continue;
    CanonicalSection& cs = tmpl.sections[c];
    for (auto& [term, w] : cs.centroid) w /= member_count[c];
    std::string best;
    int best_count = -1;
    for (const auto& [heading, count] : heading_counts[c]) {
      cs.headings.push_back(heading);
      if (count > best_count || (count == best_count && heading < best)) {
        best = heading;
        best_count = count;
      }
    }
    cs.label = best;
    kept.push_back(std::move(cs));
  }
  // stable template order: by label
  std::sort(kept.begin(), kept.end(),
            [](const CanonicalSection& a, const CanonicalSection& b) { return a.label < b.label; });
  tmpl.sections = std::move(kept);
  return tmpl;
}

std::size_t SectionTemplate::assign(const std::string& heading, const std::string& text) const {
  if (sections.empty()) throw Error("SectionTemplate::assign: empty template");
  auto v = text::tfidf_vector(section_terms(heading, text), stats);
  text::l2_normalize(v);
  std::size_t best = 0;
  double best_sim = -2;
  for (std::size_t c = 0; c < sections.size(); ++c) {
    double sim = text::cosine(v, sections[c].centroid);
    if (sim > best_sim) {
      best_sim = sim;
      best = c;
    }
  }
  return best;
}

std::vector<int> template_assignments(const SectionTemplate& tmpl,
                                      const std::vector<TemplateInput>& sections) {
  std::vector<int> out;
  out.reserve(sections.size());
  for (const auto& s : sections) {
    out.push_back(static_cast<int>(tmpl.assign(s.heading, s.text)));
  }
  return out;
}

std::string SectionTemplate::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-template";
  j["version"] = 1;
  j["entity_class"] = entity_class;
  j["num_docs"] = stats.num_docs;
  j["df"] = stats.df;
  nlohmann::ordered_json sections_j = nlohmann::ordered_json::array();
  for (const auto& s : sections) {
    nlohmann::ordered_json sj;
    sj["label"] = s.label;
    sj["headings"] = s.headings;
    sj["centroid"] = s.centroid;
    sj["member_texts"] = s.member_texts;
    sj["aggregated_gamma"] = s.aggregated_gamma;
    sections_j.push_back(std::move(sj));
  }
  j["sections"] = std::move(sections_j);
  return j.dump();
}

SectionTemplate SectionTemplate::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-template") throw Error("not a section-template file");
  if (j.value("version", 0) > 1) throw Error("template file version is newer than supported (1)");
  SectionTemplate t;
  t.entity_class = j["entity_class"];
  t.stats.num_docs = j["num_docs"];
  t.stats.df = j["df"].get<std::map<std::string, int>>();
  for (const auto& sj : j["sections"]) {
    CanonicalSection s;
    s.label = sj["label"];
    s.headings = sj["headings"].get<std::vector<std::string>>();
    s.centroid = sj["centroid"].get<text::SparseVector>();
    s.member_texts = sj["member_texts"].get<std::vector<std::string>>();
    auto gamma = sj["aggregated_gamma"].get<std::vector<std::string>>();
    s.aggregated_gamma.insert(gamma.begin(), gamma.end());
    t.sections.push_back(std::move(s));
  }
  return t;
}

}  // namespace newscite::suggest
