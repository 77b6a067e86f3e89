// templates.hpp
// Class-level section templates: x-means over L2-normalized tf-idf vectors
// of section texts (cosine realized as Euclidean on the unit sphere).

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "newscite/suggest/salience.hpp"
#include "newscite/text/similarity.hpp"

namespace newscite::suggest {

struct CanonicalSection {
  std::string label;                       // most frequent heading, ties lexicographic
  std::vector<std::string> headings;       // representative input headings
  text::SparseVector centroid;             // mean of member tf-idf vectors (L2-normalized space)
  std::vector<std::string> member_texts;   // kept for aggregated similarity features
  std::set<std::string> aggregated_gamma;
};

struct SectionTemplate {
  std::string entity_class;
  std::vector<CanonicalSection> sections;
  text::CorpusStats stats;  // df statistics used to embed new sections

  // Nearest canonical section for a heading+text (cosine).
  std::size_t assign(const std::string& heading, const std::string& text) const;

  std::string to_json() const;
  static SectionTemplate from_json(const std::string& text);
};

struct TemplateInput {
  std::string heading;
  std::string text;
  std::set<std::string> linked_entities;
};

struct TemplateParams {
  int kmin = 2;
  int kmax = 30;
  std::uint64_t seed = 0;
};

// Fewer than kmin sections collapses to a single-cluster template.
SectionTemplate build_section_templates(const std::string& entity_class,
                                        const std::vector<TemplateInput>& sections,
                                        const TemplateParams& params = {});

// Cluster assignment per input section (same order as the input).
std::vector<int> template_assignments(const SectionTemplate& tmpl,
                                      const std::vector<TemplateInput>& sections);

}  // namespace newscite::suggest
