// priors.hpp
// Section/type news-prior tables with support filtering. Type membership is
// closed under taxonomy ancestors, so statements of a politician also count
// toward person and the root type.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"
#include "newscite/corpus/taxonomy.hpp"

namespace newscite::categorize {

struct PriorFilters {
  int min_section_statements = 10;   // cells under this support are absent
  long min_type_entities = 1000;
};

struct PriorCell {
  double probability = 0;
  long news = 0;
  long total = 0;
};

struct PriorTables {
  std::map<std::string, PriorCell> section;                                // p(news | section)
  std::map<std::string, PriorCell> type;                                   // p(news | t)
  std::map<std::pair<std::string, std::string>, PriorCell> type_section;   // p(news | t, section)
  std::map<std::pair<std::string, std::string>, PriorCell> type_cooccur;   // p(news | t', t), key (t, t')
  std::map<std::string, long> type_entity_support;                         // entities per type
};

// Declared types plus all taxonomy ancestors.
std::set<std::string> expanded_types(const corpus::WikiArticle& article,
                                     const corpus::TypeTaxonomy& taxonomy);

PriorTables compute_priors(const corpus::WikiCorpus& corpus, const corpus::TypeTaxonomy& taxonomy,
                           const PriorFilters& filters = {});

}  // namespace newscite::categorize
