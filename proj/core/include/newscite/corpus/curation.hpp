// curation.hpp
// Ground-truth curation: per-domain majority voting toward the news category
// and news URL-pattern relabeling of web citations.

#pragma once

#include <map>
#include <string>

#include "newscite/corpus/model.hpp"

namespace newscite::corpus {

struct CurationReport {
  // (from, to) -> count of relabeled citations
  std::map<std::pair<CitationCategory, CitationCategory>, int> changes;

  int total_changes() const;
  std::string to_csv() const;  // columns: from_category,to_category,count
};

// Mutates the corpus in place; idempotent (a second run reports 0 changes).
CurationReport curate_citation_categories(WikiCorpus& corpus);

}  // namespace newscite::corpus
