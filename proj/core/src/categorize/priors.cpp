#include "newscite/categorize/priors.hpp"

#include "newscite/corpus/statements.hpp"

namespace newscite::categorize {

std::set<std::string> expanded_types(const corpus::WikiArticle& article,
                                     const corpus::TypeTaxonomy& taxonomy) {
  std::set<std::string> out;
  for (const auto& t : article.types) {
    if (!taxonomy.has_node(t)) continue;
    out.insert(t);
    auto anc = taxonomy.ancestors_of(t);
    out.insert(anc.begin(), anc.end());
  }
  if (out.empty() && taxonomy.has_node(taxonomy.root)) out.insert(taxonomy.root);
  return out;
}

PriorTables compute_priors(const corpus::WikiCorpus& corpus, const corpus::TypeTaxonomy& taxonomy,
                           const PriorFilters& filters) {
  struct Raw {
    long news = 0;
    long total = 0;
  };
  std::map<std::string, Raw> by_section, by_type;
  std::map<std::pair<std::string, std::string>, Raw> by_type_section, by_cooccur;
  std::map<std::string, std::set<std::string>> entities_per_type;

  // anchor-target types need id -> expanded types
  std::map<std::string, std::set<std::string>> types_by_id;
  for (const auto& a : corpus.articles) types_by_id[a.id] = expanded_types(a, taxonomy);

  for (const auto& article : corpus.articles) {
    const auto& types = types_by_id[article.id];
    for (const auto& t : types) entities_per_type[t].insert(article.id);
    for (const auto& st : corpus::extract_statements(article)) {
      if (st.citations.empty()) continue;  // citation-needed has no category signal
      bool news = st.has_news_citation();
      auto& sec = by_section[st.section_heading];
      sec.total += 1;
      sec.news += news;
      for (const auto& t : types) {
        auto& ty = by_type[t];
        ty.total += 1;
        ty.news += news;
        auto& ts = by_type_section[{t, st.section_heading}];
        ts.total += 1;
        ts.news += news;
        std::set<std::string> anchor_types;
        for (const auto& anchor : st.anchors) {
          auto it = types_by_id.find(anchor.target);
          if (it != types_by_id.end()) anchor_types.insert(it->second.begin(), it->second.end());
        }
        for (const auto& tprime : anchor_types) {
          auto& co = by_cooccur[{t, tprime}];
          co.total += 1;
          co.news += news;
        }
      }
    }
  }

  PriorTables out;
  for (const auto& [t, ids] : entities_per_type)
    out.type_entity_support[t] = static_cast<long>(ids.size());

  auto keep_type = [&](const std::string& t) {
    auto it = out.type_entity_support.find(t);
    return it != out.type_entity_support.end() && it->second >= filters.min_type_entities;
  };
  for (const auto& [key, raw] : by_section) {
    if (raw.total >= filters.min_section_statements) {
      out.section[key] = {static_cast<double>(raw.news) / raw.total, raw.news, raw.total};
    }
  }
  for (const auto& [key, raw] : by_type) {
    if (keep_type(key)) {
      out.type[key] = {static_cast<double>(raw.news) / raw.total, raw.news, raw.total};
    }
  }
  for (const auto& [key, raw] : by_type_section) {
    if (keep_type(key.first) && raw.total >= filters.min_section_statements) {
      out.type_section[key] = {static_cast<double>(raw.news) / raw.total, raw.news, raw.total};
    }
  }
  for (const auto& [key, raw] : by_cooccur) {
    if (keep_type(key.first) && raw.total > 0) {
      out.type_cooccur[key] = {static_cast<double>(raw.news) / raw.total, raw.news, raw.total};
    }
  }
  return out;
}

}  // namespace newscite::categorize
