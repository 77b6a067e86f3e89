// analytics.hpp
// News-in-wiki analytics: per-category reference density, entity lag,
// emerging-entity density.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"

namespace newscite::suggest {

// Per citation category: fraction of the entity page's references of that
// category over all references.
std::map<std::string, double> reference_density(const corpus::WikiArticle& article);

// lag = first wiki appearance - first news mention, in days.
struct LagPair {
  std::string entity;
  corpus::Date wiki_created;
  corpus::Date first_news_mention;
};

std::vector<std::pair<std::string, std::int64_t>> entity_lag_days(const std::vector<LagPair>& pairs);

// Fraction of the event page's linked entities created after the event page.
double emerging_entity_density(const corpus::Date& event_created,
                               const std::vector<corpus::Date>& linked_entity_created);

}  // namespace newscite::suggest
