// jsonl.hpp
// JSONL ingestion and canonical re-serialization for the wiki and news
// collections. Malformed lines are collected into an error report, never
// silently dropped.

#pragma once

#include <string>
#include <vector>

#include "newscite/corpus/model.hpp"

namespace newscite::corpus {

struct LoadError {
  int line = 0;
  std::string message;
};

struct WikiLoadResult {
  WikiCorpus corpus;
  std::vector<LoadError> errors;
};

struct NewsLoadResult {
  NewsCorpus corpus;
  std::vector<LoadError> errors;
  int dropped_short = 0;     // total text < 200 chars
  int dropped_language = 0;  // language != en
  int dropped_mentions = 0;  // mention score < threshold
};

struct NewsFilter {
  std::size_t min_chars = 200;
  std::string language = "en";
  double min_mention_score = 0.3;
};

WikiLoadResult load_wiki_corpus(const std::string& path);
WikiLoadResult parse_wiki_jsonl(const std::string& content);

NewsLoadResult load_news_corpus(const std::string& path, const NewsFilter& filter = {});
NewsLoadResult parse_news_jsonl(const std::string& content, const NewsFilter& filter = {});

// Canonical JSONL (stable key order); loading it back reproduces the corpus.
std::string wiki_to_jsonl(const WikiCorpus& corpus);
std::string news_to_jsonl(const NewsCorpus& corpus);
void save_wiki_corpus(const WikiCorpus& corpus, const std::string& path);
void save_news_corpus(const NewsCorpus& corpus, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace newscite::corpus
