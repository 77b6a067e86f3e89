#include "newscite/corpus/jsonl.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"

namespace newscite::corpus {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Paragraph parse_paragraph(const json& j) {
  Paragraph p;
  p.text = j.at("text").get<std::string>();
  std::size_t len = p.text.size();
  if (j.contains("anchors")) {
    std::size_t prev = 0;
    bool first = true;
    for (const auto& a : j.at("anchors")) {
      Anchor anchor;
      anchor.surface = a.at("surface").get<std::string>();
      anchor.target = a.at("target").get<std::string>();
      anchor.offset = a.at("offset").get<std::size_t>();
      if (anchor.offset >= len) throw Error("anchor offset beyond paragraph length");
      if (!first && anchor.offset <= prev) throw Error("anchor offsets not strictly increasing");
      prev = anchor.offset;
      first = false;
      p.anchors.push_back(std::move(anchor));
    }
  }
  if (j.contains("citations")) {
    std::size_t prev = 0;
    bool first = true;
    for (const auto& c : j.at("citations")) {
      Citation cit;
      cit.marker_offset = c.at("offset").get<std::size_t>();
      auto cat = citation_category_from_string(c.at("category").get<std::string>());
      if (!cat) throw Error("unknown citation category: " + c.at("category").get<std::string>());
      cit.category = *cat;
      cit.url = c.at("url").get<std::string>();
      cit.domain = domain_of(cit.url).value_or("");
      if (cit.marker_offset > len) throw Error("citation offset beyond paragraph length");
      // adjacent markers may share an offset ("X[c1][c2]")
      if (!first && cit.marker_offset < prev) throw Error("citation offsets decreasing");
      prev = cit.marker_offset;
      first = false;
      p.citations.push_back(std::move(cit));
    }
  }
  return p;
}

WikiArticle parse_wiki_record(const json& j) {
  WikiArticle a;
  a.id = j.at("id").get<std::string>();
  if (a.id.empty()) throw Error("empty article id");
  a.title = j.at("title").get<std::string>();
  if (j.contains("types")) {
    for (const auto& t : j.at("types")) a.types.insert(t.get<std::string>());
  }
  a.revision_year = j.at("revision_year").get<int>();
  if (a.revision_year < 2001) throw Error("revision_year before 2001");
  for (const auto& s : j.at("sections")) {
    Section section;
    section.heading = s.at("heading").get<std::string>();
    if (section.heading.empty()) throw Error("empty section heading");
    for (const auto& p : s.at("paragraphs")) section.paragraphs.push_back(parse_paragraph(p));
    a.sections.push_back(std::move(section));
  }
  return a;
}

NewsArticle parse_news_record(const json& j, const NewsFilter& filter, int* dropped_mentions) {
  if (!j.contains("url")) throw Error("missing url");
  NewsArticle n;
  n.url = j.at("url").get<std::string>();
  if (n.url.empty()) throw Error("missing url");
  n.domain = domain_of(n.url).value_or("");
  n.title = j.value("title", "");
  auto date = Date::parse(j.at("published_at").get<std::string>());
  if (!date) throw Error("bad published_at date");
  n.published_at = *date;
  n.language = j.value("language", "en");
  for (const auto& p : j.at("paragraphs")) n.paragraphs.push_back(p.get<std::string>());
  if (j.contains("mentions")) {
    for (const auto& m : j.at("mentions")) {
      Mention mention;
      mention.surface = m.at("surface").get<std::string>();
      mention.entity = m.at("entity").get<std::string>();
      mention.score = m.at("score").get<double>();
      mention.paragraph = m.at("paragraph").get<int>();
      mention.offset = m.value("offset", std::size_t{0});
      if (mention.score < 0.0 || mention.score > 1.0) throw Error("mention score outside [0,1]");
      if (mention.paragraph < 0 || mention.paragraph >= static_cast<int>(n.paragraphs.size()))
        throw Error("mention paragraph index out of range");
      if (mention.score < filter.min_mention_score) {
        ++*dropped_mentions;
        continue;
      }
      n.mentions.push_back(std::move(mention));
    }
  }
  return n;
}

}  // namespace

WikiLoadResult parse_wiki_jsonl(const std::string& content) {
  WikiLoadResult result;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      WikiArticle a = parse_wiki_record(json::parse(line));
      if (!seen_ids.insert(a.id).second) throw Error("duplicate article id: " + a.id);
      result.corpus.articles.push_back(std::move(a));
    } catch (const std::exception& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

WikiLoadResult load_wiki_corpus(const std::string& path) {
  return parse_wiki_jsonl(read_file(path));
}

NewsLoadResult parse_news_jsonl(const std::string& content, const NewsFilter& filter) {
  NewsLoadResult result;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen_urls;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      NewsArticle n = parse_news_record(json::parse(line), filter, &result.dropped_mentions);
      if (n.language != filter.language) {
        ++result.dropped_language;
        continue;
      }
      if (n.full_text().size() < filter.min_chars) {
        ++result.dropped_short;
        continue;
      }
      if (!seen_urls.insert(n.url).second) throw Error("duplicate article url: " + n.url);
      result.corpus.articles.push_back(std::move(n));
    } catch (const std::exception& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

NewsLoadResult load_news_corpus(const std::string& path, const NewsFilter& filter) {
  return parse_news_jsonl(read_file(path), filter);
}

std::string wiki_to_jsonl(const WikiCorpus& corpus) {
  std::string out;
  for (const auto& a : corpus.articles) {
    ordered_json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["types"] = a.types;  // std::set keeps order stable
    j["revision_year"] = a.revision_year;
    ordered_json sections = ordered_json::array();
    for (const auto& s : a.sections) {
      ordered_json sj;
      sj["heading"] = s.heading;
      ordered_json paragraphs = ordered_json::array();
      for (const auto& p : s.paragraphs) {
        ordered_json pj;
        pj["text"] = p.text;
        ordered_json anchors = ordered_json::array();
        for (const auto& an : p.anchors) {
          anchors.push_back({{"surface", an.surface}, {"target", an.target}, {"offset", an.offset}});
        }
        pj["anchors"] = std::move(anchors);
        ordered_json citations = ordered_json::array();
        for (const auto& c : p.citations) {
          citations.push_back(
              {{"offset", c.marker_offset}, {"category", to_string(c.category)}, {"url", c.url}});
        }
        pj["citations"] = std::move(citations);
        paragraphs.push_back(std::move(pj));
      }
      sj["paragraphs"] = std::move(paragraphs);
      sections.push_back(std::move(sj));
    }
    j["sections"] = std::move(sections);
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::string news_to_jsonl(const NewsCorpus& corpus) {
  std::string out;
  for (const auto& n : corpus.articles) {
    ordered_json j;
    j["url"] = n.url;
    j["title"] = n.title;
    j["published_at"] = n.published_at.to_string();
    j["language"] = n.language;
    j["paragraphs"] = n.paragraphs;
    ordered_json mentions = ordered_json::array();
    for (const auto& m : n.mentions) {
      mentions.push_back({{"surface", m.surface},
                          {"entity", m.entity},
                          {"score", m.score},
                          {"paragraph", m.paragraph},
                          {"offset", m.offset}});
    }
    j["mentions"] = std::move(mentions);
    out += j.dump();
    out += "\n";
  }
  return out;
}

void save_wiki_corpus(const WikiCorpus& corpus, const std::string& path) {
  write_file(path, wiki_to_jsonl(corpus));
}

void save_news_corpus(const NewsCorpus& corpus, const std::string& path) {
  write_file(path, news_to_jsonl(corpus));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("failed writing file: " + path);
}

}  // namespace newscite::corpus
