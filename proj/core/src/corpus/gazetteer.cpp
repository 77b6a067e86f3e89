#include "newscite/corpus/gazetteer.hpp"

#include <algorithm>
#include <cctype>

namespace newscite::corpus {

GazetteerLinker::GazetteerLinker(std::map<std::string, std::string> titles) {
  for (auto& [title, id] : titles) {
    if (!title.empty()) by_length_.emplace_back(title, id);
  }
  std::stable_sort(by_length_.begin(), by_length_.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
}

GazetteerLinker::GazetteerLinker(const WikiCorpus& corpus) {
  std::map<std::string, std::string> titles;
  for (const auto& a : corpus.articles) titles[a.title] = a.id;
  *this = GazetteerLinker(std::move(titles));
}

namespace {
bool boundary_before(const std::string& text, std::size_t pos) {
  return pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
}
bool boundary_after(const std::string& text, std::size_t end) {
  return end >= text.size() || !std::isalnum(static_cast<unsigned char>(text[end]));
}
}  // namespace

std::vector<Mention> GazetteerLinker::link(const std::string& text, int paragraph_index) const {
  std::vector<Mention> out;
  std::vector<bool> used(text.size(), false);
  for (const auto& [title, id] : by_length_) {
    std::size_t pos = 0;
    while ((pos = text.find(title, pos)) != std::string::npos) {
      bool free = boundary_before(text, pos) && boundary_after(text, pos + title.size());
      for (std::size_t i = pos; free && i < pos + title.size(); ++i) free = !used[i];
      if (free) {
        for (std::size_t i = pos; i < pos + title.size(); ++i) used[i] = true;
        Mention m;
        m.surface = title;
        m.entity = id;
        m.score = 1.0;
        m.paragraph = paragraph_index;
        m.offset = pos;
        out.push_back(std::move(m));
      }
      pos += title.size();
    }
  }
  std::sort(out.begin(), out.end(), [](const Mention& a, const Mention& b) { return a.offset < b.offset; });
  return out;
}

void GazetteerLinker::annotate(NewsArticle& article) const {
  article.mentions.clear();
  for (std::size_t p = 0; p < article.paragraphs.size(); ++p) {
    auto ms = link(article.paragraphs[p], static_cast<int>(p));
    article.mentions.insert(article.mentions.end(), ms.begin(), ms.end());
  }
}

}  // namespace newscite::corpus
