// make_mini_corpus.cpp
// Deterministic generator for the bundled mini corpus: ~50 entity pages,
// ~200 statements, ~300 news documents, a small depth-consistent taxonomy,
// span gold annotations and a ready-to-run config. Mentions come from the
// bundled gazetteer linker.

#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"
#include "newscite/corpus/gazetteer.hpp"
#include "newscite/corpus/jsonl.hpp"
#include "newscite/corpus/statements.hpp"
#include "newscite/corpus/taxonomy.hpp"

using namespace newscite;
using namespace newscite::corpus;

namespace {

struct Pools {
  std::vector<std::string> nouns;
  std::vector<std::string> verbs_past;
  std::vector<std::string> places;
};

const std::map<std::string, Pools>& class_pools() {
  static const std::map<std::string, Pools> pools = {
      {"politician",
       {{"election", "parliament", "coalition", "ministry", "campaign", "referendum", "budget",
         "legislation", "senate", "cabinet"},
        {"won", "contested", "announced", "vetoed", "negotiated", "endorsed"},
        {"Westbrook", "Northfield", "Arlenton", "Southmere"}}},
      {"athlete",
       {{"championship", "tournament", "season", "transfer", "final", "league", "record", "medal",
         "squad", "trophy"},
        {"won", "scored", "joined", "captained", "defended", "broke"},
        {"Eastport", "Riverton", "Hillcrest", "Lakewood"}}},
      {"organization",
       {{"merger", "acquisition", "subsidiary", "revenue", "factory", "partnership", "labor",
         "shareholder", "expansion", "patent"},
        {"acquired", "restructured", "launched", "reported", "expanded", "settled"},
        {"Graymont", "Fairhaven", "Oakdale", "Brookside"}}},
      {"location",
       {{"bridge", "harbor", "festival", "museum", "district", "railway", "flood", "monument",
         "harvest", "census"},
        {"opened", "flooded", "hosted", "rebuilt", "celebrated", "expanded"},
        {"Milltown", "Ashford", "Clearwater", "Stonebridge"}}},
  };
  return pools;
}

const std::vector<std::string>& first_names() {
  static const std::vector<std::string> names = {
      "Adrian", "Beatrice", "Casper", "Dalia",  "Edmund", "Farida", "Gregor", "Helena",
      "Ivo",    "Jasmina", "Karsten", "Lidia",  "Marek",  "Nadia",  "Osman",  "Petra",
      "Quentin", "Rosa",   "Stellan", "Tamara", "Ulrich", "Vera",   "Wictor", "Xenia"};
  return names;
}

const std::vector<std::string>& last_names() {
  static const std::vector<std::string> names = {
      "Albrecht", "Bergman", "Carvalho", "Dvorak",  "Eklund",  "Farkas",  "Grimaldi", "Holst",
      "Ivanov",   "Jensen",  "Kovacs",   "Lindqvist", "Moreau", "Novak",  "Oliveira", "Paulsen"};
  return names;
}

struct Generator {
  std::mt19937_64 rng{20240527};
  WikiCorpus wiki;
  NewsCorpus news;
  TypeTaxonomy taxonomy;
  std::map<std::string, std::string> entity_class;  // id -> leaf class
  int news_counter = 0;

  std::string pick(const std::vector<std::string>& pool) {
    return pool[rng() % pool.size()];
  }

  int pick_year() { return 2014 + static_cast<int>(rng() % 2); }

  std::string pick_date(int year) {
    static const char* months[] = {"January", "February", "March",     "April",   "May",      "June",
                                   "July",    "August",   "September", "October", "November", "December"};
    int day = 1 + static_cast<int>(rng() % 28);
    return std::to_string(day) + " " + months[rng() % 12] + " " + std::to_string(year);
  }

  std::string news_url(const std::string& domain) {
    return "http://" + domain + "/articles/" + std::to_string(news_counter++);
  }

  // statement text by citation category; news statements carry attribution,
  // quotes and dates, the other categories deliberately do not
  std::string statement_text(CitationCategory cat, const std::string& entity_title,
                             const Pools& pools, int year, std::string* date_out) {
    switch (cat) {
      case CitationCategory::news: {
        std::string date = pick_date(year);
        *date_out = date;
        int form = static_cast<int>(rng() % 3);
        if (form == 0) {
          return entity_title + " announced that the " + pick(pools.nouns) + " " +
                 pick(pools.verbs_past) + " on " + date + ".";
        }
        if (form == 1) {
          return "On " + date + " " + entity_title + " " + pick(pools.verbs_past) + " the " +
                 pick(pools.nouns) + " in " + pick(pools.places) + ".";
        }
        return "\"The " + pick(pools.nouns) + " changed everything\" " + entity_title +
               " said after the " + pick(pools.nouns) + " on " + date + ".";
      }
      case CitationCategory::web:
        return "The official website lists the " + pick(pools.nouns) + " and the " +
               pick(pools.nouns) + " of " + entity_title + ".";
      case CitationCategory::book:
        return "The biography describes how " + entity_title + " spent early years near the " +
               pick(pools.nouns) + " of " + pick(pools.places) + ".";
      default:
        return "A peer-reviewed study analyzes the " + pick(pools.nouns) + " associated with " +
               entity_title + ".";
    }
  }

  NewsArticle make_citing_news(const std::string& statement, const std::string& entity_title,
                               const Pools& pools, int year) {
    static const std::vector<std::string> domains = {"news.example-times.com", "daily-ledger.org",
                                                     "example-herald.net", "wire-report.org"};
    NewsArticle n;
    n.url = news_url(pick(domains));
    n.domain = domain_of(n.url).value_or("");
    n.title = entity_title + " and the " + pick(pools.nouns);
    n.published_at = {year, 1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 28)};
    n.language = "en";
    // opening paragraph paraphrases the statement so retrieval and
    // entailment features can find it
    n.paragraphs.push_back(statement + " Reporters in " + pick(pools.places) +
                           " confirmed the " + pick(pools.nouns) + " within days.");
    n.paragraphs.push_back("The " + pick(pools.nouns) + " follows an earlier " + pick(pools.nouns) +
                           " that " + pick(pools.verbs_past) + " across " + pick(pools.places) +
                           " and drew broad attention from observers of " + entity_title + ".");
    n.paragraphs.push_back("Officials added that the " + pick(pools.nouns) +
                           " would continue while the " + pick(pools.nouns) + " is reviewed.");
    return n;
  }

  NewsArticle make_noise_news() {
    static const std::vector<std::string> domains = {"news.example-times.com", "daily-ledger.org",
                                                     "example-herald.net", "wire-report.org",
                                                     "gazette-online.org"};
    std::vector<std::string> classes = {"politician", "athlete", "organization", "location"};
    const Pools& pools = class_pools().at(classes[rng() % classes.size()]);
    NewsArticle n;
    n.url = news_url(domains[rng() % domains.size()]);
    n.domain = domain_of(n.url).value_or("");
    n.title = "Regional " + pick(pools.nouns) + " draws attention";
    n.published_at = {pick_year(), 1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 28)};
    n.language = "en";
    for (int p = 0; p < 3; ++p) {
      n.paragraphs.push_back("The " + pick(pools.nouns) + " near " + pick(pools.places) + " " +
                             pick(pools.verbs_past) + " during the " + pick(pools.nouns) +
                             " and prompted a review of the " + pick(pools.nouns) +
                             " according to local observers.");
    }
    return n;
  }

  void build_taxonomy() {
    taxonomy.root = "thing";
    taxonomy.add_node("thing", 50);
    taxonomy.add_edge("person", "thing");
    taxonomy.add_edge("organization", "thing");
    taxonomy.add_edge("location", "thing");
    taxonomy.add_edge("politician", "person");
    taxonomy.add_edge("athlete", "person");
  }

  void build() {
    build_taxonomy();
    std::vector<std::pair<std::string, int>> plan = {
        {"politician", 12}, {"athlete", 12}, {"organization", 13}, {"location", 13}};
    static const std::vector<std::string> headings_person = {"Early Life", "Career", "Personal Life"};
    static const std::vector<std::string> headings_other = {"History", "Operations", "Recognition"};

    int name_i = 0;
    for (const auto& [cls, count] : plan) {
      const Pools& pools = class_pools().at(cls);
      for (int k = 0; k < count; ++k) {
        WikiArticle a;
        bool is_person = cls == "politician" || cls == "athlete";
        if (is_person) {
          a.title = first_names()[static_cast<std::size_t>(name_i) % first_names().size()] + " " +
                    last_names()[static_cast<std::size_t>(name_i / 2) % last_names().size()];
        } else if (cls == "organization") {
          a.title = pick(pools.places) + " " + (rng() % 2 ? "Industries" : "Consortium") + " " +
                    std::to_string(k);
        } else {
          a.title = pick(pools.places) + " " + (rng() % 2 ? "Valley" : "Heights") + " " +
                    std::to_string(k);
        }
        ++name_i;
        a.id = "E" + std::to_string(wiki.articles.size());
        a.types = {cls};
        a.revision_year = 2013;
        entity_class[a.id] = cls;

        const auto& headings = is_person ? headings_person : headings_other;
        int num_sections = 2;
        for (int s = 0; s < num_sections; ++s) {
          Section section;
          section.heading = headings[static_cast<std::size_t>(s) % headings.size()];
          int num_paragraphs = 1 + static_cast<int>(rng() % 2);
          for (int p = 0; p < num_paragraphs; ++p) {
            section.paragraphs.push_back(make_paragraph(a.title, pools, section.heading));
          }
          a.sections.push_back(std::move(section));
        }
        wiki.articles.push_back(std::move(a));
      }
    }
    // anchors: link person pages to organizations/locations by title mention
    add_anchors();
    // entity mentions in news via the gazetteer
    GazetteerLinker linker(wiki);
    for (auto& n : news.articles) linker.annotate(n);
    // distractor docs
    int target_docs = 300;
    while (static_cast<int>(news.articles.size()) < target_docs) {
      auto n = make_noise_news();
      linker.annotate(n);
      news.articles.push_back(std::move(n));
    }
  }

  Paragraph make_paragraph(const std::string& entity_title, const Pools& pools,
                           const std::string& heading) {
    // Career/History sections lean news; others mix categories
    bool newsy = heading == "Career" || heading == "History" || heading == "Operations";
    Paragraph paragraph;
    int statements = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < statements; ++i) {
      CitationCategory cat;
      int roll = static_cast<int>(rng() % 10);
      if (newsy) cat = roll < 7 ? CitationCategory::news
                               : (roll < 9 ? CitationCategory::web : CitationCategory::book);
      else
        cat = roll < 2 ? CitationCategory::news
                       : (roll < 6 ? CitationCategory::web
                                   : (roll < 8 ? CitationCategory::book : CitationCategory::journal));
      int year = pick_year();
      std::string date;
      std::string text = statement_text(cat, entity_title, pools, year, &date);
      if (!paragraph.text.empty()) paragraph.text += " ";
      paragraph.text += text;

      Citation c;
      c.marker_offset = paragraph.text.size();
      c.category = cat;
      if (cat == CitationCategory::news) {
        auto n = make_citing_news(text, entity_title, pools, year);
        c.url = n.url;
        news.articles.push_back(std::move(n));
      } else if (cat == CitationCategory::web) {
        c.url = "http://example-site.org/pages/" + std::to_string(news_counter++);
      } else if (cat == CitationCategory::book) {
        c.url = "http://books.example.org/isbn/" + std::to_string(news_counter++);
      } else {
        c.url = "http://journals.example.org/doi/" + std::to_string(news_counter++);
      }
      c.domain = domain_of(c.url).value_or("");
      paragraph.citations.push_back(std::move(c));
    }
    // occasionally a trailing citation-needed statement
    if (rng() % 6 == 0) {
      std::string text = " Some accounts also connect " + entity_title + " with the " +
                         pick(pools.nouns) + " of " + pick(pools.places) + ".";
      paragraph.text += text;
      Citation needed;
      needed.marker_offset = paragraph.text.size();
      needed.category = CitationCategory::needed;
      paragraph.citations.push_back(std::move(needed));
    }
    return paragraph;
  }

  void add_anchors() {
    // each person's first paragraph anchors any organization/location title
    // it happens to include; titles never overlap mid-word by construction
    std::map<std::string, std::string> targets;
    for (const auto& a : wiki.articles) {
      if (entity_class[a.id] == "organization" || entity_class[a.id] == "location") {
        targets[a.title] = a.id;
      }
    }
    GazetteerLinker linker(targets);
    for (auto& a : wiki.articles) {
      for (auto& section : a.sections) {
        for (auto& paragraph : section.paragraphs) {
          for (const auto& m : linker.link(paragraph.text, 0)) {
            paragraph.anchors.push_back({m.surface, m.entity, m.offset});
          }
        }
      }
    }
  }

  // span gold: coverage by construction. The fragments of the statement that
  // produced a news citation are covered; other fragments of the paragraph
  // are not. Sentence skips arise from multi-statement paragraphs.
  std::string span_gold_jsonl() {
    std::string out;
    int emitted = 0;
    for (const auto& a : wiki.articles) {
      for (std::size_t si = 0; si < a.sections.size(); ++si) {
        const auto& section = a.sections[si];
        for (std::size_t pi = 0; pi < section.paragraphs.size(); ++pi) {
          const auto& paragraph = section.paragraphs[pi];
          auto statements = extract_statements(a);
          for (const auto& c : paragraph.citations) {
            if (c.category != CitationCategory::news) continue;
            auto fragments = segment_fragments(paragraph);
            // covered fragments: those inside the statement that ends at the marker
            const Statement* owner = nullptr;
            for (const auto& st : statements) {
              if (st.section_index != static_cast<int>(si) ||
                  st.paragraph_index != static_cast<int>(pi)) {
                continue;
              }
              for (const auto& sc : st.citations) {
                if (sc.url == c.url) owner = &st;
              }
            }
            if (!owner) continue;
            nlohmann::ordered_json j;
            j["paragraph_id"] = a.id + "/" + std::to_string(si) + "/" + std::to_string(pi);
            j["citation_url"] = c.url;
            nlohmann::ordered_json frags = nlohmann::ordered_json::array();
            for (const auto& f : fragments) {
              bool covered = f.span_end > owner->span_begin && f.span_begin < owner->span_end;
              frags.push_back({{"text", f.text}, {"covered", covered}});
            }
            j["fragments"] = std::move(frags);
            out += j.dump();
            out += "\n";
            ++emitted;
          }
        }
      }
    }
    std::fprintf(stderr, "span gold instances: %d\n", emitted);
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = argc > 1 ? argv[1] : "data/mini";
  std::filesystem::create_directories(out_dir);
  Generator gen;
  gen.build();

  save_wiki_corpus(gen.wiki, out_dir + "/wiki.jsonl");
  save_news_corpus(gen.news, out_dir + "/news.jsonl");
  gen.taxonomy.save(out_dir + "/taxonomy.json");
  write_file(out_dir + "/span_gold.jsonl", gen.span_gold_jsonl());

  nlohmann::ordered_json config;
  config["wiki_path"] = out_dir + "/wiki.jsonl";
  config["news_path"] = out_dir + "/news.jsonl";
  config["taxonomy_path"] = out_dir + "/taxonomy.json";
  config["span_gold_path"] = out_dir + "/span_gold.jsonl";
  config["out_dir"] = "out/mini";
  config["seed"] = 7;
  config["threads"] = 1;
  config["snapshot_year"] = 2015;
  config["retrieval_model"] = "dfr";
  config["retrieval_depth"] = 25;
  config["sc_tau"] = 0.9;
  config["sc_min_type_entities"] = 10;
  config["sc_min_section_statements"] = 3;
  config["sc_trees"] = 40;
  config["fc_trees"] = 40;
  config["fc_cost_weight"] = 8.0;
  config["template_kmin"] = 2;
  config["template_kmax"] = 6;
  config["lda_topics"] = 3;
  config["lda_iterations"] = 60;
  write_file(out_dir + "/config.json", config.dump(2) + "\n");

  int statements = static_cast<int>(extract_statements(gen.wiki).size());
  std::fprintf(stderr, "articles: %zu, statements: %d, news docs: %zu\n", gen.wiki.articles.size(),
               statements, gen.news.articles.size());
  return 0;
}
