#include "newscite/pipeline/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "newscite/categorize/sc.hpp"
#include "newscite/common.hpp"
#include "newscite/corpus/curation.hpp"
#include "newscite/corpus/jsonl.hpp"
#include "newscite/corpus/statements.hpp"
#include "newscite/corpus/taxonomy.hpp"
#include "newscite/discover/fc.hpp"
#include "newscite/eval/metrics.hpp"
#include "newscite/ml/lda.hpp"
#include "newscite/span/metrics.hpp"
#include "newscite/span/models.hpp"
#include "newscite/suggest/analytics.hpp"
#include "newscite/suggest/placement.hpp"

namespace newscite::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Assets {
  corpus::WikiCorpus wiki;
  corpus::NewsCorpus news;
  corpus::TypeTaxonomy taxonomy;
  std::vector<corpus::Statement> statements;
  std::map<std::string, const corpus::WikiArticle*> article_by_id;
};

Assets load_assets(const RunConfig& config, bool curate) {
  Assets a;
  auto wiki = corpus::load_wiki_corpus(config.wiki_path);
  if (!wiki.errors.empty() && wiki.corpus.articles.empty()) {
    throw Error("wiki corpus unreadable: every line failed to parse");
  }
  a.wiki = std::move(wiki.corpus);
  auto news = corpus::load_news_corpus(config.news_path);
  a.news = std::move(news.corpus);
  a.taxonomy = corpus::make_depth_consistent(corpus::TypeTaxonomy::load(config.taxonomy_path));
  if (curate) corpus::curate_citation_categories(a.wiki);
  a.statements = corpus::extract_statements(a.wiki);
  for (const auto& article : a.wiki.articles) a.article_by_id[article.id] = &article;
  return a;
}

void write_meta(const RunConfig& config, const std::string& stage,
                const std::vector<std::string>& notes = {}) {
  ordered_json meta;
  meta["stage"] = stage;
  meta["config_hash"] = config.hash();
  meta["seed"] = config.seed;
  if (!notes.empty()) meta["notes"] = notes;
  meta["config"] = ordered_json::parse(config.canonical_json());
  corpus::write_file((fs::path(config.out_dir) / (stage + "_meta.json")).string(), meta.dump(2) + "\n");
}

// recorded in every report of a stage that uses the entailment features
const char* kTreeKernelNote =
    "deviation: tree-kernel sentence similarity is replaced by trigram-POS-sequence Jaccard "
    "(parse-free proxy)";
const char* kDfrNote =
    "dfr instantiation: Poisson randomness model, Laplace after-effect, log2 length normalization";

void ensure_out(const RunConfig& config, const char* subdir = nullptr) {
  fs::create_directories(config.out_dir);
  if (subdir) fs::create_directories(fs::path(config.out_dir) / subdir);
}

// Reference models shared by SC features and FC features: per eligible type,
// the KN LM and topic terms of the news cited from that type's statements.
struct TypeReferences {
  std::map<std::string, text::NgramLm> lms;
  std::map<std::string, std::vector<std::string>> topics;
};

std::vector<std::string> doc_words(const corpus::NewsArticle& n) {
  std::vector<std::string> out;
  for (const auto& tok : text::tokenize(n.full_text())) {
    if (std::isalnum(static_cast<unsigned char>(tok.surface[0]))) out.push_back(to_lower(tok.surface));
  }
  return out;
}

TypeReferences build_type_references(const Assets& a, const RunConfig& config) {
  TypeReferences refs;
  // type -> cited news urls
  std::map<std::string, std::set<std::string>> cited;
  std::map<std::string, std::set<std::string>> entities_per_type;
  for (const auto& article : a.wiki.articles) {
    auto types = categorize::expanded_types(article, a.taxonomy);
    for (const auto& st : corpus::extract_statements(article)) {
      for (const auto& c : st.citations) {
        if (c.category != corpus::CitationCategory::news) continue;
        for (const auto& t : types) cited[t].insert(c.url);
      }
    }
    for (const auto& t : types) entities_per_type[t].insert(article.id);
  }
  for (const auto& [type, urls] : cited) {
    auto support = entities_per_type.find(type);
    if (support == entities_per_type.end() ||
        static_cast<long>(support->second.size()) < config.sc_min_type_entities) {
      continue;
    }
    std::vector<std::vector<std::string>> docs;
    for (const auto& url : urls) {
      const auto* n = a.news.find(url);
      if (n) docs.push_back(doc_words(*n));
    }
    if (docs.empty()) continue;
    refs.lms.emplace(type, text::NgramLm::train(docs, 3));
    ml::LdaParams lda;
    lda.topics = std::min<int>(config.lda_topics, static_cast<int>(docs.size()));
    lda.iterations = config.lda_iterations;
    lda.seed = derive_seed(config.seed, fnv1a(type));
    lda.top_m = config.lda_top_m;
    auto per_doc = ml::lda_topic_terms(docs, lda);
    std::set<std::string> merged;
    for (const auto& terms : per_doc) merged.insert(terms.begin(), terms.end());
    refs.topics.emplace(type, std::vector<std::string>(merged.begin(), merged.end()));
  }
  return refs;
}

categorize::ScContext make_sc_context(const Assets& a, const RunConfig& config,
                                      const categorize::PriorTables& priors,
                                      const TypeReferences& refs, const text::RuleTagger& tagger,
                                      const text::DiscourseLexicon& discourse,
                                      const std::map<std::string, std::set<std::string>>& types_by_id) {
  categorize::ScContext ctx;
  ctx.priors = &priors;
  ctx.taxonomy = &a.taxonomy;
  ctx.snapshot_year = config.snapshot_year;
  ctx.tagger = &tagger;
  ctx.discourse = &discourse;
  ctx.type_lms = &refs.lms;
  ctx.type_topics = &refs.topics;
  ctx.types_by_id = &types_by_id;
  return ctx;
}

std::map<std::string, std::set<std::string>> expand_all_types(const Assets& a) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& article : a.wiki.articles) {
    out[article.id] = categorize::expanded_types(article, a.taxonomy);
  }
  return out;
}

std::vector<std::string> eligible_types(const Assets& a, const RunConfig& config) {
  std::map<std::string, std::set<std::string>> entities_per_type;
  for (const auto& article : a.wiki.articles) {
    for (const auto& t : categorize::expanded_types(article, a.taxonomy)) {
      entities_per_type[t].insert(article.id);
    }
  }
  std::vector<std::string> out;
  for (const auto& [t, ids] : entities_per_type) {
    if (static_cast<long>(ids.size()) >= config.sc_min_type_entities) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

text::CorpusStats statement_stats(const std::vector<corpus::Statement>& statements,
                                  const index::IndexOptions& options) {
  text::CorpusStats stats;
  for (const auto& st : statements) stats.add_document(index::analyze_terms(st.text, options));
  return stats;
}

std::string suggestions_to_jsonl(const std::vector<discover::PipelineResult>& results) {
  std::string out;
  for (const auto& r : results) {
    ordered_json j;
    j["statement"] = r.statement_id;
    ordered_json accepted = ordered_json::array();
    for (const auto& acc : r.accepted) {
      accepted.push_back({{"url", acc.url},
                          {"score", acc.score},
                          {"rank", acc.rank},
                          {"stage_scores",
                           {{"retrieval_score", acc.retrieval_score},
                            {"retrieval_rank", acc.retrieval_rank}}}});
    }
    j["accepted"] = std::move(accepted);
    j["sc_category"] = r.sc_category;
    if (!r.reason.empty()) j["reason"] = r.reason;
    out += j.dump();
    out += "\n";
  }
  return out;
}

// span gold JSONL: {paragraph_id, citation_url, fragments: [{text, covered}]}
std::vector<span::SpanInstance> load_span_gold(const RunConfig& config, const Assets& a) {
  std::vector<span::SpanInstance> out;
  std::string content = corpus::read_file(config.span_gold_path);
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    std::string pid = j.at("paragraph_id").get<std::string>();
    std::string url = j.at("citation_url").get<std::string>();
    auto parts = split(pid, '/');
    if (parts.size() != 3) throw Error("span gold line " + std::to_string(line_no) + ": bad paragraph_id");
    const auto* article = a.wiki.find(parts[0]);
    if (!article) throw Error("span gold: unknown article " + parts[0]);
    const auto& section = article->sections.at(std::stoul(parts[1]));
    const auto& paragraph = section.paragraphs.at(std::stoul(parts[2]));
    const corpus::Citation* citation = nullptr;
    for (const auto& c : paragraph.citations) {
      if (c.url == url) citation = &c;
    }
    if (!citation) throw Error("span gold: citation url not in paragraph: " + url);
    auto inst = span::SpanInstance::build(pid, parts[0], paragraph, *citation, a.news.find(url));
    const auto& frags = j.at("fragments");
    if (frags.size() != inst.fragments.size()) {
      throw Error("span gold line " + std::to_string(line_no) + ": fragment count mismatch (got " +
                  std::to_string(frags.size()) + ", segmentation yields " +
                  std::to_string(inst.fragments.size()) + ")");
    }
    std::vector<bool> gold;
    for (const auto& f : frags) gold.push_back(f.at("covered").get<bool>());
    inst.gold = std::move(gold);
    out.push_back(std::move(inst));
  }
  return out;
}

std::string span_metrics_csv_row(const std::string& method, const span::SpanMetrics& m) {
  return method + "," + format_double(m.map) + "," + format_double(m.recall) + "," +
         format_double(m.f1) + "," + format_double(m.delta_words) + "," +
         format_double(m.delta_fragments) + "\n";
}

// entity class for templates: the deepest declared type, root otherwise
std::string entity_class_of(const corpus::WikiArticle& article, const corpus::TypeTaxonomy& taxonomy) {
  std::string best = taxonomy.root;
  int best_depth = -1;
  for (const auto& t : article.types) {
    auto d = taxonomy.depth(t);
    if (d && *d > best_depth) {
      best_depth = *d;
      best = t;
    }
  }
  return best;
}

struct SuggestAssets {
  suggest::AuthorityScores authority;
  std::map<std::string, double> domain_auth;
  std::vector<suggest::EntityProfile> profiles;
  std::map<std::string, const suggest::EntityProfile*> profile_by_id;
};

SuggestAssets build_suggest_assets(const Assets& a) {
  SuggestAssets s;
  for (const auto& article : a.wiki.articles) {
    s.profiles.push_back(suggest::EntityProfile::from_article(article));
  }
  for (const auto& p : s.profiles) s.profile_by_id[p.entity_id] = &p;
  s.authority = suggest::compute_authority(a.news, s.profiles);
  s.domain_auth = suggest::domain_authority(a.wiki);
  return s;
}

suggest::PlacementContext make_placement_context(const RunConfig& config, const Assets& a,
                                                 const SuggestAssets& s, const text::RuleTagger& tagger) {
  suggest::PlacementContext ctx;
  ctx.authority = &s.authority;
  ctx.domain_auth = &s.domain_auth;
  ctx.news = &a.news;
  ctx.tagger = &tagger;
  ctx.novelty_lambda = config.novelty_lambda;
  ctx.novelty_term = config.novelty_term();
  ctx.phi_exponent = config.phi_exponent();
  ctx.authority_epsilon = config.authority_epsilon;
  return ctx;
}

// AEP gold pairs: (article, entity) relevant iff the article's url is cited
// from the entity's page; negatives are mentioned-but-not-cited entities.
struct GoldPairs {
  std::vector<suggest::AepPair> pairs;
};

GoldPairs build_aep_pairs(const Assets& a, const SuggestAssets& s) {
  GoldPairs out;
  std::map<std::string, std::set<std::string>> cited_by;  // url -> entity ids
  for (const auto& article : a.wiki.articles) {
    for (const auto& st : corpus::extract_statements(article)) {
      for (const auto& c : st.citations) {
        if (c.category == corpus::CitationCategory::news) cited_by[c.url].insert(article.id);
      }
    }
  }
  for (const auto& n : a.news.articles) {
    auto cited = cited_by.find(n.url);
    for (const auto& entity : suggest::article_entities(n)) {
      auto profile = s.profile_by_id.find(entity);
      if (profile == s.profile_by_id.end()) continue;
      if (profile->second->year > n.published_at.year - 1) continue;  // hygiene
      bool relevant = cited != cited_by.end() && cited->second.count(entity) > 0;
      out.pairs.push_back({&n, profile->second, relevant});
    }
  }
  return out;
}

}  // namespace

void run_ingest(const RunConfig& config) {
  ensure_out(config);
  auto wiki = corpus::load_wiki_corpus(config.wiki_path);
  auto news = corpus::load_news_corpus(config.news_path);
  auto taxonomy = corpus::make_depth_consistent(corpus::TypeTaxonomy::load(config.taxonomy_path));

  fs::path out(config.out_dir);
  corpus::save_wiki_corpus(wiki.corpus, (out / "wiki.jsonl").string());
  corpus::save_news_corpus(news.corpus, (out / "news.jsonl").string());
  taxonomy.save((out / "taxonomy.json").string());

  std::string errors = "source,line,message\n";
  for (const auto& e : wiki.errors) {
    errors += "wiki," + std::to_string(e.line) + "," + csv_escape(e.message) + "\n";
  }
  for (const auto& e : news.errors) {
    errors += "news," + std::to_string(e.line) + "," + csv_escape(e.message) + "\n";
  }
  // every declared type must resolve in the loaded taxonomy
  for (const auto& article : wiki.corpus.articles) {
    for (const auto& t : article.types) {
      if (!taxonomy.has_node(t)) {
        errors += "wiki-type,0," + csv_escape("article " + article.id + ": unresolved type " + t) + "\n";
      }
    }
  }
  corpus::write_file((out / "ingest_errors.csv").string(), errors);

  ordered_json stats;
  stats["wiki_articles"] = wiki.corpus.articles.size();
  stats["wiki_errors"] = wiki.errors.size();
  stats["news_articles"] = news.corpus.articles.size();
  stats["news_errors"] = news.errors.size();
  stats["news_dropped_short"] = news.dropped_short;
  stats["news_dropped_language"] = news.dropped_language;
  stats["news_dropped_mentions"] = news.dropped_mentions;
  stats["statements"] = corpus::extract_statements(wiki.corpus).size();
  corpus::write_file((out / "ingest_stats.json").string(), stats.dump(2) + "\n");
  write_meta(config, "ingest");
}

void run_curate(const RunConfig& config) {
  ensure_out(config);
  auto wiki = corpus::load_wiki_corpus(config.wiki_path);
  auto report = corpus::curate_citation_categories(wiki.corpus);
  fs::path out(config.out_dir);
  corpus::save_wiki_corpus(wiki.corpus, (out / "curated.jsonl").string());
  corpus::write_file((out / "curation_report.csv").string(), report.to_csv());
  write_meta(config, "curate");
}

void run_index(const RunConfig& config) {
  ensure_out(config);
  auto news = corpus::load_news_corpus(config.news_path);
  index::IndexOptions options;
  options.stem = config.stemming;
  auto idx = index::build_index(news.corpus, options);
  corpus::write_file((fs::path(config.out_dir) / "index.json").string(), idx.to_json());
  write_meta(config, "index", {kDfrNote});
}

void run_train_sc(const RunConfig& config, const std::string& type) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;
  categorize::PriorFilters filters{config.sc_min_section_statements, config.sc_min_type_entities};
  auto priors = categorize::compute_priors(a.wiki, a.taxonomy, filters);
  auto refs = build_type_references(a, config);
  auto types_by_id = expand_all_types(a);
  auto ctx = make_sc_context(a, config, priors, refs, tagger, discourse, types_by_id);

  categorize::ScTrainConfig train_config;
  train_config.tau = config.sc_tau;
  train_config.seed = config.seed;
  train_config.min_entities = config.sc_min_type_entities;
  train_config.ensemble.num_trees = config.sc_trees;
  train_config.ensemble.max_depth = config.sc_max_depth;
  train_config.ensemble.threads = config.threads;
  auto result = categorize::train_sc(a.wiki, a.taxonomy, type, ctx, train_config);

  fs::path out(config.out_dir);
  corpus::write_file((out / "models" / ("sc_" + type + ".json")).string(), result.model.to_json());
  if (!result.test_outcomes.empty()) {
    std::vector<std::string> gold, pred;
    for (const auto& [g, p] : result.test_outcomes) {
      gold.push_back(g);
      pred.push_back(p);
    }
    auto report = eval::classification_metrics(pred, gold);
    report.metadata["config_hash"] = config.hash();
    report.metadata["seed"] = std::to_string(config.seed);
    report.metadata["type"] = type;
    report.metadata["split"] = "entity-10pct-holdout";
    corpus::write_file((out / ("sc_" + type + "_metrics.csv")).string(), report.to_csv());
    corpus::write_file((out / ("sc_" + type + "_metrics.json")).string(), report.to_json() + "\n");
  }
  write_meta(config, "train-sc");
}

void run_categorize(const RunConfig& config) {
  ensure_out(config);
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;
  categorize::PriorFilters filters{config.sc_min_section_statements, config.sc_min_type_entities};
  auto priors = categorize::compute_priors(a.wiki, a.taxonomy, filters);
  auto refs = build_type_references(a, config);
  auto types_by_id = expand_all_types(a);
  auto ctx = make_sc_context(a, config, priors, refs, tagger, discourse, types_by_id);

  std::vector<categorize::ScModel> models;
  fs::path models_dir = fs::path(config.out_dir) / "models";
  std::vector<std::string> model_files;
  if (fs::exists(models_dir)) {
    for (const auto& entry : fs::directory_iterator(models_dir)) {
      auto name = entry.path().filename().string();
      if (name.rfind("sc_", 0) == 0 && name.find(".json") != std::string::npos) {
        model_files.push_back(entry.path().string());
      }
    }
  }
  std::sort(model_files.begin(), model_files.end());
  for (const auto& f : model_files) {
    models.push_back(categorize::ScModel::from_json(corpus::read_file(f)));
  }
  if (models.empty()) throw Error("categorize: no SC models under " + models_dir.string());

  std::string csv = "statement_id,predicted";
  for (const auto& cls : corpus::sc_class_names()) csv += "," + cls;
  csv += "\n";
  for (const auto& st : a.statements) {
    const auto* entity = a.article_by_id.at(st.article_id);
    auto vote = categorize::categorize_statement(st, *entity, models, ctx);
    csv += csv_escape(st.id) + "," + vote.category;
    for (const auto& cls : corpus::sc_class_names()) {
      auto it = vote.vote_share.find(cls);
      csv += "," + format_double(it == vote.vote_share.end() ? 0.0 : it->second);
    }
    csv += "\n";
  }
  corpus::write_file((fs::path(config.out_dir) / "categorize.csv").string(), csv);
  write_meta(config, "categorize");
}

namespace {

struct FcAssets {
  index::InvertedIndex idx;
  text::CorpusStats stats;
  discover::AuthorityTables authority;
  TypeReferences refs;
};

discover::FcContext make_fc_context(const RunConfig& config, const Assets& a, const FcAssets& f,
                                    const text::RuleTagger& tagger) {
  discover::FcContext ctx;
  ctx.news = &a.news;
  ctx.index = &f.idx;
  ctx.statement_stats = &f.stats;
  ctx.tagger = &tagger;
  ctx.authority = &f.authority;
  ctx.taxonomy = &a.taxonomy;
  ctx.type_topics = &f.refs.topics;
  ctx.type_lms = &f.refs.lms;
  ctx.model = config.retrieval();
  ctx.depth = config.retrieval_depth;
  ctx.phi_exponent = config.phi_exponent();
  return ctx;
}

FcAssets build_fc_assets(const RunConfig& config, const Assets& a) {
  FcAssets f;
  index::IndexOptions options;
  options.stem = config.stemming;
  f.idx = index::build_index(a.news, options);
  f.stats = statement_stats(a.statements, options);
  f.authority = discover::compute_authority_tables(a.wiki, a.taxonomy);
  f.refs = build_type_references(a, config);
  return f;
}

std::vector<discover::CandidatePair> labeled_fc_pairs(const Assets& a, const discover::FcContext& ctx) {
  std::vector<discover::CandidatePair> out;
  for (const auto& st : a.statements) {
    if (!st.has_news_citation()) continue;
    std::set<std::string> gt;
    for (const auto& c : st.citations) {
      if (c.category == corpus::CitationCategory::news) gt.insert(c.url);
    }
    const auto* entity = a.article_by_id.at(st.article_id);
    auto pairs = discover::candidates(st, ctx, ctx.depth);
    for (auto& pair : pairs) {
      discover::compute_pair_features(pair, st, *entity, ctx);
      pair.label = gt.count(pair.doc_url) > 0;
      out.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace

void run_train_fc(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  FcAssets f = build_fc_assets(config, a);
  auto ctx = make_fc_context(config, a, f, tagger);
  auto pairs = labeled_fc_pairs(a, ctx);

  discover::FcTrainConfig train_config;
  train_config.cost_weight = config.fc_cost_weight;
  train_config.seed = config.seed;
  train_config.threshold = config.fc_threshold;
  train_config.ensemble.num_trees = config.fc_trees;
  train_config.ensemble.threads = config.threads;
  auto model = discover::train_fc(pairs, train_config);
  corpus::write_file((fs::path(config.out_dir) / "models" / "fc.json").string(), model.to_json());
  corpus::write_file((fs::path(config.out_dir) / "models" / "authority.json").string(),
                     f.authority.to_json());
  write_meta(config, "train-fc", {kTreeKernelNote, kDfrNote});
}

void run_discover(const RunConfig& config) {
  ensure_out(config);
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  FcAssets f = build_fc_assets(config, a);
  auto ctx = make_fc_context(config, a, f, tagger);
  auto model = discover::FcModel::from_json(
      corpus::read_file((fs::path(config.out_dir) / "models" / "fc.json").string()));

  std::vector<discover::PipelineResult> results;
  for (const auto& st : a.statements) {
    if (!st.has_news_citation() && !st.citations.empty()) continue;  // news + citation-needed only
    const auto* entity = a.article_by_id.at(st.article_id);
    discover::PipelineResult r;
    r.statement_id = st.id;
    r.sc_category = "news";
    r.accepted = discover::discover_citations(st, *entity, model, ctx, ctx.depth);
    results.push_back(std::move(r));
  }
  corpus::write_file((fs::path(config.out_dir) / "discoveries.jsonl").string(),
                     suggestions_to_jsonl(results));
  write_meta(config, "discover", {kTreeKernelNote, kDfrNote});
}

void run_full_pipeline(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;

  // stage 1 assets and models
  categorize::PriorFilters filters{config.sc_min_section_statements, config.sc_min_type_entities};
  auto priors = categorize::compute_priors(a.wiki, a.taxonomy, filters);
  auto refs = build_type_references(a, config);
  auto types_by_id = expand_all_types(a);
  auto sc_ctx = make_sc_context(a, config, priors, refs, tagger, discourse, types_by_id);

  std::vector<categorize::ScModel> sc_models;
  std::vector<std::pair<std::string, std::string>> held_out;  // (gold, predicted) across types
  for (const auto& type : eligible_types(a, config)) {
    categorize::ScTrainConfig train_config;
    train_config.tau = config.sc_tau;
    train_config.seed = config.seed;
    train_config.min_entities = config.sc_min_type_entities;
    train_config.ensemble.num_trees = config.sc_trees;
    train_config.ensemble.max_depth = config.sc_max_depth;
    train_config.ensemble.threads = config.threads;
    auto result = categorize::train_sc(a.wiki, a.taxonomy, type, sc_ctx, train_config);
    held_out.insert(held_out.end(), result.test_outcomes.begin(), result.test_outcomes.end());
    corpus::write_file((fs::path(config.out_dir) / "models" / ("sc_" + type + ".json")).string(),
                       result.model.to_json());
    sc_models.push_back(std::move(result.model));
  }
  if (sc_models.empty()) throw Error("pipeline: no type reached the entity-support threshold");

  // stage 2 assets and model
  FcAssets f = build_fc_assets(config, a);
  auto fc_ctx = make_fc_context(config, a, f, tagger);
  auto pairs = labeled_fc_pairs(a, fc_ctx);
  discover::FcTrainConfig fc_train;
  fc_train.cost_weight = config.fc_cost_weight;
  fc_train.seed = config.seed;
  fc_train.threshold = config.fc_threshold;
  fc_train.ensemble.num_trees = config.fc_trees;
  fc_train.ensemble.threads = config.threads;
  auto fc_model = discover::train_fc(pairs, fc_train);
  corpus::write_file((fs::path(config.out_dir) / "models" / "fc.json").string(), fc_model.to_json());

  // two-stage run over every statement
  std::vector<discover::PipelineResult> results;
  std::map<std::string, std::vector<std::string>> accepted_by_statement;
  std::map<std::string, std::set<std::string>> gt_by_statement;
  for (const auto& st : a.statements) {
    const auto* entity = a.article_by_id.at(st.article_id);
    auto r = discover::run_pipeline(st, *entity, sc_models, sc_ctx, fc_model, fc_ctx);
    for (const auto& acc : r.accepted) accepted_by_statement[st.id].push_back(acc.url);
    for (const auto& c : st.citations) {
      if (c.category == corpus::CitationCategory::news) gt_by_statement[st.id].insert(c.url);
    }
    results.push_back(std::move(r));
  }
  corpus::write_file((fs::path(config.out_dir) / "pipeline_suggestions.jsonl").string(),
                     suggestions_to_jsonl(results));

  // metrics: SC held-out report + FC E1 over pipeline acceptances
  std::string csv = "metric,value\n";
  if (!held_out.empty()) {
    std::vector<std::string> gold, pred;
    for (const auto& [g, p] : held_out) {
      gold.push_back(g);
      pred.push_back(p);
    }
    auto report = eval::classification_metrics(pred, gold);
    csv += "sc_micro_precision," + format_double(report.micro_precision) + "\n";
    csv += "sc_micro_f1," + format_double(report.micro_f1) + "\n";
    csv += "sc_kappa," + format_double(report.kappa) + "\n";
  }
  auto e1 = discover::evaluate_e1(accepted_by_statement, gt_by_statement, a.news);
  csv += "fc_e1_precision," + format_double(e1.e1.precision) + "\n";
  csv += "fc_e1_recall," + format_double(e1.e1.recall) + "\n";
  csv += "fc_e1_f1," + format_double(e1.e1.f1) + "\n";
  csv += "fc_e1fp_precision," + format_double(e1.e1_fp.precision) + "\n";
  csv += "fc_e1fp_recall," + format_double(e1.e1_fp.recall) + "\n";
  csv += "fc_e1fp_f1," + format_double(e1.e1_fp.f1) + "\n";
  csv += "note," + csv_escape(kTreeKernelNote) + "\n";
  corpus::write_file((fs::path(config.out_dir) / "pipeline_metrics.csv").string(), csv);
  write_meta(config, "pipeline", {kTreeKernelNote, kDfrNote});
}

void run_span_train(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  auto instances = load_span_gold(config, a);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;
  span::SpanFeatureContext ctx{&tagger, &discourse};
  span::SpanTrainConfig train_config;
  train_config.l2 = config.span_l2;
  train_config.seed = config.seed;
  train_config.threads = config.threads;
  auto csps = span::train_csps(instances, ctx, train_config);
  auto cspc = span::train_cspc(instances, ctx, train_config);
  corpus::write_file((fs::path(config.out_dir) / "models" / "csps.json").string(), csps.to_json());
  corpus::write_file((fs::path(config.out_dir) / "models" / "cspc.json").string(), cspc.to_json());
  write_meta(config, "span-train");
}

void run_span_predict(const RunConfig& config) {
  ensure_out(config);
  Assets a = load_assets(config, true);
  auto instances = load_span_gold(config, a);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;
  span::SpanFeatureContext ctx{&tagger, &discourse};
  auto csps = span::CspsModel::from_json(
      corpus::read_file((fs::path(config.out_dir) / "models" / "csps.json").string()));

  std::string out;
  for (const auto& inst : instances) {
    auto pred = span::predict_csps(inst, csps, ctx);
    ordered_json j;
    j["paragraph_id"] = inst.paragraph_id;
    j["citation_url"] = inst.citation.url;
    j["method"] = pred.method;
    j["selected"] = pred.selected;
    ordered_json texts = ordered_json::array();
    for (auto i : pred.selected) texts.push_back(inst.fragments[i].text);
    j["selected_texts"] = std::move(texts);
    out += j.dump();
    out += "\n";
  }
  corpus::write_file((fs::path(config.out_dir) / "span_predictions.jsonl").string(), out);
  write_meta(config, "span-predict");
}

void run_span_eval(const RunConfig& config) {
  ensure_out(config);
  Assets a = load_assets(config, true);
  auto instances = load_span_gold(config, a);
  text::RuleTagger tagger;
  text::DiscourseLexicon discourse;
  span::SpanFeatureContext ctx{&tagger, &discourse};

  auto folds = span::cv_folds(instances, config.span_folds, config.seed);
  std::vector<span::ScoredInstance> csps_scored, cspc_scored, ic_scored, csw_scored, cs_scored;
  for (int fold = 0; fold < config.span_folds; ++fold) {
    std::vector<span::SpanInstance> train;
    std::vector<const span::SpanInstance*> test;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (folds[i] == fold) test.push_back(&instances[i]);
      else train.push_back(instances[i]);
    }
    if (train.empty() || test.empty()) continue;
    span::SpanTrainConfig train_config;
    train_config.l2 = config.span_l2;
    train_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(fold));
    train_config.threads = config.threads;
    auto csps = span::train_csps(train, ctx, train_config);
    auto cspc = span::train_cspc(train, ctx, train_config);
    for (const auto* inst : test) {
      csps_scored.push_back({inst, span::predict_csps(*inst, csps, ctx)});
      cspc_scored.push_back({inst, span::predict_cspc(*inst, cspc, ctx)});
      ic_scored.push_back({inst, span::baseline_span(*inst, span::BaselineMethod::ic)});
      csw_scored.push_back({inst, span::baseline_span(*inst, span::BaselineMethod::csw)});
      cs_scored.push_back({inst, span::baseline_span(*inst, span::BaselineMethod::cs)});
    }
  }
  std::string csv = "method,map,recall,f1,delta_words,delta_fragments\n";
  csv += span_metrics_csv_row("IC", span::span_metrics(ic_scored));
  csv += span_metrics_csv_row("CSW", span::span_metrics(csw_scored));
  csv += span_metrics_csv_row("CS", span::span_metrics(cs_scored));
  csv += span_metrics_csv_row("CSPC", span::span_metrics(cspc_scored));
  csv += span_metrics_csv_row("CSPS", span::span_metrics(csps_scored));
  corpus::write_file((fs::path(config.out_dir) / "span_metrics.csv").string(), csv);
  write_meta(config, "span-eval");
}

void run_templates(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  std::map<std::string, std::vector<suggest::TemplateInput>> by_class;
  for (const auto& article : a.wiki.articles) {
    std::string cls = entity_class_of(article, a.taxonomy);
    for (const auto& section : article.sections) {
      suggest::TemplateInput input;
      input.heading = section.heading;
      for (const auto& p : section.paragraphs) {
        if (!input.text.empty()) input.text += "\n";
        input.text += p.text;
        for (const auto& anchor : p.anchors) input.linked_entities.insert(anchor.target);
      }
      by_class[cls].push_back(std::move(input));
    }
  }
  for (const auto& [cls, sections] : by_class) {
    suggest::TemplateParams params;
    params.kmin = config.template_kmin;
    params.kmax = config.template_kmax;
    params.seed = derive_seed(config.seed, fnv1a(cls));
    auto tmpl = suggest::build_section_templates(cls, sections, params);
    corpus::write_file((fs::path(config.out_dir) / "models" / ("template_" + cls + ".json")).string(),
                       tmpl.to_json());
  }
  write_meta(config, "templates");
}

void run_train_aep(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  SuggestAssets s = build_suggest_assets(a);
  auto ctx = make_placement_context(config, a, s, tagger);
  auto gold = build_aep_pairs(a, s);
  if (gold.pairs.empty()) throw Error("train-aep: no news-entity pairs with valid profiles");
  ml::EnsembleParams params;
  params.seed = config.seed;
  params.threads = config.threads;
  params.class_weights = {1.0, config.fc_cost_weight};
  auto model = suggest::train_aep(gold.pairs, ctx, params);
  corpus::write_file((fs::path(config.out_dir) / "models" / "aep.json").string(), model.to_json());
  write_meta(config, "train-aep");
}

void run_train_asp(const RunConfig& config) {
  ensure_out(config, "models");
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  SuggestAssets s = build_suggest_assets(a);
  auto ctx = make_placement_context(config, a, s, tagger);

  // gold: (n, e, section) from news citations inside sections
  std::map<std::string, std::vector<suggest::AspTriple>> triples_by_class;
  std::map<std::string, std::vector<suggest::TemplateInput>> sections_by_class;
  for (const auto& article : a.wiki.articles) {
    std::string cls = entity_class_of(article, a.taxonomy);
    for (const auto& section : article.sections) {
      suggest::TemplateInput input;
      input.heading = section.heading;
      for (const auto& p : section.paragraphs) {
        if (!input.text.empty()) input.text += "\n";
        input.text += p.text;
        for (const auto& anchor : p.anchors) input.linked_entities.insert(anchor.target);
      }
      sections_by_class[cls].push_back(std::move(input));
    }
  }
  std::map<std::string, suggest::SectionTemplate> templates;
  for (const auto& [cls, sections] : sections_by_class) {
    suggest::TemplateParams params;
    params.kmin = config.template_kmin;
    params.kmax = config.template_kmax;
    params.seed = derive_seed(config.seed, fnv1a(cls));
    templates.emplace(cls, suggest::build_section_templates(cls, sections, params));
  }

  for (const auto& article : a.wiki.articles) {
    std::string cls = entity_class_of(article, a.taxonomy);
    const auto& tmpl = templates.at(cls);
    const auto* profile = s.profile_by_id.at(article.id);
    for (const auto& section : article.sections) {
      std::string text;
      for (const auto& p : section.paragraphs) text += p.text + "\n";
      std::size_t slot = tmpl.assign(section.heading, text);
      for (const auto& p : section.paragraphs) {
        for (const auto& c : p.citations) {
          if (c.category != corpus::CitationCategory::news) continue;
          const auto* n = a.news.find(c.url);
          if (!n || profile->year > n->published_at.year - 1) continue;
          triples_by_class[cls].push_back({n, profile, tmpl.sections[slot].label});
        }
      }
    }
  }
  for (const auto& [cls, triples] : triples_by_class) {
    if (triples.empty()) continue;
    ml::EnsembleParams params;
    params.seed = derive_seed(config.seed, fnv1a(cls) ^ 0xa5f);
    params.threads = config.threads;
    auto model = suggest::train_asp(triples, templates.at(cls), ctx, params);
    corpus::write_file((fs::path(config.out_dir) / "models" / ("asp_" + cls + ".json")).string(),
                       model.to_json());
    corpus::write_file((fs::path(config.out_dir) / "models" / ("template_" + cls + ".json")).string(),
                       templates.at(cls).to_json());
  }
  write_meta(config, "train-asp");
}

void run_suggest(const RunConfig& config) {
  ensure_out(config);
  Assets a = load_assets(config, true);
  text::RuleTagger tagger;
  SuggestAssets s = build_suggest_assets(a);
  auto ctx = make_placement_context(config, a, s, tagger);

  fs::path models = fs::path(config.out_dir) / "models";
  auto aep = suggest::AepModel::from_json(corpus::read_file((models / "aep.json").string()));
  std::map<std::string, suggest::AspModel> asp_models;
  std::map<std::string, suggest::SectionTemplate> templates;
  for (const auto& entry : fs::directory_iterator(models)) {
    auto name = entry.path().filename().string();
    if (name.rfind("asp_", 0) == 0) {
      auto cls = name.substr(4, name.size() - 4 - 5);
      asp_models.emplace(cls, suggest::AspModel::from_json(corpus::read_file(entry.path().string())));
    }
    if (name.rfind("template_", 0) == 0) {
      auto cls = name.substr(9, name.size() - 9 - 5);
      templates.emplace(cls, suggest::SectionTemplate::from_json(corpus::read_file(entry.path().string())));
    }
  }

  std::string out;
  for (const auto& n : a.news.articles) {
    for (const auto& entity : suggest::article_entities(n)) {
      auto profile_it = s.profile_by_id.find(entity);
      if (profile_it == s.profile_by_id.end()) continue;
      const auto* profile = profile_it->second;
      if (profile->year > n.published_at.year - 1) continue;
      auto decision = suggest::predict_aep(aep, n, *profile, ctx);
      ordered_json j;
      j["article_url"] = n.url;
      j["entity"] = entity;
      j["relevant"] = decision.relevant;
      if (decision.relevant) {
        const auto* article = a.article_by_id.at(entity);
        std::string cls = entity_class_of(*article, a.taxonomy);
        auto tmpl = templates.find(cls);
        auto asp = asp_models.find(cls);
        if (tmpl != templates.end() && asp != asp_models.end()) {
          auto placed = suggest::place_article(asp->second, n, *profile, tmpl->second, ctx);
          j["section"] = placed.section_label;
          j["expansion"] = placed.expansion;
        } else {
          j["section"] = nullptr;
          j["expansion"] = false;
        }
      } else {
        j["section"] = nullptr;
        j["expansion"] = false;
      }
      j["scores"] = {{"phi", decision.phi},
                     {"rel_authority", decision.rel_authority},
                     {"novelty", decision.novelty_score},
                     {"domain_authority", decision.domain_authority}};
      out += j.dump();
      out += "\n";
    }
  }
  corpus::write_file((fs::path(config.out_dir) / "suggestions.jsonl").string(), out);
  write_meta(config, "suggest");
}

void run_analytics(const RunConfig& config, const std::string& alignment_csv_path) {
  ensure_out(config);
  Assets a = load_assets(config, false);
  std::string nrd = "entity,category,density\n";
  for (const auto& article : a.wiki.articles) {
    for (const auto& [category, density] : suggest::reference_density(article)) {
      nrd += csv_escape(article.id) + "," + category + "," + format_double(density) + "\n";
    }
  }
  corpus::write_file((fs::path(config.out_dir) / "nrd.csv").string(), nrd);

  if (!alignment_csv_path.empty()) {
    // rows: lag,entity,wiki_created,first_news_mention
    //       eed,event,event_created,entity_created
    std::vector<suggest::LagPair> lags;
    std::map<std::string, std::pair<corpus::Date, std::vector<corpus::Date>>> events;
    std::istringstream in(corpus::read_file(alignment_csv_path));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        if (line.rfind("kind,", 0) == 0) continue;
      }
      auto parts = split(trim(line), ',');
      if (parts.size() != 4 || parts[0].empty()) continue;
      auto d1 = corpus::Date::parse(parts[2]);
      auto d2 = corpus::Date::parse(parts[3]);
      if (!d1 || !d2) throw Error("analytics: bad date in alignment row: " + line);
      if (parts[0] == "lag") {
        lags.push_back({parts[1], *d1, *d2});
      } else if (parts[0] == "eed") {
        auto& slot = events[parts[1]];
        slot.first = *d1;
        slot.second.push_back(*d2);
      } else {
        throw Error("analytics: unknown alignment kind: " + parts[0]);
      }
    }
    std::string lag_csv = "entity,lag_days\n";
    for (const auto& [entity, days] : suggest::entity_lag_days(lags)) {
      lag_csv += csv_escape(entity) + "," + std::to_string(days) + "\n";
    }
    corpus::write_file((fs::path(config.out_dir) / "lag.csv").string(), lag_csv);

    std::string eed_csv = "event,emerging_entity_density\n";
    for (const auto& [event, data] : events) {
      eed_csv += csv_escape(event) + "," +
                 format_double(suggest::emerging_entity_density(data.first, data.second)) + "\n";
    }
    corpus::write_file((fs::path(config.out_dir) / "eed.csv").string(), eed_csv);
  }
  write_meta(config, "analytics");
}

void run_evaluate(const RunConfig& config, const std::string& predictions_csv,
                  const std::string& gold_csv) {
  ensure_out(config);
  auto read_map = [](const std::string& path) {
    std::map<std::string, std::string> out;
    std::istringstream in(corpus::read_file(path));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      auto parts = split(trim(line), ',');
      if (parts.size() < 2) continue;
      if (first && (parts[1] == "label" || parts[1] == "predicted")) {
        first = false;
        continue;
      }
      first = false;
      out[parts[0]] = parts[1];
    }
    return out;
  };
  auto pred = read_map(predictions_csv);
  auto gold = read_map(gold_csv);
  std::vector<std::string> p, g;
  for (const auto& [id, label] : gold) {
    auto it = pred.find(id);
    if (it == pred.end()) continue;
    g.push_back(label);
    p.push_back(it->second);
  }
  auto report = eval::classification_metrics(p, g);
  report.metadata["config_hash"] = config.hash();
  report.metadata["predictions"] = predictions_csv;
  report.metadata["gold"] = gold_csv;
  corpus::write_file((fs::path(config.out_dir) / "evaluation.csv").string(), report.to_csv());
  corpus::write_file((fs::path(config.out_dir) / "evaluation.json").string(), report.to_json() + "\n");
  corpus::write_file((fs::path(config.out_dir) / "confusion.csv").string(), report.confusion_to_csv());
  write_meta(config, "evaluate");
}

}  // namespace newscite::pipeline
