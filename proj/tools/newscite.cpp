// newscite.cpp
// Command-line entry point: one subcommand per pipeline stage so stages can
// be cached and re-run independently.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "newscite/common.hpp"
#include "newscite/pipeline/runner.hpp"

namespace {

using newscite::pipeline::RunConfig;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = 0;
  std::string retrieval_model;
  int depth = 0;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "run configuration JSON");
  cmd->add_option("--out", args->out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", args->seed, "random seed (overrides config)");
  cmd->add_option("--threads", args->threads, "parallelism cap (overrides config)");
  cmd->add_option("--retrieval-model", args->retrieval_model, "bm25 or dfr (overrides config)");
  cmd->add_option("--depth", args->depth, "retrieval depth (overrides config)");
}

RunConfig resolve(const CommonArgs& args) {
  RunConfig config = args.config_path.empty() ? RunConfig{} : RunConfig::load(args.config_path);
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  if (args.threads > 0) config.threads = args.threads;
  if (!args.retrieval_model.empty()) config.retrieval_model = args.retrieval_model;
  if (args.depth > 0) config.retrieval_depth = args.depth;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus-to-suggestion pipeline: citation categorization, news citation discovery, "
               "citation span and news suggestion"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string sc_type;
  double sc_tau = 0;
  std::string alignment_path, predictions_path, gold_path;

  auto* ingest = app.add_subcommand("ingest", "load and normalize the wiki and news corpora");
  add_common(ingest, &args);
  auto* curate = app.add_subcommand("curate", "apply citation-category curation rules");
  add_common(curate, &args);
  auto* index_cmd = app.add_subcommand("index", "build the inverted index over the news corpus");
  add_common(index_cmd, &args);
  auto* train_sc = app.add_subcommand("train-sc", "train a statement-categorization model for one type");
  add_common(train_sc, &args);
  train_sc->add_option("--type", sc_type, "taxonomy type id")->required();
  train_sc->add_option("--tau", sc_tau, "training sample fraction of entities (<= 0.9)");
  auto* categorize = app.add_subcommand("categorize", "categorize statements with trained SC models");
  add_common(categorize, &args);
  auto* train_fc = app.add_subcommand("train-fc", "train the citation-discovery classifier");
  add_common(train_fc, &args);
  auto* discover = app.add_subcommand("discover", "discover citations for news statements");
  add_common(discover, &args);
  auto* pipeline = app.add_subcommand("pipeline", "run the full SC -> FC pipeline end to end");
  add_common(pipeline, &args);
  auto* span_train = app.add_subcommand("span-train", "train the citation-span models");
  add_common(span_train, &args);
  auto* span_predict = app.add_subcommand("span-predict", "predict citation spans");
  add_common(span_predict, &args);
  auto* span_eval = app.add_subcommand("span-eval", "cross-validated span evaluation, all methods");
  add_common(span_eval, &args);
  auto* templates = app.add_subcommand("templates", "build class-level section templates");
  add_common(templates, &args);
  auto* train_aep = app.add_subcommand("train-aep", "train article-entity placement");
  add_common(train_aep, &args);
  auto* train_asp = app.add_subcommand("train-asp", "train article-section placement");
  add_common(train_asp, &args);
  auto* suggest = app.add_subcommand("suggest", "suggest news articles to entity pages and sections");
  add_common(suggest, &args);
  auto* analytics = app.add_subcommand("analytics", "reference density, entity lag, emerging entities");
  add_common(analytics, &args);
  analytics->add_option("--alignment", alignment_path, "CSV with lag/eed date alignments");
  auto* evaluate = app.add_subcommand("evaluate", "score a predictions CSV against a gold CSV");
  add_common(evaluate, &args);
  evaluate->add_option("--predictions", predictions_path, "CSV: id,predicted")->required();
  evaluate->add_option("--gold", gold_path, "CSV: id,label")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // exit 0 with usage
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig config = resolve(args);
    if (*ingest) newscite::pipeline::run_ingest(config);
    else if (*curate) newscite::pipeline::run_curate(config);
    else if (*index_cmd) newscite::pipeline::run_index(config);
    else if (*train_sc) {
      if (sc_tau > 0) config.sc_tau = sc_tau;
      newscite::pipeline::run_train_sc(config, sc_type);
    } else if (*categorize) newscite::pipeline::run_categorize(config);
    else if (*train_fc) newscite::pipeline::run_train_fc(config);
    else if (*discover) newscite::pipeline::run_discover(config);
    else if (*pipeline) newscite::pipeline::run_full_pipeline(config);
    else if (*span_train) newscite::pipeline::run_span_train(config);
    else if (*span_predict) newscite::pipeline::run_span_predict(config);
    else if (*span_eval) newscite::pipeline::run_span_eval(config);
    else if (*templates) newscite::pipeline::run_templates(config);
    else if (*train_aep) newscite::pipeline::run_train_aep(config);
    else if (*train_asp) newscite::pipeline::run_train_asp(config);
    else if (*suggest) newscite::pipeline::run_suggest(config);
    else if (*analytics) newscite::pipeline::run_analytics(config, alignment_path);
    else if (*evaluate) newscite::pipeline::run_evaluate(config, predictions_path, gold_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
