// runner.hpp
// One function per CLI subcommand, shared by the CLI binary and the
// acceptance suite. Every stage writes its outputs plus a metadata JSON
// carrying the full config and its hash; nothing else (no timestamps), so
// reruns with the same config and corpus are byte-identical.

#pragma once

#include <string>

#include "newscite/pipeline/config.hpp"

namespace newscite::pipeline {

void run_ingest(const RunConfig& config);
void run_curate(const RunConfig& config);
void run_index(const RunConfig& config);
void run_train_sc(const RunConfig& config, const std::string& type);
void run_categorize(const RunConfig& config);
void run_train_fc(const RunConfig& config);
void run_discover(const RunConfig& config);
void run_full_pipeline(const RunConfig& config);
void run_span_train(const RunConfig& config);
void run_span_predict(const RunConfig& config);
void run_span_eval(const RunConfig& config);
void run_templates(const RunConfig& config);
void run_train_aep(const RunConfig& config);
void run_train_asp(const RunConfig& config);
void run_suggest(const RunConfig& config);
void run_analytics(const RunConfig& config, const std::string& alignment_csv_path);
void run_evaluate(const RunConfig& config, const std::string& predictions_csv,
                  const std::string& gold_csv);

}  // namespace newscite::pipeline
