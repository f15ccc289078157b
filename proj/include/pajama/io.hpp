// File formats around the pipeline:
//
//   items.jsonl   {"id","query","response_a","response_b","gold"?,"tags"?}
//   bias.jsonl    {"id","bias_type","query","response_other",
//                  "response_target","response_target_biased"}
//   scores.jsonl  {"judge_id","item_id","score_a","score_b","status","reason"?}
//   votes.csv     optional "# key=value" comment lines, then
//                 header "item_id,<judge ids...>" and rows of +1/-1
//   params.json   {"judge_ids","accuracies","thetas","class_prior",
//                  "clamp_epsilon","fitter","seed"}
//   labels.jsonl  {"item_id","posterior","label"}
//
// Parse errors carry 1-based line numbers. All writes are atomic
// (temp file + rename).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pajama/core.hpp"
#include "pajama/eval.hpp"
#include "pajama/label_model.hpp"

namespace pajama::io {

std::string read_text_file(const std::string& path);
void atomic_write_file(const std::string& path, const std::string& content);

std::vector<EvaluationItem> parse_items_jsonl(const std::string& content,
                                              const std::string& source_name);
std::vector<EvaluationItem> read_items_jsonl(const std::string& path);

std::vector<eval::BiasEvalItem> parse_bias_items_jsonl(const std::string& content,
                                                       const std::string& source_name);
std::vector<eval::BiasEvalItem> read_bias_items_jsonl(const std::string& path);

std::string score_records_to_jsonl(const std::vector<ScoreRecord>& records);

std::string votes_to_csv(const VoteMatrix& votes,
                         std::optional<std::uint64_t> seed = std::nullopt);
VoteMatrix parse_votes_csv(const std::string& content, const std::string& source_name);
VoteMatrix read_votes_csv(const std::string& path);

std::string params_to_json(const labelmodel::LabelModelParams& params);
labelmodel::LabelModelParams parse_params_json(const std::string& content);
labelmodel::LabelModelParams read_params_json(const std::string& path);

struct LabelRecord {
    std::string item_id;
    double posterior = 0.5;
    int label = +1;
};

std::string labels_to_jsonl(const std::vector<LabelRecord>& labels);
std::vector<LabelRecord> read_labels_jsonl(const std::string& path);

std::string bias_report_to_json(const eval::BiasReport& report);
// Columns: bias_type,n,consistency,win_rate,failures (win_rate empty for position).
std::string bias_report_to_csv(const eval::BiasReport& report);

std::string scaling_curve_to_json(const eval::ScalingCurve& curve);
// One row per k: k,trial_1..trial_T,model_mean,mv_mean,model_source.
std::string scaling_curve_to_csv(const eval::ScalingCurve& curve);

} // namespace pajama::io
