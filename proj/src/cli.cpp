#include "pajama/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pajama/clients.hpp"
#include "pajama/config.hpp"
#include "pajama/core.hpp"
#include "pajama/eval.hpp"
#include "pajama/io.hpp"
#include "pajama/judges.hpp"
#include "pajama/label_model.hpp"
#include "pajama/synthesis.hpp"

namespace pajama::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
    std::string config_path;
    std::string judges_csv; // overrides config's judge selection
    std::optional<std::uint64_t> seed;
};

config::RunConfig effective_config(const CommonOpts& opts) {
    config::RunConfig cfg;
    if (!opts.config_path.empty()) cfg = config::load_config(opts.config_path);
    config::apply_env_overrides(cfg);
    if (!opts.judges_csv.empty()) {
        cfg.judge_selection.clear();
        if (opts.judges_csv != "all") {
            std::string cur;
            for (char c : opts.judges_csv + ",") {
                if (c == ',') {
                    if (!cur.empty()) cfg.judge_selection.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
        }
    }
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

clients::ServiceEndpoint endpoint_for(const config::RunConfig& cfg, const std::string& url) {
    clients::ServiceEndpoint ep;
    ep.base_url = url;
    ep.timeout = std::chrono::milliseconds(cfg.timeout_ms);
    ep.max_in_flight = cfg.max_in_flight;
    return ep;
}

judges::JudgeRegistry build_registry(const config::RunConfig& cfg) {
    judges::RegistryConfig rc;
    if (!cfg.embed_url.empty()) {
        rc.embedder =
            std::make_shared<clients::HttpEmbeddingClient>(endpoint_for(cfg, cfg.embed_url));
    }
    if (!cfg.classify_url.empty()) {
        rc.classifier =
            std::make_shared<clients::HttpClassifierClient>(endpoint_for(cfg, cfg.classify_url));
    }
    rc.hate_model_id = cfg.hate_model_id;
    rc.factuality_model_id = cfg.factuality_model_id;
    return judges::JudgeRegistry(std::move(rc));
}

std::vector<JudgeDescriptor> select_judges(const judges::JudgeRegistry& registry,
                                           const config::RunConfig& cfg) {
    if (cfg.judge_selection.empty()) return registry.descriptors();
    return registry.descriptors_for(cfg.judge_selection);
}

const char* service_kind_name(ServiceKind kind) {
    switch (kind) {
        case ServiceKind::None:       return "-";
        case ServiceKind::Embedding:  return "embedding";
        case ServiceKind::Classifier: return "classifier";
    }
    return "-";
}

// ---- judges -----------------------------------------------------------------

int cmd_judges_list(const judges::JudgeRegistry& registry) {
    std::printf("%-34s %-12s %8s %-9s %s\n", "id", "criterion", "polarity", "source",
                "service");
    for (const auto& d : registry.descriptors()) {
        std::printf("%-34s %-12s %+8d %-9s %s\n", d.id.c_str(), criterion_name(d.criterion),
                    d.polarity, d.source == JudgeSource::BuiltIn ? "built-in" : "synthesized",
                    service_kind_name(d.requires_service));
    }
    std::printf("%zu judges\n", registry.all().size());
    return kExitOk;
}

int cmd_judges_show(const judges::JudgeRegistry& registry, const std::string& id) {
    const JudgeDescriptor* found = nullptr;
    try {
        found = &registry.get(id).descriptor;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotFound) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitUnknownJudge;
        }
        throw;
    }
    std::printf("id:        %s\n", found->id.c_str());
    std::printf("name:      %s\n", found->name.c_str());
    std::printf("criterion: %s\n", criterion_name(found->criterion));
    std::printf("polarity:  %+d\n", found->polarity);
    std::printf("source:    %s\n",
                found->source == JudgeSource::BuiltIn ? "built-in" : "synthesized");
    std::printf("service:   %s\n", service_kind_name(found->requires_service));
    return kExitOk;
}

// ---- score --------------------------------------------------------------------

int cmd_score(const std::string& items_path, const CommonOpts& opts,
              const std::string& out_dir) {
    const auto cfg = effective_config(opts);
    const auto items = io::read_items_jsonl(items_path);
    const auto registry = build_registry(cfg);

    std::vector<JudgeDescriptor> selected;
    try {
        selected = select_judges(registry, cfg);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotFound) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitUnknownJudge;
        }
        throw;
    }

    const auto result =
        build_vote_matrix(items, selected, registry.scorer(), std::max(1u, cfg.jobs));

    const std::size_t m = selected.size();
    std::map<std::string, std::size_t> failures_by_judge;
    for (const auto& d : selected) failures_by_judge[d.id] = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::size_t failed = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& rec = result.records[i * m + j];
            if (!rec.ok) {
                ++failed;
                ++failures_by_judge[rec.judge_id];
            }
        }
        if (failed == m) {
            std::fprintf(stderr, "item '%s' failed on every selected judge\n",
                         items[i].id.c_str());
            return kExitAllJudgesFailed;
        }
    }

    io::atomic_write_file((fs::path(out_dir) / "scores.jsonl").string(),
                          io::score_records_to_jsonl(result.records));
    io::atomic_write_file((fs::path(out_dir) / "votes.csv").string(),
                          io::votes_to_csv(result.votes, cfg.seed));

    ordered_json report;
    report["seed"] = cfg.seed;
    report["items"] = items.size();
    report["judges"] = m;
    report["failure_policy"] = "failed cells vote -1";
    ordered_json fj = ordered_json::object();
    std::size_t total_failures = 0;
    for (const auto& [id, count] : failures_by_judge) {
        ordered_json entry;
        entry["failures"] = count;
        entry["failure_rate"] = items.empty()
                                    ? 0.0
                                    : static_cast<double>(count) /
                                          static_cast<double>(items.size());
        fj[id] = entry;
        total_failures += count;
    }
    report["per_judge"] = fj;
    report["total_failures"] = total_failures;
    io::atomic_write_file((fs::path(out_dir) / "run_report.json").string(),
                          report.dump(2) + "\n");

    std::printf("scored %zu items x %zu judges (%zu failures) -> %s\n", items.size(), m,
                total_failures, out_dir.c_str());
    return kExitOk;
}

// ---- fit ------------------------------------------------------------------------

int cmd_fit(const std::string& votes_path, const CommonOpts& opts, const std::string& out_path,
            const std::string& fitter_flag, std::optional<double> prior_flag) {
    auto cfg = effective_config(opts);
    if (!fitter_flag.empty()) cfg.fitter = fitter_flag;
    if (prior_flag) cfg.prior = *prior_flag;

    const auto votes = io::read_votes_csv(votes_path);

    labelmodel::FitConfig fit_cfg;
    fit_cfg.clamp_epsilon = cfg.clamp_epsilon;
    fit_cfg.class_prior = cfg.prior;

    labelmodel::LabelModelParams params;
    try {
        params = labelmodel::fit_triplet(votes, fit_cfg);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TooFewJudges) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitTooFewJudges;
        }
        throw;
    }
    if (cfg.fitter == "triplet+em") {
        params = labelmodel::fit_em(votes, params);
        params.fitter = "em";
    }
    params.seed = cfg.seed;

    io::atomic_write_file(out_path, io::params_to_json(params));
    std::printf("fitted %zu judges over %zu items (%s) -> %s\n", votes.judge_count(),
                votes.item_count(), params.fitter.c_str(), out_path.c_str());
    return kExitOk;
}

// ---- infer ------------------------------------------------------------------------

int cmd_infer(const std::string& votes_path, const std::string& params_path,
              const std::string& out_path) {
    const auto votes = io::read_votes_csv(votes_path);
    const auto params = io::read_params_json(params_path);

    const std::set<std::string> vote_set(votes.judge_ids().begin(), votes.judge_ids().end());
    const std::set<std::string> param_set(params.judge_ids.begin(), params.judge_ids.end());
    if (vote_set != param_set) {
        std::fprintf(stderr, "judge sets differ between %s and %s\n", votes_path.c_str(),
                     params_path.c_str());
        return kExitJudgeSetMismatch;
    }

    // Reorder vote columns to the params order so thetas line up.
    std::vector<std::size_t> order;
    order.reserve(params.judge_ids.size());
    for (const auto& id : params.judge_ids) {
        const auto& ids = votes.judge_ids();
        order.push_back(static_cast<std::size_t>(
            std::find(ids.begin(), ids.end(), id) - ids.begin()));
    }
    const VoteMatrix aligned = votes.select_judges(order);

    std::vector<io::LabelRecord> labels;
    labels.reserve(aligned.item_count());
    for (std::size_t i = 0; i < aligned.item_count(); ++i) {
        io::LabelRecord rec;
        rec.item_id = aligned.item_ids()[i];
        rec.posterior = labelmodel::infer_posterior(aligned.row(i), params);
        rec.label = labelmodel::predict(aligned.row(i), params).value;
        labels.push_back(std::move(rec));
    }
    io::atomic_write_file(out_path, io::labels_to_jsonl(labels));
    std::printf("inferred %zu labels -> %s\n", labels.size(), out_path.c_str());
    return kExitOk;
}

// ---- eval ------------------------------------------------------------------------

int cmd_eval(const std::string& labels_path, const std::string& items_path,
             const std::string& out_path) {
    const auto labels = io::read_labels_jsonl(labels_path);
    const auto items = io::read_items_jsonl(items_path);
    require(!labels.empty(), ErrorCode::EmptyInput, "no labels to evaluate");

    std::map<std::string, std::optional<int>> gold_by_id;
    for (const auto& item : items) gold_by_id[item.id] = item.gold;

    std::vector<int> predictions, gold;
    for (const auto& rec : labels) {
        const auto it = gold_by_id.find(rec.item_id);
        require(it != gold_by_id.end(), ErrorCode::InvalidArgument,
                "label for unknown item '" + rec.item_id + "'");
        if (!it->second) {
            std::fprintf(stderr, "item '%s' has no gold label\n", rec.item_id.c_str());
            return kExitMissingGold;
        }
        predictions.push_back(rec.label);
        gold.push_back(*it->second);
    }

    const double acc = eval::accuracy(predictions, gold);
    ordered_json report;
    report["n"] = predictions.size();
    report["accuracy"] = acc;
    const std::string text = report.dump(2) + "\n";
    if (!out_path.empty()) io::atomic_write_file(out_path, text);
    std::printf("%s", text.c_str());
    return kExitOk;
}

// ---- bias-eval ----------------------------------------------------------------------

int cmd_bias_eval(const std::string& items_path, const CommonOpts& opts,
                  const std::string& out_dir, const std::string& params_path) {
    const auto cfg = effective_config(opts);
    const auto bias_items = io::read_bias_items_jsonl(items_path);
    const auto registry = build_registry(cfg);

    std::vector<JudgeDescriptor> selected;
    try {
        selected = select_judges(registry, cfg);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotFound) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitUnknownJudge;
        }
        throw;
    }

    const auto scorer = registry.scorer();

    // Votes for one (query, a, b) pair in the selected-judge order; failed
    // judges vote -1, and a pair where every judge fails throws.
    auto vote_row_for = [&](const std::string& query, const std::string& a,
                            const std::string& b) {
        EvaluationItem pair;
        pair.id = "pair";
        pair.query = query;
        pair.response_a = a;
        pair.response_b = b;
        std::vector<int> row(selected.size(), -1);
        std::size_t failed = 0;
        for (std::size_t j = 0; j < selected.size(); ++j) {
            try {
                const auto rec = scorer(selected[j], pair);
                row[j] = discretize(rec.score_a, rec.score_b, selected[j].polarity);
            } catch (const std::exception&) {
                ++failed;
            }
        }
        require(failed < selected.size(), ErrorCode::EmptyInput,
                "every judge failed on a pair");
        return row;
    };

    labelmodel::LabelModelParams params;
    if (!params_path.empty()) {
        params = io::read_params_json(params_path);
        std::vector<std::string> ids;
        for (const auto& d : selected) ids.push_back(d.id);
        if (ids != params.judge_ids) {
            std::fprintf(stderr, "params judge set does not match the selected judges\n");
            return kExitJudgeSetMismatch;
        }
    } else {
        // Fit on the clean pairs of this dataset.
        std::vector<EvaluationItem> clean;
        clean.reserve(bias_items.size());
        for (const auto& item : bias_items) {
            EvaluationItem e;
            e.id = item.id;
            e.query = item.query;
            e.response_a = item.response_target;
            e.response_b = item.response_other;
            clean.push_back(std::move(e));
        }
        const auto built =
            build_vote_matrix(clean, selected, scorer, std::max(1u, cfg.jobs));
        labelmodel::FitConfig fit_cfg;
        fit_cfg.clamp_epsilon = cfg.clamp_epsilon;
        fit_cfg.class_prior = cfg.prior;
        try {
            params = labelmodel::fit_triplet(built.votes, fit_cfg);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::TooFewJudges) {
                std::fprintf(stderr, "%s\n", e.what());
                return kExitTooFewJudges;
            }
            throw;
        }
        if (cfg.fitter == "triplet+em") {
            params = labelmodel::fit_em(built.votes, params);
            params.fitter = "em";
        }
        params.seed = cfg.seed;
    }

    const eval::PairJudge pipeline = [&](const std::string& query, const std::string& a,
                                         const std::string& b) {
        return labelmodel::predict(vote_row_for(query, a, b), params);
    };

    const auto report = eval::run_bias_eval(bias_items, pipeline);
    io::atomic_write_file((fs::path(out_dir) / "bias_report.json").string(),
                          io::bias_report_to_json(report));
    io::atomic_write_file((fs::path(out_dir) / "bias_report.csv").string(),
                          io::bias_report_to_csv(report));

    for (const auto& [type, tr] : report.per_type) {
        if (tr.win_rate) {
            std::printf("%-12s n=%zu consistency=%.4f win_rate=%.4f failures=%zu\n",
                        eval::bias_type_name(type), tr.n, tr.consistency, *tr.win_rate,
                        tr.failures);
        } else {
            std::printf("%-12s n=%zu consistency=%.4f failures=%zu\n",
                        eval::bias_type_name(type), tr.n, tr.consistency, tr.failures);
        }
    }
    for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return kExitOk;
}

// ---- scale ------------------------------------------------------------------------

int cmd_scale(const std::string& votes_path, const std::string& items_path,
              const std::vector<std::size_t>& k_values, std::size_t trials,
              const CommonOpts& opts, const std::string& out_path) {
    const auto cfg = effective_config(opts);
    const auto votes = io::read_votes_csv(votes_path);
    const auto items = io::read_items_jsonl(items_path);

    std::map<std::string, std::optional<int>> gold_by_id;
    for (const auto& item : items) gold_by_id[item.id] = item.gold;

    std::vector<int> gold;
    gold.reserve(votes.item_count());
    for (const auto& id : votes.item_ids()) {
        const auto it = gold_by_id.find(id);
        require(it != gold_by_id.end(), ErrorCode::InvalidArgument,
                "votes reference unknown item '" + id + "'");
        if (!it->second) {
            std::fprintf(stderr, "item '%s' has no gold label\n", id.c_str());
            return kExitMissingGold;
        }
        gold.push_back(*it->second);
    }

    eval::ScalingConfig scfg;
    scfg.k_values = k_values;
    scfg.trials = trials;
    scfg.seed = cfg.seed;
    scfg.fit.clamp_epsilon = cfg.clamp_epsilon;
    scfg.fit.class_prior = cfg.prior;

    const auto curve = eval::scaling_curve(votes, gold, scfg);
    io::atomic_write_file(out_path, io::scaling_curve_to_csv(curve));

    for (const auto& row : curve.rows) {
        std::printf("k=%-4zu model=%.4f mv=%.4f%s\n", row.k, row.mean_accuracy,
                    row.baseline_mean_accuracy, row.majority_vote_only ? " (majority only)" : "");
    }
    std::printf("curve -> %s\n", out_path.c_str());
    return kExitOk;
}

// ---- synthesize ----------------------------------------------------------------------

int cmd_synthesize(const std::string& criterion_name_arg, std::size_t count,
                   const CommonOpts& opts, const std::string& catalog_path) {
    const auto cfg = effective_config(opts);
    const Criterion criterion = criterion_from_name(criterion_name_arg);
    require(!cfg.llm_url.empty(), ErrorCode::InvalidArgument,
            "llm_url is not configured (set it in the config file)");

    const char* key = std::getenv(cfg.llm_api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
        std::fprintf(stderr, "environment variable %s is not set\n",
                     cfg.llm_api_key_env.c_str());
        return kExitAuthMissing;
    }

    clients::ChatConfig chat_cfg;
    chat_cfg.endpoint = endpoint_for(cfg, cfg.llm_url);
    chat_cfg.endpoint.auth_token_env = cfg.llm_api_key_env;
    chat_cfg.model = cfg.llm_model;
    clients::HttpChatClient chat(chat_cfg);

    std::vector<synthesis::SynthesizedProgram> programs;
    std::size_t prompt_chars = 0, reply_chars = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto program = synthesis::synthesize_judge(criterion, chat, i);
        prompt_chars += program.prompt.size();
        reply_chars += program.status == synthesis::ExtractionStatus::Extracted
                           ? program.source_text.size()
                           : program.raw_reply.size();
        if (program.status == synthesis::ExtractionStatus::ExtractionFailed) {
            std::fprintf(stderr, "warning: no judging_function code block in reply %zu\n", i);
        }
        programs.push_back(std::move(program));
    }
    synthesis::catalog_save(programs, catalog_path);

    std::size_t extracted = 0;
    for (const auto& p : programs) {
        if (p.status == synthesis::ExtractionStatus::Extracted) ++extracted;
    }
    // Rough 4-chars-per-token estimate for the cost summary.
    const long avg_prompt_tokens = count ? static_cast<long>(prompt_chars / count / 4) : 0;
    const long avg_completion_tokens = count ? static_cast<long>(reply_chars / count / 4) : 0;
    const double cost = synthesis::estimate_synthesis_cost(
        static_cast<long>(count), avg_prompt_tokens, avg_completion_tokens,
        cfg.price_per_1k_prompt, cfg.price_per_1k_completion);
    std::printf("synthesized %zu programs (%zu extracted, %zu failed) -> %s\n", count,
                extracted, count - extracted, catalog_path.c_str());
    std::printf("estimated cost: $%.4f (%ld prompt + %ld completion tokens/program)\n", cost,
                avg_prompt_tokens, avg_completion_tokens);
    return kExitOk;
}

std::vector<std::size_t> parse_k_list(const std::string& csv) {
    std::vector<std::size_t> ks;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) {
                ks.push_back(static_cast<std::size_t>(std::stoul(cur)));
                cur.clear();
            }
        } else {
            require(c >= '0' && c <= '9', ErrorCode::InvalidArgument,
                    "--k expects a comma-separated list of integers");
            cur.push_back(c);
        }
    }
    require(!ks.empty(), ErrorCode::InvalidArgument, "--k list is empty");
    return ks;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"pajama: programmatic pairwise judges with weak-supervision aggregation"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_common = [&](CLI::App* cmd, bool with_judges = true) {
        cmd->add_option("--config", opts.config_path, "key=value config file");
        if (with_judges) {
            cmd->add_option("--judges", opts.judges_csv, "comma-separated judge ids or 'all'");
        }
        cmd->add_option_function<std::string>(
            "--seed", [&](const std::string& s) { opts.seed = std::stoull(s); },
            "deterministic seed");
    };

    // judges
    auto* judges_cmd = app.add_subcommand("judges", "list or inspect the judge catalog");
    judges_cmd->require_subcommand(1);
    auto* judges_list = judges_cmd->add_subcommand("list", "list all judges");
    std::string show_id;
    auto* judges_show = judges_cmd->add_subcommand("show", "show one judge");
    judges_show->add_option("id", show_id, "judge id")->required();

    // score
    std::string items_path, out_dir = ".", out_path;
    auto* score_cmd = app.add_subcommand("score", "score items and write votes");
    score_cmd->add_option("--items", items_path, "items JSONL")->required();
    score_cmd->add_option("--out", out_dir, "output directory");
    add_common(score_cmd);

    // fit
    std::string votes_path, params_path, fitter_flag;
    std::optional<double> prior_flag;
    auto* fit_cmd = app.add_subcommand("fit", "fit the label model from votes");
    fit_cmd->add_option("--votes", votes_path, "votes CSV")->required();
    fit_cmd->add_option("--out", out_path, "params JSON output")->required();
    fit_cmd->add_option("--fitter", fitter_flag, "triplet | triplet+em");
    fit_cmd->add_option_function<std::string>(
        "--prior", [&](const std::string& s) { prior_flag = std::stod(s); },
        "class prior P(Y=+1)");
    add_common(fit_cmd, false);

    // infer
    auto* infer_cmd = app.add_subcommand("infer", "infer consensus labels");
    infer_cmd->add_option("--votes", votes_path, "votes CSV")->required();
    infer_cmd->add_option("--params", params_path, "params JSON")->required();
    infer_cmd->add_option("--out", out_path, "labels JSONL output")->required();

    // eval
    std::string labels_path;
    auto* eval_cmd = app.add_subcommand("eval", "accuracy against gold labels");
    eval_cmd->add_option("--labels", labels_path, "labels JSONL")->required();
    eval_cmd->add_option("--items", items_path, "items JSONL with gold")->required();
    eval_cmd->add_option("--out", out_path, "report JSON output");

    // bias-eval
    auto* bias_cmd = app.add_subcommand("bias-eval", "consistency and biased win rate");
    bias_cmd->add_option("--items", items_path, "bias items JSONL")->required();
    bias_cmd->add_option("--out", out_dir, "output directory");
    bias_cmd->add_option("--params", params_path, "reuse fitted params JSON");
    add_common(bias_cmd);

    // scale
    std::string k_csv;
    std::size_t trials = 5;
    auto* scale_cmd = app.add_subcommand("scale", "judge-count scaling study");
    scale_cmd->add_option("--votes", votes_path, "votes CSV")->required();
    scale_cmd->add_option("--items", items_path, "items JSONL with gold")->required();
    scale_cmd->add_option("--k", k_csv, "comma-separated subset sizes")->required();
    scale_cmd->add_option("--trials", trials, "trials per k");
    scale_cmd->add_option("--out", out_path, "curve CSV output")->required();
    add_common(scale_cmd, false);

    // synthesize
    std::string criterion_arg, catalog_path;
    std::size_t count = 1;
    auto* synth_cmd = app.add_subcommand("synthesize", "synthesize judge programs via an LLM");
    synth_cmd->add_option("--criterion", criterion_arg,
                          "structure|relevance|readability|bias|factuality|safety")
        ->required();
    synth_cmd->add_option("--count", count, "programs to synthesize");
    synth_cmd->add_option("--catalog", catalog_path, "catalog JSONL (appended)")->required();
    add_common(synth_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (judges_list->parsed() || judges_show->parsed()) {
            const judges::JudgeRegistry registry;
            if (judges_list->parsed()) return cmd_judges_list(registry);
            return cmd_judges_show(registry, show_id);
        }
        if (score_cmd->parsed()) return cmd_score(items_path, opts, out_dir);
        if (fit_cmd->parsed()) {
            return cmd_fit(votes_path, opts, out_path, fitter_flag, prior_flag);
        }
        if (infer_cmd->parsed()) return cmd_infer(votes_path, params_path, out_path);
        if (eval_cmd->parsed()) return cmd_eval(labels_path, items_path, out_path);
        if (bias_cmd->parsed()) return cmd_bias_eval(items_path, opts, out_dir, params_path);
        if (scale_cmd->parsed()) {
            return cmd_scale(votes_path, items_path, parse_k_list(k_csv), trials, opts,
                             out_path);
        }
        if (synth_cmd->parsed()) {
            return cmd_synthesize(criterion_arg, count, opts, catalog_path);
        }
        std::fprintf(stderr, "no subcommand\n");
        return kExitError;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        switch (e.code()) {
            case ErrorCode::ParseError:   return kExitParse;
            case ErrorCode::TooFewJudges: return kExitTooFewJudges;
            case ErrorCode::AuthMissing:  return kExitAuthMissing;
            default:                      return kExitError;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitError;
    }
}

} // namespace pajama::cli
