#include "pajama/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "pajama/text.hpp"

namespace pajama::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::NotFound, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), ErrorCode::NotFound, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        require(out.good(), ErrorCode::NotFound, "failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

// Applies fn to every nonempty JSONL line, converting any failure into a
// ParseError that names the source and 1-based line number.
template <typename Fn>
void for_each_jsonl_line(const std::string& content, const std::string& source_name, Fn&& fn) {
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            fn(json::parse(line), lineno);
        } catch (const std::exception& e) {
            throw Error(ErrorCode::ParseError,
                        source_name + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

int parse_gold(const json& value) {
    require(value.is_number_integer(), ErrorCode::ParseError, "gold must be +1 or -1");
    const int gold = value.get<int>();
    require(gold == 1 || gold == -1, ErrorCode::ParseError, "gold must be +1 or -1");
    return gold;
}

} // namespace

std::vector<EvaluationItem> parse_items_jsonl(const std::string& content,
                                              const std::string& source_name) {
    std::vector<EvaluationItem> items;
    std::unordered_set<std::string> seen_ids;
    for_each_jsonl_line(content, source_name, [&](const json& j, std::size_t) {
        EvaluationItem item;
        item.id = j.at("id").get<std::string>();
        require(!item.id.empty(), ErrorCode::ParseError, "item id is empty");
        require(seen_ids.insert(item.id).second, ErrorCode::ParseError,
                "duplicate item id '" + item.id + "'");
        item.query = j.at("query").get<std::string>();
        item.response_a = j.at("response_a").get<std::string>();
        item.response_b = j.at("response_b").get<std::string>();
        if (j.contains("gold") && !j.at("gold").is_null()) item.gold = parse_gold(j.at("gold"));
        if (j.contains("tags")) {
            for (const auto& [k, v] : j.at("tags").items()) {
                item.tags[k] = v.get<std::string>();
            }
        }
        items.push_back(std::move(item));
    });
    return items;
}

std::vector<EvaluationItem> read_items_jsonl(const std::string& path) {
    return parse_items_jsonl(read_text_file(path), path);
}

std::vector<eval::BiasEvalItem> parse_bias_items_jsonl(const std::string& content,
                                                       const std::string& source_name) {
    std::vector<eval::BiasEvalItem> items;
    std::unordered_set<std::string> seen_ids;
    for_each_jsonl_line(content, source_name, [&](const json& j, std::size_t) {
        eval::BiasEvalItem item;
        item.id = j.at("id").get<std::string>();
        require(!item.id.empty(), ErrorCode::ParseError, "item id is empty");
        require(seen_ids.insert(item.id).second, ErrorCode::ParseError,
                "duplicate item id '" + item.id + "'");
        item.bias_type = eval::bias_type_from_name(j.at("bias_type").get<std::string>());
        item.query = j.at("query").get<std::string>();
        item.response_other = j.at("response_other").get<std::string>();
        item.response_target = j.at("response_target").get<std::string>();
        item.response_target_biased = j.at("response_target_biased").get<std::string>();
        if (item.bias_type != eval::BiasType::Position) {
            require(item.response_target_biased != item.response_target, ErrorCode::ParseError,
                    "biased variant must differ from the clean response for bias type '" +
                    std::string(eval::bias_type_name(item.bias_type)) + "'");
        }
        items.push_back(std::move(item));
    });
    return items;
}

std::vector<eval::BiasEvalItem> read_bias_items_jsonl(const std::string& path) {
    return parse_bias_items_jsonl(read_text_file(path), path);
}

std::string score_records_to_jsonl(const std::vector<ScoreRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        ordered_json j;
        j["judge_id"] = r.judge_id;
        j["item_id"] = r.item_id;
        if (r.ok) {
            j["score_a"] = r.score_a;
            j["score_b"] = r.score_b;
            j["status"] = "ok";
        } else {
            j["status"] = "failed";
            j["reason"] = r.failure_reason;
        }
        out << j.dump() << '\n';
    }
    return out.str();
}

std::string votes_to_csv(const VoteMatrix& votes, std::optional<std::uint64_t> seed) {
    std::ostringstream out;
    if (seed) out << "# seed=" << *seed << '\n';
    out << "item_id";
    for (const auto& id : votes.judge_ids()) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < votes.item_count(); ++i) {
        out << votes.item_ids()[i];
        for (std::size_t j = 0; j < votes.judge_count(); ++j) {
            out << ',' << (votes.vote(i, j) > 0 ? "+1" : "-1");
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

VoteMatrix parse_votes_csv(const std::string& content, const std::string& source_name) {
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;

    auto parse_fail = [&](const std::string& what) -> Error {
        return Error(ErrorCode::ParseError,
                     source_name + " line " + std::to_string(lineno) + ": " + what);
    };

    std::vector<std::string> judge_ids;
    bool have_header = false;
    std::vector<std::string> item_ids;
    std::vector<std::int8_t> entries;
    std::unordered_set<std::string> seen_ids;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string trimmed = text::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() < 2 || fields[0] != "item_id") {
                throw parse_fail("expected header 'item_id,<judge ids...>'");
            }
            judge_ids.assign(fields.begin() + 1, fields.end());
            have_header = true;
            continue;
        }
        if (fields.size() != judge_ids.size() + 1) {
            throw parse_fail("expected " + std::to_string(judge_ids.size() + 1) +
                             " fields, got " + std::to_string(fields.size()));
        }
        if (!seen_ids.insert(fields[0]).second) {
            throw parse_fail("duplicate item id '" + fields[0] + "'");
        }
        item_ids.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const std::string v = text::trim(fields[j]);
            if (v == "+1" || v == "1") {
                entries.push_back(1);
            } else if (v == "-1") {
                entries.push_back(-1);
            } else {
                throw parse_fail("vote entries must be +1 or -1, got '" + fields[j] + "'");
            }
        }
    }
    if (!have_header) {
        lineno = 1;
        throw parse_fail("missing header");
    }
    require(!item_ids.empty(), ErrorCode::ParseError, source_name + ": no vote rows");
    return VoteMatrix(std::move(item_ids), std::move(judge_ids), std::move(entries));
}

VoteMatrix read_votes_csv(const std::string& path) {
    return parse_votes_csv(read_text_file(path), path);
}

std::string params_to_json(const labelmodel::LabelModelParams& params) {
    ordered_json j;
    j["judge_ids"] = params.judge_ids;
    j["accuracies"] = params.accuracies;
    j["thetas"] = params.thetas;
    j["class_prior"] = params.class_prior;
    j["clamp_epsilon"] = params.clamp_epsilon;
    j["fitter"] = params.fitter;
    j["seed"] = params.seed;
    return j.dump(2) + "\n";
}

labelmodel::LabelModelParams parse_params_json(const std::string& content) {
    labelmodel::LabelModelParams params;
    try {
        const json j = json::parse(content);
        params.judge_ids = j.at("judge_ids").get<std::vector<std::string>>();
        params.accuracies = j.at("accuracies").get<std::vector<double>>();
        params.thetas = j.at("thetas").get<std::vector<double>>();
        params.class_prior = j.at("class_prior").get<double>();
        params.clamp_epsilon = j.at("clamp_epsilon").get<double>();
        params.fitter = j.at("fitter").get<std::string>();
        params.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("params json: ") + e.what());
    }
    require(params.judge_ids.size() == params.accuracies.size() &&
                params.judge_ids.size() == params.thetas.size(),
            ErrorCode::ParseError, "params json: judge_ids/accuracies/thetas lengths differ");
    require(params.class_prior > 0.0 && params.class_prior < 1.0, ErrorCode::ParseError,
            "params json: class_prior outside (0,1)");
    return params;
}

labelmodel::LabelModelParams read_params_json(const std::string& path) {
    return parse_params_json(read_text_file(path));
}

std::string labels_to_jsonl(const std::vector<LabelRecord>& labels) {
    std::ostringstream out;
    for (const auto& r : labels) {
        ordered_json j;
        j["item_id"] = r.item_id;
        j["posterior"] = r.posterior;
        j["label"] = r.label;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<LabelRecord> read_labels_jsonl(const std::string& path) {
    std::vector<LabelRecord> labels;
    for_each_jsonl_line(read_text_file(path), path, [&](const json& j, std::size_t) {
        LabelRecord r;
        r.item_id = j.at("item_id").get<std::string>();
        r.posterior = j.at("posterior").get<double>();
        r.label = j.at("label").get<int>();
        require(r.label == 1 || r.label == -1, ErrorCode::ParseError, "label must be +1 or -1");
        labels.push_back(std::move(r));
    });
    return labels;
}

std::string bias_report_to_json(const eval::BiasReport& report) {
    ordered_json j;
    ordered_json types = ordered_json::object();
    for (const auto& [type, tr] : report.per_type) {
        ordered_json t;
        t["n"] = tr.n;
        t["consistency"] = tr.consistency;
        if (tr.win_rate) {
            t["win_rate"] = *tr.win_rate;
        } else {
            t["win_rate"] = nullptr;
        }
        t["failures"] = tr.failures;
        types[eval::bias_type_name(type)] = t;
    }
    j["per_type"] = types;
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string bias_report_to_csv(const eval::BiasReport& report) {
    std::ostringstream out;
    out << "bias_type,n,consistency,win_rate,failures\n";
    char buf[64];
    for (const auto& [type, tr] : report.per_type) {
        out << eval::bias_type_name(type) << ',' << tr.n << ',';
        std::snprintf(buf, sizeof(buf), "%.6f", tr.consistency);
        out << buf << ',';
        if (tr.win_rate) {
            std::snprintf(buf, sizeof(buf), "%.6f", *tr.win_rate);
            out << buf;
        }
        out << ',' << tr.failures << '\n';
    }
    return out.str();
}

std::string scaling_curve_to_json(const eval::ScalingCurve& curve) {
    ordered_json j;
    j["seed"] = curve.seed;
    j["trials"] = curve.trials;
    ordered_json rows = ordered_json::array();
    for (const auto& row : curve.rows) {
        ordered_json r;
        r["k"] = row.k;
        r["trial_accuracies"] = row.trial_accuracies;
        r["mean_accuracy"] = row.mean_accuracy;
        r["baseline_mean_accuracy"] = row.baseline_mean_accuracy;
        r["model_source"] = row.majority_vote_only ? "majority_vote" : "triplet";
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string scaling_curve_to_csv(const eval::ScalingCurve& curve) {
    std::ostringstream out;
    out << "# seed=" << curve.seed << '\n';
    out << "k";
    for (std::size_t t = 1; t <= curve.trials; ++t) out << ",trial_" << t;
    out << ",model_mean,mv_mean,model_source\n";
    char buf[64];
    for (const auto& row : curve.rows) {
        out << row.k;
        for (double acc : row.trial_accuracies) {
            std::snprintf(buf, sizeof(buf), "%.6f", acc);
            out << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.6f", row.mean_accuracy);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.6f", row.baseline_mean_accuracy);
        out << ',' << buf;
        out << ',' << (row.majority_vote_only ? "majority_vote" : "triplet") << '\n';
    }
    return out.str();
}

} // namespace pajama::io
