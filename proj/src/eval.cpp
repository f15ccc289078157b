#include "pajama/eval.hpp"

#include <algorithm>

#include "pajama/rng.hpp"

namespace pajama::eval {

const char* bias_type_name(BiasType t) {
    switch (t) {
        case BiasType::Position:    return "position";
        case BiasType::Gender:      return "gender";
        case BiasType::RichContent: return "rich_content";
        case BiasType::Reference:   return "reference";
    }
    return "position";
}

BiasType bias_type_from_name(const std::string& name) {
    if (name == "position")     return BiasType::Position;
    if (name == "gender")       return BiasType::Gender;
    if (name == "rich_content") return BiasType::RichContent;
    if (name == "reference")    return BiasType::Reference;
    throw Error(ErrorCode::InvalidArgument, "unknown bias type '" + name + "'");
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& gold) {
    require(!predictions.empty(), ErrorCode::EmptyInput, "accuracy: empty inputs");
    require(predictions.size() == gold.size(), ErrorCode::ShapeError,
            "accuracy: prediction/gold length mismatch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == gold[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double consistency(const std::vector<Winner>& clean_winners,
                   const std::vector<Winner>& biased_winners) {
    require(clean_winners.size() == biased_winners.size(), ErrorCode::ShapeError,
            "consistency: winner list length mismatch");
    require(!clean_winners.empty(), ErrorCode::EmptyInput, "consistency: empty inputs");
    std::size_t stable = 0;
    for (std::size_t i = 0; i < clean_winners.size(); ++i) {
        if (clean_winners[i] == biased_winners[i]) ++stable;
    }
    return static_cast<double>(stable) / static_cast<double>(clean_winners.size());
}

double biased_win_rate(BiasType bias_type, const std::vector<Winner>& biased_pair_winners) {
    require(bias_type != BiasType::Position, ErrorCode::InvalidArgument,
            "biased_win_rate is undefined for position items");
    require(!biased_pair_winners.empty(), ErrorCode::EmptyInput, "biased_win_rate: empty input");
    std::size_t wins = 0;
    for (Winner w : biased_pair_winners) {
        if (w == Winner::Target) ++wins;
    }
    return static_cast<double>(wins) / static_cast<double>(biased_pair_winners.size());
}

BiasReport run_bias_eval(const std::vector<BiasEvalItem>& items, const PairJudge& pipeline) {
    require(!items.empty(), ErrorCode::EmptyInput, "run_bias_eval: no items");

    struct Bucket {
        std::vector<Winner> clean;
        std::vector<Winner> biased;
        std::size_t failures = 0;
        std::size_t seen = 0;
    };
    std::map<BiasType, Bucket> buckets;

    // Winner identity of a (first, second) slot assignment given the label.
    auto winner_of = [](PreferenceLabel label, Winner first, Winner second) {
        return label.value == +1 ? first : second;
    };

    for (const auto& item : items) {
        auto& bucket = buckets[item.bias_type];
        ++bucket.seen;
        try {
            const PreferenceLabel clean =
                pipeline(item.query, item.response_target, item.response_other);
            PreferenceLabel perturbed;
            Winner perturbed_winner;
            if (item.bias_type == BiasType::Position) {
                perturbed = pipeline(item.query, item.response_other, item.response_target);
                perturbed_winner = winner_of(perturbed, Winner::Other, Winner::Target);
            } else {
                perturbed = pipeline(item.query, item.response_target_biased, item.response_other);
                perturbed_winner = winner_of(perturbed, Winner::Target, Winner::Other);
            }
            bucket.clean.push_back(winner_of(clean, Winner::Target, Winner::Other));
            bucket.biased.push_back(perturbed_winner);
        } catch (const std::exception&) {
            ++bucket.failures;
        }
    }

    BiasReport report;
    for (auto& [type, bucket] : buckets) {
        if (bucket.clean.empty()) {
            report.warnings.push_back(std::string("no scorable items for bias type '") +
                                      bias_type_name(type) + "'");
            continue;
        }
        BiasTypeReport tr;
        tr.n = bucket.clean.size();
        tr.failures = bucket.failures;
        tr.consistency = consistency(bucket.clean, bucket.biased);
        if (type != BiasType::Position) {
            tr.win_rate = biased_win_rate(type, bucket.biased);
        }
        report.per_type[type] = tr;
    }
    return report;
}

ScalingCurve scaling_curve(const VoteMatrix& votes, const std::vector<int>& gold,
                           const ScalingConfig& config) {
    const std::size_t n = votes.item_count();
    const std::size_t m = votes.judge_count();
    require(n >= 1 && m >= 1, ErrorCode::EmptyInput, "scaling_curve: empty vote matrix");
    require(gold.size() == n, ErrorCode::ShapeError,
            "scaling_curve: gold labels do not match item count");
    require(config.trials >= 1, ErrorCode::InvalidArgument, "scaling_curve: trials must be >= 1");
    require(!config.k_values.empty(), ErrorCode::InvalidArgument, "scaling_curve: no k values");
    for (std::size_t k : config.k_values) {
        require(k >= 1 && k <= m, ErrorCode::InvalidArgument,
                "scaling_curve: k = " + std::to_string(k) + " outside [1, " +
                std::to_string(m) + "]");
    }

    ScalingCurve curve;
    curve.seed = config.seed;
    curve.trials = config.trials;

    for (std::size_t k : config.k_values) {
        ScalingRow row;
        row.k = k;
        row.majority_vote_only = k < 3;
        double model_sum = 0.0, mv_sum = 0.0;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            Rng rng(mix_seed(config.seed, k, trial));
            const auto subset_indices = rng.sample_without_replacement(m, k);
            const VoteMatrix subset = votes.select_judges(subset_indices);

            std::vector<int> mv_preds(n), model_preds(n);
            if (!row.majority_vote_only) {
                const auto params = labelmodel::fit_triplet(subset, config.fit);
                for (std::size_t i = 0; i < n; ++i) {
                    model_preds[i] = labelmodel::predict(subset.row(i), params).value;
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                mv_preds[i] = labelmodel::majority_vote(subset.row(i)).value;
            }
            if (row.majority_vote_only) model_preds = mv_preds;

            const double model_acc = accuracy(model_preds, gold);
            row.trial_accuracies.push_back(model_acc);
            model_sum += model_acc;
            mv_sum += accuracy(mv_preds, gold);
        }
        row.mean_accuracy = model_sum / static_cast<double>(config.trials);
        row.baseline_mean_accuracy = mv_sum / static_cast<double>(config.trials);
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

} // namespace pajama::eval
