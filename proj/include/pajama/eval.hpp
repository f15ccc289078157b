// Evaluation harness: preference-label accuracy, bias robustness
// (consistency and biased-response win rate), and the judge-count scaling
// study with its majority-vote baseline.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pajama/core.hpp"
#include "pajama/label_model.hpp"

namespace pajama::eval {

enum class BiasType { Position, Gender, RichContent, Reference };

const char* bias_type_name(BiasType t);
BiasType bias_type_from_name(const std::string& name);

// One bias-probe item: a clean target response, its bias-injected variant,
// and a fixed opponent. For position items the perturbation is an order
// swap, so the "biased" variant equals the clean one.
struct BiasEvalItem {
    std::string id;
    BiasType bias_type = BiasType::Position;
    std::string query;
    std::string response_other;
    std::string response_target;
    std::string response_target_biased;
};

// Which response identity won a comparison, independent of slot order.
enum class Winner { Target, Other };

// Fraction of exact matches. Lists must be nonempty and equal length.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& gold);

// Fraction of items whose winning identity is unchanged by the perturbation.
double consistency(const std::vector<Winner>& clean_winners,
                   const std::vector<Winner>& biased_winners);

// Fraction of perturbed pairs won by the bias-injected response. Undefined
// for position items (the perturbation is a swap, not an injected variant).
double biased_win_rate(BiasType bias_type, const std::vector<Winner>& biased_pair_winners);

struct BiasTypeReport {
    std::size_t n = 0;
    double consistency = 0.0;
    std::optional<double> win_rate; // absent for position
    std::size_t failures = 0;       // pipeline errors while judging this type
};

struct BiasReport {
    std::map<BiasType, BiasTypeReport> per_type;
    std::vector<std::string> warnings; // e.g. empty buckets
};

// Decides a pair; +1 means the first response wins. Must be deterministic
// for the duration of the run.
using PairJudge = std::function<PreferenceLabel(
    const std::string& query, const std::string& response_a, const std::string& response_b)>;

// Evaluates each item's clean pair (target, other) and perturbed pair (order
// swap for position, biased substitution otherwise), maps outcomes to
// response identities, and aggregates per bias type. Pipeline exceptions are
// counted as failures and the item is skipped.
BiasReport run_bias_eval(const std::vector<BiasEvalItem>& items, const PairJudge& pipeline);

struct ScalingRow {
    std::size_t k = 0;
    std::vector<double> trial_accuracies;    // label model, one per trial
    double mean_accuracy = 0.0;
    double baseline_mean_accuracy = 0.0;     // majority vote on the same subsets
    bool majority_vote_only = false;         // k < 3: triplet undefined
};

struct ScalingCurve {
    std::vector<ScalingRow> rows;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
};

struct ScalingConfig {
    std::vector<std::size_t> k_values;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    labelmodel::FitConfig fit;
};

// For each (k, trial): sample k judge columns without replacement with a
// sub-seed derived from (seed, k, trial), fit the label model on the subset,
// and score both it and majority vote against gold. Reproducible bit-for-bit
// given (seed, votes, gold).
ScalingCurve scaling_curve(const VoteMatrix& votes, const std::vector<int>& gold,
                           const ScalingConfig& config);

} // namespace pajama::eval
