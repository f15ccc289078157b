// Domain types for pairwise response judging: items, judge descriptors,
// score records, the vote matrix, and the score-to-vote discretization rule.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pajama/error.hpp"

namespace pajama {

// One query with two candidate responses and an optional gold preference
// (+1 = response_a preferred, -1 = response_b preferred).
struct EvaluationItem {
    std::string id;
    std::string query;
    std::string response_a;
    std::string response_b;
    std::optional<int> gold;
    std::map<std::string, std::string> tags;
};

enum class Criterion {
    Structure,
    Relevance,
    Readability,
    Bias,
    Factuality,
    Safety,
};

const char* criterion_name(Criterion c);
Criterion criterion_from_name(const std::string& name);

enum class JudgeSource { BuiltIn, Synthesized };

enum class ServiceKind { None, Embedding, Classifier };

// Identity, category, and polarity of one scoring function. polarity +1 means
// higher score is better, -1 means lower is better.
struct JudgeDescriptor {
    std::string id;
    std::string name;
    Criterion criterion = Criterion::Structure;
    int polarity = +1;
    JudgeSource source = JudgeSource::BuiltIn;
    ServiceKind requires_service = ServiceKind::None;
};

// Raw scores of one judge on one item's two responses. Finite scores are
// enforced at construction; a failed record carries the reason instead.
struct ScoreRecord {
    std::string judge_id;
    std::string item_id;
    double score_a = 0.0;
    double score_b = 0.0;
    bool ok = false;
    std::string failure_reason;

    static ScoreRecord make_ok(std::string judge_id, std::string item_id,
                               double score_a, double score_b);
    static ScoreRecord make_failed(std::string judge_id, std::string item_id,
                                   std::string reason);
};

// Dense n x m matrix of discretized votes, every entry exactly +1 or -1.
class VoteMatrix {
public:
    VoteMatrix() = default;
    VoteMatrix(std::vector<std::string> item_ids, std::vector<std::string> judge_ids,
               std::vector<std::int8_t> votes);

    std::size_t item_count() const { return item_ids_.size(); }
    std::size_t judge_count() const { return judge_ids_.size(); }

    const std::vector<std::string>& item_ids() const { return item_ids_; }
    const std::vector<std::string>& judge_ids() const { return judge_ids_; }

    int vote(std::size_t item, std::size_t judge) const {
        return votes_[item * judge_ids_.size() + judge];
    }

    // Vote row for one item, length judge_count().
    std::vector<int> row(std::size_t item) const;

    // Vote column for one judge, length item_count().
    std::vector<int> column(std::size_t judge) const;

    // Keeps the given judge columns (by index, in the given order).
    VoteMatrix select_judges(const std::vector<std::size_t>& judge_indices) const;

private:
    std::vector<std::string> item_ids_;
    std::vector<std::string> judge_ids_;
    std::vector<std::int8_t> votes_;
};

// +1 iff y1 preferred, -1 iff y2 preferred.
struct PreferenceLabel {
    int value = +1;
};

// Vote +1 iff polarity*(score_a - score_b) > 0, else -1; ties vote -1.
// Throws InvalidScore on non-finite input.
int discretize(double score_a, double score_b, int polarity);

// Produces both raw scores (for one item) given a judge descriptor.
using Scorer = std::function<ScoreRecord(const JudgeDescriptor&, const EvaluationItem&)>;

struct VoteBuildResult {
    std::vector<ScoreRecord> records; // item-major: records[i*m + j]
    VoteMatrix votes;
};

// Scores every (judge, item) cell and discretizes. Scorer exceptions become
// failed records; failed cells vote -1 so the matrix stays dense. Cells may
// be evaluated by up to `parallelism` threads; output order is by input
// order either way.
VoteBuildResult build_vote_matrix(const std::vector<EvaluationItem>& items,
                                  const std::vector<JudgeDescriptor>& judges,
                                  const Scorer& scorer,
                                  unsigned parallelism = 1);

// Exchanges the two responses, negates gold when present, and suffixes the id
// with "::swap" so swapped rows stay distinguishable in joined artifacts.
EvaluationItem swap_pair(const EvaluationItem& item);

} // namespace pajama
