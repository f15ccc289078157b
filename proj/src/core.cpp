#include "pajama/core.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace pajama {

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Structure:   return "structure";
        case Criterion::Relevance:   return "relevance";
        case Criterion::Readability: return "readability";
        case Criterion::Bias:        return "bias";
        case Criterion::Factuality:  return "factuality";
        case Criterion::Safety:      return "safety";
    }
    return "structure";
}

Criterion criterion_from_name(const std::string& name) {
    if (name == "structure")   return Criterion::Structure;
    if (name == "relevance")   return Criterion::Relevance;
    if (name == "readability") return Criterion::Readability;
    if (name == "bias")        return Criterion::Bias;
    if (name == "factuality")  return Criterion::Factuality;
    if (name == "safety")      return Criterion::Safety;
    throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + name + "'");
}

ScoreRecord ScoreRecord::make_ok(std::string judge_id, std::string item_id,
                                 double score_a, double score_b) {
    require(std::isfinite(score_a) && std::isfinite(score_b), ErrorCode::InvalidScore,
            "scores must be finite (judge " + judge_id + ", item " + item_id + ")");
    ScoreRecord r;
    r.judge_id = std::move(judge_id);
    r.item_id = std::move(item_id);
    r.score_a = score_a;
    r.score_b = score_b;
    r.ok = true;
    return r;
}

ScoreRecord ScoreRecord::make_failed(std::string judge_id, std::string item_id,
                                     std::string reason) {
    ScoreRecord r;
    r.judge_id = std::move(judge_id);
    r.item_id = std::move(item_id);
    r.ok = false;
    r.failure_reason = std::move(reason);
    return r;
}

VoteMatrix::VoteMatrix(std::vector<std::string> item_ids, std::vector<std::string> judge_ids,
                       std::vector<std::int8_t> votes)
    : item_ids_(std::move(item_ids)), judge_ids_(std::move(judge_ids)), votes_(std::move(votes)) {
    require(votes_.size() == item_ids_.size() * judge_ids_.size(), ErrorCode::ShapeError,
            "vote count does not match item x judge dimensions");
    for (std::int8_t v : votes_) {
        require(v == 1 || v == -1, ErrorCode::InvalidArgument,
                "vote entries must be exactly +1 or -1");
    }
}

std::vector<int> VoteMatrix::row(std::size_t item) const {
    require(item < item_count(), ErrorCode::ShapeError, "item index out of range");
    std::vector<int> out(judge_count());
    for (std::size_t j = 0; j < judge_count(); ++j) out[j] = vote(item, j);
    return out;
}

std::vector<int> VoteMatrix::column(std::size_t judge) const {
    require(judge < judge_count(), ErrorCode::ShapeError, "judge index out of range");
    std::vector<int> out(item_count());
    for (std::size_t i = 0; i < item_count(); ++i) out[i] = vote(i, judge);
    return out;
}

VoteMatrix VoteMatrix::select_judges(const std::vector<std::size_t>& judge_indices) const {
    std::vector<std::string> ids;
    ids.reserve(judge_indices.size());
    for (std::size_t j : judge_indices) {
        require(j < judge_count(), ErrorCode::ShapeError, "judge index out of range");
        ids.push_back(judge_ids_[j]);
    }
    std::vector<std::int8_t> votes;
    votes.reserve(item_count() * judge_indices.size());
    for (std::size_t i = 0; i < item_count(); ++i) {
        for (std::size_t j : judge_indices) {
            votes.push_back(static_cast<std::int8_t>(vote(i, j)));
        }
    }
    return VoteMatrix(item_ids_, std::move(ids), std::move(votes));
}

int discretize(double score_a, double score_b, int polarity) {
    require(std::isfinite(score_a) && std::isfinite(score_b), ErrorCode::InvalidScore,
            "discretize requires finite scores");
    require(polarity == 1 || polarity == -1, ErrorCode::InvalidArgument,
            "polarity must be +1 or -1");
    return polarity * (score_a - score_b) > 0 ? +1 : -1;
}

VoteBuildResult build_vote_matrix(const std::vector<EvaluationItem>& items,
                                  const std::vector<JudgeDescriptor>& judges,
                                  const Scorer& scorer,
                                  unsigned parallelism) {
    require(!items.empty(), ErrorCode::EmptyInput, "build_vote_matrix: no items");
    require(!judges.empty(), ErrorCode::EmptyInput, "build_vote_matrix: no judges");

    const std::size_t n = items.size();
    const std::size_t m = judges.size();
    std::vector<ScoreRecord> records(n * m);
    std::vector<std::int8_t> votes(n * m, -1);

    auto eval_cell = [&](std::size_t cell) {
        const std::size_t i = cell / m;
        const std::size_t j = cell % m;
        ScoreRecord rec;
        try {
            rec = scorer(judges[j], items[i]);
            rec.judge_id = judges[j].id;
            rec.item_id = items[i].id;
        } catch (const std::exception& e) {
            rec = ScoreRecord::make_failed(judges[j].id, items[i].id, e.what());
        }
        // Failure policy: failed cells vote -1 and stay auditable in records.
        votes[cell] = rec.ok
            ? static_cast<std::int8_t>(discretize(rec.score_a, rec.score_b, judges[j].polarity))
            : static_cast<std::int8_t>(-1);
        records[cell] = std::move(rec);
    };

    if (parallelism <= 1 || n * m == 1) {
        for (std::size_t cell = 0; cell < n * m; ++cell) eval_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        const unsigned workers = std::min<unsigned>(parallelism, static_cast<unsigned>(n * m));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t cell = next.fetch_add(1); cell < n * m;
                     cell = next.fetch_add(1)) {
                    eval_cell(cell);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<std::string> item_ids, judge_ids;
    item_ids.reserve(n);
    judge_ids.reserve(m);
    for (const auto& it : items) item_ids.push_back(it.id);
    for (const auto& jd : judges) judge_ids.push_back(jd.id);

    VoteBuildResult out;
    out.records = std::move(records);
    out.votes = VoteMatrix(std::move(item_ids), std::move(judge_ids), std::move(votes));
    return out;
}

EvaluationItem swap_pair(const EvaluationItem& item) {
    EvaluationItem swapped = item;
    swapped.id = item.id + "::swap";
    swapped.response_a = item.response_b;
    swapped.response_b = item.response_a;
    if (item.gold) swapped.gold = -*item.gold;
    return swapped;
}

} // namespace pajama
