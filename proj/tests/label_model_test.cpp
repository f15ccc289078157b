#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "pajama/label_model.hpp"
#include "pajama/rng.hpp"
#include "test_support.hpp"

using namespace pajama;
using namespace pajama::labelmodel;
using pajama::testsupport::generate_votes;
using pajama::testsupport::spread_accuracies;

namespace {

VoteMatrix matrix_from_columns(const std::vector<std::vector<int>>& columns) {
    const std::size_t m = columns.size();
    const std::size_t n = columns[0].size();
    std::vector<std::string> item_ids(n), judge_ids(m);
    for (std::size_t i = 0; i < n; ++i) item_ids[i] = "i" + std::to_string(i);
    for (std::size_t j = 0; j < m; ++j) judge_ids[j] = "j" + std::to_string(j);
    std::vector<std::int8_t> entries(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            entries[i * m + j] = static_cast<std::int8_t>(columns[j][i]);
        }
    }
    return VoteMatrix(item_ids, judge_ids, entries);
}

LabelModelParams params_with_thetas(const std::vector<double>& thetas, double prior) {
    LabelModelParams p;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        p.judge_ids.push_back("j" + std::to_string(j));
        p.thetas.push_back(thetas[j]);
        p.accuracies.push_back(std::tanh(thetas[j]));
    }
    p.class_prior = prior;
    return p;
}

// Posterior by explicit normalization over Y in {+1,-1}, the long way:
// joint(y) = P(Y=y) * prod_j P(vote_j | y) with P(agree) = (1+a_j)/2.
double oracle_posterior(const std::vector<int>& row, const LabelModelParams& params) {
    double joint_pos = params.class_prior;
    double joint_neg = 1.0 - params.class_prior;
    for (std::size_t j = 0; j < row.size(); ++j) {
        const double agree = (1.0 + params.accuracies[j]) / 2.0;
        const double disagree = (1.0 - params.accuracies[j]) / 2.0;
        joint_pos *= row[j] == +1 ? agree : disagree;
        joint_neg *= row[j] == -1 ? agree : disagree;
    }
    return joint_pos / (joint_pos + joint_neg);
}

} // namespace

TEST_CASE("pairwise_moments: agreement extremes and diagonal") {
    const auto same = matrix_from_columns({{1, -1, 1, -1}, {1, -1, 1, -1}});
    auto m_same = pairwise_moments(same);
    CHECK(m_same[0][1] == doctest::Approx(1.0));
    CHECK(m_same[0][0] == 1.0);

    const auto opposite = matrix_from_columns({{1, -1, 1, -1}, {-1, 1, -1, 1}});
    CHECK(pairwise_moments(opposite)[0][1] == doctest::Approx(-1.0));
}

TEST_CASE("pairwise_moments matches a brute-force sum on a hand-built matrix") {
    const std::vector<std::vector<int>> cols = {
        {1, 1, -1, 1}, {1, -1, -1, -1}, {-1, 1, -1, 1}};
    const auto votes = matrix_from_columns(cols);
    const auto moments = pairwise_moments(votes);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0;
            for (std::size_t t = 0; t < 4; ++t) s += cols[i][t] * cols[j][t];
            const double expected = i == j ? 1.0 : s / 4.0;
            CHECK(moments[i][j] == doctest::Approx(expected));
        }
    }
}

TEST_CASE("fit_triplet: perfect agreement clamps to 1 - eps") {
    const std::vector<int> col = {1, -1, 1, 1, -1};
    const auto votes = matrix_from_columns({col, col, col});
    const auto params = fit_triplet(votes);
    for (double a : params.accuracies) CHECK(a == doctest::Approx(1.0 - 1e-3));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(params.thetas[j] == doctest::Approx(std::atanh(params.accuracies[j])));
    }
}

TEST_CASE("fit_triplet recovers planted correlations within 0.05") {
    // Judges correct with probability 0.9 / 0.75 / 0.6 -> a = 0.8 / 0.5 / 0.2.
    const std::vector<double> planted = {0.8, 0.5, 0.2};
    const auto data = generate_votes(planted, 5000, 0.5, 16);
    const auto params = fit_triplet(data.votes);
    for (std::size_t j = 0; j < planted.size(); ++j) {
        CHECK(std::abs(params.accuracies[j] - planted[j]) < 0.05);
    }
}

TEST_CASE("fit_triplet: a coin-flip judge lands near zero") {
    const std::vector<double> planted = {0.8, 0.7, 0.6, 0.0};
    const auto data = generate_votes(planted, 5000, 0.5, 30);
    const auto params = fit_triplet(data.votes);
    CHECK(std::abs(params.accuracies[3]) < 0.05);
    CHECK(params.thetas[3] == doctest::Approx(std::atanh(params.accuracies[3])));
}

TEST_CASE("fit_triplet input validation") {
    const auto two = matrix_from_columns({{1, -1}, {1, 1}});
    CHECK_THROWS_AS(fit_triplet(two), Error);
    try {
        fit_triplet(two);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewJudges);
    }

    // Mutually orthogonal columns: every pairwise moment is 0, so every
    // triplet is degenerate.
    const auto degenerate = matrix_from_columns(
        {{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}});
    try {
        fit_triplet(degenerate);
        FAIL("expected DegenerateMoments");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateMoments);
        CHECK(std::string(e.what()).find("j0") != std::string::npos);
    }
}

TEST_CASE("fit_triplet is permutation-equivariant") {
    const auto data = generate_votes({0.7, 0.5, 0.3, 0.6}, 2000, 0.5, 11);
    const auto base = fit_triplet(data.votes);
    const std::vector<std::size_t> perm = {2, 0, 3, 1};
    const auto permuted = fit_triplet(data.votes.select_judges(perm));
    for (std::size_t j = 0; j < perm.size(); ++j) {
        CHECK(permuted.accuracies[j] == doctest::Approx(base.accuracies[perm[j]]));
        CHECK(permuted.judge_ids[j] == base.judge_ids[perm[j]]);
    }
}

TEST_CASE("fit_triplet: noiseless judge clamps to 1 - eps") {
    const auto data = generate_votes({1.0, 0.6, 0.5}, 1000, 0.5, 3);
    const auto params = fit_triplet(data.votes);
    CHECK(params.accuracies[0] == doctest::Approx(1.0 - 1e-3));
}

TEST_CASE("moment consistency: empirical M[i][j] approximates a_i*a_j") {
    const std::vector<double> planted = {0.8, 0.5, 0.2, 0.65};
    const std::size_t n = 4000;
    const auto data = generate_votes(planted, n, 0.5, 17);
    const auto moments = pairwise_moments(data.votes);
    const double tol = 3.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < planted.size(); ++i) {
        for (std::size_t j = i + 1; j < planted.size(); ++j) {
            CHECK(std::abs(moments[i][j] - planted[i] * planted[j]) < tol);
        }
    }
}

TEST_CASE("infer_posterior: closed form against explicit normalization") {
    Rng rng(555);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng.next_below(10);
        std::vector<double> thetas;
        std::vector<int> row;
        for (std::size_t j = 0; j < m; ++j) {
            thetas.push_back((rng.next_real01() * 2.0 - 1.0) * 3.0);
            row.push_back(rng.bernoulli(0.5) ? +1 : -1);
        }
        const double prior = 0.05 + 0.9 * rng.next_real01();
        const auto params = params_with_thetas(thetas, prior);
        CHECK(infer_posterior(row, params) ==
              doctest::Approx(oracle_posterior(row, params)).epsilon(1e-12));
    }
}

TEST_CASE("infer_posterior: documented examples") {
    // Uninformative judges: posterior equals the prior.
    const auto zero = params_with_thetas({0.0, 0.0, 0.0}, 0.3);
    CHECK(infer_posterior({1, -1, 1}, zero) == doctest::Approx(0.3));
    CHECK(infer_posterior({-1, -1, -1}, zero) == doctest::Approx(0.3));

    // theta = (1,1,1), row (+1,+1,-1), prior .5 -> logistic(2) = 0.8808.
    const auto unit = params_with_thetas({1.0, 1.0, 1.0}, 0.5);
    CHECK(infer_posterior({1, 1, -1}, unit) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-12));
    CHECK(infer_posterior({1, 1, -1}, unit) == doctest::Approx(0.8808).epsilon(1e-4));

    // Negating every vote maps p -> 1-p at prior 0.5.
    const auto p = infer_posterior({1, 1, -1}, unit);
    CHECK(infer_posterior({-1, -1, 1}, unit) == doctest::Approx(1.0 - p).epsilon(1e-12));

    CHECK_THROWS_AS(infer_posterior({1, 1}, unit), Error);
}

TEST_CASE("posterior increases with agreement when theta > 0") {
    const auto params = params_with_thetas({0.8, 0.4, 1.2, 0.1}, 0.5);
    const double base = infer_posterior({-1, -1, -1, -1}, params);
    double prev = base;
    // Flipping any -1 to +1 raises the posterior.
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<int> row = {-1, -1, -1, -1};
        row[j] = 1;
        const double p = infer_posterior(row, params);
        CHECK(p > base);
    }
    (void)prev;
}

TEST_CASE("predict thresholds the posterior, tie goes to +1") {
    const auto unit = params_with_thetas({1.0, 1.0, 1.0}, 0.5);
    CHECK(predict({1, 1, -1}, unit).value == +1);
    CHECK(predict({-1, -1, 1}, unit).value == -1);
    // All-zero weights and prior 0.5 -> posterior exactly 0.5 -> +1.
    const auto zero = params_with_thetas({0.0, 0.0}, 0.5);
    CHECK(infer_posterior({1, -1}, zero) == doctest::Approx(0.5));
    CHECK(predict({1, -1}, zero).value == +1);
}

TEST_CASE("majority_vote") {
    CHECK(majority_vote({1, 1, -1}).value == +1);
    CHECK(majority_vote({1, -1}).value == +1); // zero sum breaks to +1
    CHECK(majority_vote({-1, -1, -1, 1}).value == -1);
    CHECK_THROWS_AS(majority_vote({}), Error);
}

TEST_CASE("equal positive thetas reproduce majority vote on tie-free rows") {
    const auto params = params_with_thetas({0.7, 0.7, 0.7, 0.7, 0.7}, 0.5);
    Rng rng(31337);
    for (int t = 0; t < 1000; ++t) {
        std::vector<int> row(5);
        int sum = 0;
        for (auto& v : row) {
            v = rng.bernoulli(0.5) ? 1 : -1;
            sum += v;
        }
        if (sum == 0) continue;
        CHECK(predict(row, params).value == majority_vote(row).value);
    }
}

TEST_CASE("fit_em: fixed point at the truth on balanced noiseless data") {
    // All judges copy Y exactly; Y alternates so the empirical prior is 0.5.
    std::vector<int> y(200);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 2 ? 1 : -1;
    const auto votes = matrix_from_columns({y, y, y});

    LabelModelParams init;
    init.judge_ids = votes.judge_ids();
    init.accuracies = {1.0 - 1e-3, 1.0 - 1e-3, 1.0 - 1e-3};
    for (double a : init.accuracies) init.thetas.push_back(std::atanh(a));
    init.class_prior = 0.5;

    EmTrace trace;
    const auto fitted = fit_em(votes, init, EmConfig{50, 1e-6}, &trace);
    CHECK(trace.converged);
    CHECK(trace.iterations == 1);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(fitted.accuracies[j] == doctest::Approx(init.accuracies[j]).epsilon(1e-9));
    }
    CHECK(fitted.class_prior == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fit_em: log-likelihood is non-decreasing and estimates agree with triplet") {
    const auto planted = spread_accuracies(6, 0.2, 0.8);
    const auto data = generate_votes(planted, 3000, 0.5, 99);
    const auto tri = fit_triplet(data.votes);

    EmTrace trace;
    const auto em = fit_em(data.votes, tri, EmConfig{200, 1e-8}, &trace);
    REQUIRE(trace.log_likelihoods.size() >= 2);
    for (std::size_t i = 1; i < trace.log_likelihoods.size(); ++i) {
        CHECK(trace.log_likelihoods[i] >=
              trace.log_likelihoods[i - 1] - 1e-9 * std::abs(trace.log_likelihoods[i - 1]));
    }
    for (std::size_t j = 0; j < planted.size(); ++j) {
        CHECK(std::abs(em.accuracies[j] - tri.accuracies[j]) < 0.03);
        CHECK(std::abs(em.accuracies[j] - planted[j]) < 0.05);
    }
    CHECK(em.fitter == "em");
}

TEST_CASE("log_likelihood is higher at the truth than at a mismatched model") {
    const auto planted = spread_accuracies(5, 0.3, 0.8);
    const auto data = generate_votes(planted, 2000, 0.5, 5);

    LabelModelParams truth;
    truth.judge_ids = data.votes.judge_ids();
    truth.accuracies = planted;
    for (double a : planted) truth.thetas.push_back(std::atanh(a));
    truth.class_prior = 0.5;

    LabelModelParams wrong = truth;
    for (auto& a : wrong.accuracies) a = 0.01;
    wrong.thetas.clear();
    for (double a : wrong.accuracies) wrong.thetas.push_back(std::atanh(a));

    CHECK(log_likelihood(data.votes, truth) > log_likelihood(data.votes, wrong));
}
