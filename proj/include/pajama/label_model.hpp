// Weak-supervision aggregation over discretized judge votes: estimate
// per-judge accuracies from unlabeled agreement statistics, turn them into
// log-odds reliability weights, and infer consensus preference labels.
//
// Model: votes are conditionally independent given the latent preference Y,
// each judge agreeing with Y with probability (1+a_i)/2. The reliability
// weight is theta_i = atanh(a_i); the exact posterior is
//   P(Y=+1 | row) = logistic(2*sum_i theta_i*vote_i + ln(prior/(1-prior))).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pajama/core.hpp"

namespace pajama::labelmodel {

struct LabelModelParams {
    std::vector<std::string> judge_ids;
    std::vector<double> accuracies; // a_i in (-1,1), |a_i| <= 1 - clamp_epsilon
    std::vector<double> thetas;     // theta_i = atanh(a_i)
    double class_prior = 0.5;       // P(Y=+1), in (0,1)
    double clamp_epsilon = 1e-3;
    std::string fitter = "triplet"; // "triplet" | "em"
    std::uint64_t seed = 0;

    std::size_t judge_count() const { return judge_ids.size(); }
};

struct FitConfig {
    double clamp_epsilon = 1e-3;
    double class_prior = 0.5;
};

struct EmConfig {
    std::size_t max_iters = 100;
    double tol = 1e-6;
};

struct EmTrace {
    std::vector<double> log_likelihoods; // one entry per iteration, non-decreasing
    std::size_t iterations = 0;
    bool converged = false;
};

// M[i][j] = mean over items of vote_i*vote_j; diagonal pinned to 1.
std::vector<std::vector<double>> pairwise_moments(const VoteMatrix& votes);

// Closed-form triplet estimator. For each judge i the products
// M[i][j]*M[i][k]/M[j][k] over pairs (j,k) estimate a_i^2 under conditional
// independence; the median of sqrt(|...|) over non-degenerate pairs gives
// |a_i|, resolved to the + sign (judges assumed better than chance on
// average) and clamped to [0, 1-eps].
LabelModelParams fit_triplet(const VoteMatrix& votes, const FitConfig& config = {});

// EM refinement of an initial fit; maximizes the same one-parameter-per-judge
// likelihood. Log-likelihood is non-decreasing across iterations.
LabelModelParams fit_em(const VoteMatrix& votes, const LabelModelParams& init,
                        const EmConfig& config = {}, EmTrace* trace = nullptr);

// Exact posterior P(Y=+1 | row); the partition function cancels analytically.
double infer_posterior(const std::vector<int>& vote_row, const LabelModelParams& params);

// +1 when the posterior favors y1; exact 0.5 breaks to +1.
PreferenceLabel predict(const std::vector<int>& vote_row, const LabelModelParams& params);

// Sign of the vote sum; zero sum breaks to +1.
PreferenceLabel majority_vote(const std::vector<int>& vote_row);

// Average log P(row) under the model; used by the EM monotonicity check.
double log_likelihood(const VoteMatrix& votes, const LabelModelParams& params);

} // namespace pajama::labelmodel
