#include "pajama/label_model.hpp"

#include <algorithm>
#include <cmath>

namespace pajama::labelmodel {

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double logistic(double x) {
    if (x >= 0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void check_row(const std::vector<int>& row, const LabelModelParams& params) {
    require(row.size() == params.judge_count(), ErrorCode::ShapeError,
            "vote row length " + std::to_string(row.size()) + " != judge count " +
            std::to_string(params.judge_count()));
}

} // namespace

std::vector<std::vector<double>> pairwise_moments(const VoteMatrix& votes) {
    const std::size_t n = votes.item_count();
    const std::size_t m = votes.judge_count();
    require(n >= 1 && m >= 1, ErrorCode::EmptyInput, "pairwise_moments: empty vote matrix");

    std::vector<std::vector<double>> moments(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < m; ++a) {
            const int va = votes.vote(i, a);
            for (std::size_t b = a + 1; b < m; ++b) {
                moments[a][b] += static_cast<double>(va * votes.vote(i, b));
            }
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        moments[a][a] = 1.0;
        for (std::size_t b = a + 1; b < m; ++b) {
            moments[a][b] /= static_cast<double>(n);
            moments[b][a] = moments[a][b];
        }
    }
    return moments;
}

LabelModelParams fit_triplet(const VoteMatrix& votes, const FitConfig& config) {
    const std::size_t m = votes.judge_count();
    require(m >= 3, ErrorCode::TooFewJudges,
            "triplet fitting needs at least 3 judges, got " + std::to_string(m));
    require(votes.item_count() >= 1, ErrorCode::EmptyInput, "fit_triplet: no items");
    require(config.clamp_epsilon > 0 && config.clamp_epsilon < 0.5, ErrorCode::InvalidArgument,
            "clamp_epsilon must be in (0, 0.5)");
    require(config.class_prior > 0 && config.class_prior < 1, ErrorCode::InvalidArgument,
            "class_prior must be in (0, 1)");

    const auto moments = pairwise_moments(votes);
    const double eps = config.clamp_epsilon;

    LabelModelParams params;
    params.judge_ids = votes.judge_ids();
    params.class_prior = config.class_prior;
    params.clamp_epsilon = eps;
    params.fitter = "triplet";
    params.accuracies.resize(m);
    params.thetas.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> estimates;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            for (std::size_t k = j + 1; k < m; ++k) {
                if (k == i) continue;
                if (std::abs(moments[j][k]) < eps) continue;
                estimates.push_back(
                    std::sqrt(std::abs(moments[i][j] * moments[i][k] / moments[j][k])));
            }
        }
        if (estimates.empty()) {
            throw Error(ErrorCode::DegenerateMoments,
                        "all triplets degenerate for judge '" + params.judge_ids[i] + "'");
        }
        const double a = std::clamp(median(std::move(estimates)), 0.0, 1.0 - eps);
        params.accuracies[i] = a;
        params.thetas[i] = std::atanh(a);
    }
    return params;
}

LabelModelParams fit_em(const VoteMatrix& votes, const LabelModelParams& init,
                        const EmConfig& config, EmTrace* trace) {
    const std::size_t n = votes.item_count();
    const std::size_t m = votes.judge_count();
    require(init.judge_count() == m, ErrorCode::ShapeError,
            "init params do not match the vote matrix judge count");
    require(n >= 1, ErrorCode::EmptyInput, "fit_em: no items");

    LabelModelParams params = init;
    params.fitter = "em";
    const double eps = params.clamp_epsilon;
    const double a_max = 1.0 - eps;

    if (trace) *trace = EmTrace{};

    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        // E-step: posterior responsibility per row.
        std::vector<double> resp(n);
        for (std::size_t t = 0; t < n; ++t) {
            resp[t] = infer_posterior(votes.row(t), params);
        }

        // M-step: a_i = mean of vote_i*(2r-1); prior = mean(r).
        LabelModelParams next = params;
        double prior_sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) prior_sum += resp[t];
        next.class_prior = std::clamp(prior_sum / static_cast<double>(n), eps, 1.0 - eps);

        double max_delta = std::abs(next.class_prior - params.class_prior);
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                s += static_cast<double>(votes.vote(t, j)) * (2.0 * resp[t] - 1.0);
            }
            double a = std::clamp(s / static_cast<double>(n), -a_max, a_max);
            require(std::isfinite(a), ErrorCode::NumericalFailure,
                    "EM produced a non-finite accuracy");
            max_delta = std::max(max_delta, std::abs(a - params.accuracies[j]));
            next.accuracies[j] = a;
            next.thetas[j] = std::atanh(a);
        }

        params = std::move(next);

        if (trace) {
            const double ll = log_likelihood(votes, params);
            require(std::isfinite(ll), ErrorCode::NumericalFailure,
                    "EM produced a non-finite log-likelihood");
            trace->log_likelihoods.push_back(ll);
            trace->iterations = iter + 1;
        }

        if (max_delta < config.tol) {
            if (trace) trace->converged = true;
            break;
        }
    }
    return params;
}

double infer_posterior(const std::vector<int>& vote_row, const LabelModelParams& params) {
    check_row(vote_row, params);
    double weighted = 0.0;
    for (std::size_t j = 0; j < vote_row.size(); ++j) {
        require(vote_row[j] == 1 || vote_row[j] == -1, ErrorCode::InvalidArgument,
                "votes must be exactly +1 or -1");
        weighted += params.thetas[j] * static_cast<double>(vote_row[j]);
    }
    const double logit_prior = std::log(params.class_prior / (1.0 - params.class_prior));
    const double p = logistic(2.0 * weighted + logit_prior);
    // Keep the open-interval contract even when exp() saturates.
    return std::clamp(p, 1e-15, 1.0 - 1e-15);
}

PreferenceLabel predict(const std::vector<int>& vote_row, const LabelModelParams& params) {
    const double p = infer_posterior(vote_row, params);
    return PreferenceLabel{p >= 0.5 ? +1 : -1};
}

PreferenceLabel majority_vote(const std::vector<int>& vote_row) {
    require(!vote_row.empty(), ErrorCode::EmptyInput, "majority_vote: empty row");
    int sum = 0;
    for (int v : vote_row) {
        require(v == 1 || v == -1, ErrorCode::InvalidArgument, "votes must be exactly +1 or -1");
        sum += v;
    }
    return PreferenceLabel{sum >= 0 ? +1 : -1};
}

double log_likelihood(const VoteMatrix& votes, const LabelModelParams& params) {
    const std::size_t n = votes.item_count();
    const std::size_t m = votes.judge_count();
    require(params.judge_count() == m, ErrorCode::ShapeError,
            "params do not match the vote matrix judge count");

    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        // log P(row, Y=+1) and log P(row, Y=-1), summed in log space.
        double lp_pos = std::log(params.class_prior);
        double lp_neg = std::log(1.0 - params.class_prior);
        for (std::size_t j = 0; j < m; ++j) {
            const double a = params.accuracies[j];
            const double agree = std::log((1.0 + a) / 2.0);
            const double disagree = std::log((1.0 - a) / 2.0);
            if (votes.vote(t, j) == 1) {
                lp_pos += agree;
                lp_neg += disagree;
            } else {
                lp_pos += disagree;
                lp_neg += agree;
            }
        }
        const double hi = std::max(lp_pos, lp_neg);
        total += hi + std::log(std::exp(lp_pos - hi) + std::exp(lp_neg - hi));
    }
    return total / static_cast<double>(n);
}

} // namespace pajama::labelmodel
