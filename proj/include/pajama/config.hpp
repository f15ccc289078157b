// Run configuration: a flat key=value file plus environment overrides
// (PAJAMA_EMBED_URL, PAJAMA_CLASSIFY_URL). Unknown keys are rejected so the
// documented key set stays exact.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pajama::config {

// min(hardware_concurrency, 8), at least 1.
unsigned default_jobs();

struct RunConfig {
    std::vector<std::string> judge_selection; // empty = all registered judges

    std::string embed_url;
    std::string classify_url;
    std::string llm_url;
    std::string llm_model = "gpt-4o";
    std::string llm_api_key_env = "PAJAMA_LLM_API_KEY";
    std::string hate_model_id = "hate-speech";
    std::string factuality_model_id = "factuality";

    long timeout_ms = 5000;
    int max_in_flight = 4;

    std::string fitter = "triplet"; // "triplet" | "triplet+em"
    double prior = 0.5;
    double clamp_epsilon = 1e-3;
    std::uint64_t seed = 0;
    unsigned jobs = default_jobs(); // scoring parallelism; outputs are
                                    // order-deterministic either way

    double price_per_1k_prompt = 0.0025;
    double price_per_1k_completion = 0.01;
};

// Keys: judges, embed_url, classify_url, llm_url, llm_model, llm_api_key_env,
// hate_model_id, factuality_model_id, timeout_ms, max_in_flight, fitter,
// prior, clamp_epsilon, seed, jobs, price_per_1k_prompt,
// price_per_1k_completion. '#' comments; judges is comma-separated or "all".
RunConfig parse_config(const std::string& content, const std::string& source_name);
RunConfig load_config(const std::string& path);

// PAJAMA_EMBED_URL / PAJAMA_CLASSIFY_URL override the file values.
void apply_env_overrides(RunConfig& config);

} // namespace pajama::config
