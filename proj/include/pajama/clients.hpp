// HTTP/JSON clients for the external capabilities: embedding, text
// classification, and chat completion. Wire schemas (all POST):
//
//   /embed     {"texts":[...]}                  -> {"embeddings":[[...]]}
//   /classify  {"texts":[...],"model_id":"..."} -> {"probs":[[...]]}
//   /v1/chat/completions
//              {"model":"...","messages":[{"role":"...","content":"..."}]}
//              -> choices[0].message.content
//
// Field names and order are part of the contract. Failures surface as typed
// errors; no client ever fabricates a value.

#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "pajama/error.hpp"
#include "pajama/services.hpp"

namespace pajama::clients {

struct ServiceEndpoint {
    std::string base_url; // e.g. "http://127.0.0.1:8080"
    std::chrono::milliseconds timeout{5000};
    int max_in_flight = 4;
    std::string auth_token_env; // empty: no Authorization header
};

struct RetryPolicy {
    int max_retries = 1; // one retry on transport failure, then fail
    std::chrono::milliseconds base_backoff{100};
};

// Runs op(); on Error(ServiceUnavailable) sleeps base_backoff*2^attempt and
// retries up to max_retries times. Everything else propagates immediately.
template <typename Op>
auto with_retry(const RetryPolicy& policy, Op&& op) -> decltype(op()) {
    for (int attempt = 0;; ++attempt) {
        try {
            return op();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ServiceUnavailable || attempt >= policy.max_retries) {
                throw;
            }
        }
        std::this_thread::sleep_for(policy.base_backoff * (1 << attempt));
    }
}

class HttpEmbeddingClient : public EmbeddingService {
public:
    explicit HttpEmbeddingClient(ServiceEndpoint endpoint, RetryPolicy retry = {});
    ~HttpEmbeddingClient() override;

    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;

    // Exact request body for the given texts (golden-file assertable).
    static std::string request_body(const std::vector<std::string>& texts);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

class HttpClassifierClient : public ClassifierService {
public:
    explicit HttpClassifierClient(ServiceEndpoint endpoint, RetryPolicy retry = {});
    ~HttpClassifierClient() override;

    std::vector<std::vector<double>> classify(const std::vector<std::string>& texts,
                                              const std::string& model_id) override;

    static std::string request_body(const std::vector<std::string>& texts,
                                    const std::string& model_id);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct ChatConfig {
    ServiceEndpoint endpoint; // auth_token_env defaults to PAJAMA_LLM_API_KEY
    std::string model = "gpt-4o";
};

class HttpChatClient {
public:
    explicit HttpChatClient(ChatConfig config, RetryPolicy retry = {});
    ~HttpChatClient();

    // Sends one user message, returns choices[0].message.content.
    // Throws AuthMissing when the configured credential env var is unset.
    std::string complete(const std::string& prompt);

    const ChatConfig& config() const;

    static std::string request_body(const std::string& model, const std::string& prompt);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace pajama::clients
