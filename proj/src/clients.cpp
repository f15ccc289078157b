#include "pajama/clients.hpp"

#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <mutex>

#include "httplib.h"
#include "json.hpp"

namespace pajama::clients {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Caps concurrent in-flight requests (max_in_flight is runtime-chosen, so
// std::counting_semaphore does not fit).
class Semaphore {
public:
    explicit Semaphore(int count) : count_(count) {}

    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return count_ > 0; });
        --count_;
    }

    void release() {
        {
            std::lock_guard lock(mu_);
            ++count_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int count_;
};

class SemaphoreGuard {
public:
    explicit SemaphoreGuard(Semaphore& sem) : sem_(sem) { sem_.acquire(); }
    ~SemaphoreGuard() { sem_.release(); }
    SemaphoreGuard(const SemaphoreGuard&) = delete;
    SemaphoreGuard& operator=(const SemaphoreGuard&) = delete;

private:
    Semaphore& sem_;
};

struct HttpCore {
    ServiceEndpoint endpoint;
    RetryPolicy retry;
    Semaphore in_flight;

    HttpCore(ServiceEndpoint ep, RetryPolicy rp)
        : endpoint(std::move(ep)), retry(rp), in_flight(endpoint.max_in_flight) {
        require(endpoint.timeout.count() > 0, ErrorCode::InvalidArgument,
                "endpoint timeout must be > 0");
        require(endpoint.max_in_flight >= 1, ErrorCode::InvalidArgument,
                "max_in_flight must be >= 1");
        require(!endpoint.base_url.empty(), ErrorCode::InvalidArgument,
                "endpoint base_url is empty");
    }

    std::string auth_token() const {
        if (endpoint.auth_token_env.empty()) return {};
        const char* value = std::getenv(endpoint.auth_token_env.c_str());
        require(value != nullptr && *value != '\0', ErrorCode::AuthMissing,
                "environment variable " + endpoint.auth_token_env + " is not set");
        return value;
    }

    json post_json(const std::string& path, const std::string& body, bool require_auth) {
        std::string token;
        if (require_auth || !endpoint.auth_token_env.empty()) token = auth_token();

        auto once = [&]() -> std::string {
            SemaphoreGuard guard(in_flight);
            httplib::Client cli(endpoint.base_url);
            cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
                                           endpoint.timeout).count(),
                                       (endpoint.timeout.count() % 1000) * 1000);
            cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(
                                     endpoint.timeout).count(),
                                 (endpoint.timeout.count() % 1000) * 1000);
            httplib::Headers headers;
            if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
            auto res = cli.Post(path, headers, body, "application/json");
            if (!res) {
                throw Error(ErrorCode::ServiceUnavailable,
                            "POST " + endpoint.base_url + path + " failed: " +
                            httplib::to_string(res.error()));
            }
            if (res->status != 200) {
                throw Error(ErrorCode::ServiceUnavailable,
                            "POST " + endpoint.base_url + path + " returned HTTP " +
                            std::to_string(res->status));
            }
            return res->body;
        };

        const std::string reply = with_retry(retry, once);
        try {
            return json::parse(reply);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::ProtocolViolation,
                        "response from " + path + " is not valid JSON: " + e.what());
        }
    }
};

std::vector<std::vector<double>> parse_vector_list(const json& node, const char* field,
                                                   std::size_t expected_count) {
    require(node.contains(field) && node[field].is_array(), ErrorCode::ProtocolViolation,
            std::string("response missing array field '") + field + "'");
    const auto& rows = node[field];
    require(rows.size() == expected_count, ErrorCode::ProtocolViolation,
            std::string(field) + " count " + std::to_string(rows.size()) +
            " does not match request count " + std::to_string(expected_count));
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        require(row.is_array(), ErrorCode::ProtocolViolation,
                std::string(field) + " entries must be arrays");
        std::vector<double> vec;
        vec.reserve(row.size());
        for (const auto& v : row) {
            require(v.is_number(), ErrorCode::ProtocolViolation,
                    std::string(field) + " entries must be numeric");
            const double x = v.get<double>();
            require(std::isfinite(x), ErrorCode::ProtocolViolation,
                    std::string(field) + " entries must be finite");
            vec.push_back(x);
        }
        out.push_back(std::move(vec));
    }
    return out;
}

} // namespace

// ---- embedding -------------------------------------------------------------

struct HttpEmbeddingClient::Impl {
    HttpCore core;
    Impl(ServiceEndpoint ep, RetryPolicy rp) : core(std::move(ep), rp) {}
};

HttpEmbeddingClient::HttpEmbeddingClient(ServiceEndpoint endpoint, RetryPolicy retry)
    : impl_(std::make_unique<Impl>(std::move(endpoint), retry)) {}

HttpEmbeddingClient::~HttpEmbeddingClient() = default;

std::string HttpEmbeddingClient::request_body(const std::vector<std::string>& texts) {
    ordered_json body;
    body["texts"] = texts;
    return body.dump();
}

std::vector<std::vector<double>> HttpEmbeddingClient::embed(
    const std::vector<std::string>& texts) {
    require(!texts.empty(), ErrorCode::EmptyInput, "embed: no texts");
    const json reply = impl_->core.post_json("/embed", request_body(texts), false);
    auto vectors = parse_vector_list(reply, "embeddings", texts.size());
    for (const auto& v : vectors) {
        require(v.size() == vectors.front().size(), ErrorCode::ProtocolViolation,
                "embedding dimensions are inconsistent");
        require(!v.empty(), ErrorCode::ProtocolViolation, "embedding vectors must be nonempty");
    }
    return vectors;
}

// ---- classification ---------------------------------------------------------

struct HttpClassifierClient::Impl {
    HttpCore core;
    Impl(ServiceEndpoint ep, RetryPolicy rp) : core(std::move(ep), rp) {}
};

HttpClassifierClient::HttpClassifierClient(ServiceEndpoint endpoint, RetryPolicy retry)
    : impl_(std::make_unique<Impl>(std::move(endpoint), retry)) {}

HttpClassifierClient::~HttpClassifierClient() = default;

std::string HttpClassifierClient::request_body(const std::vector<std::string>& texts,
                                               const std::string& model_id) {
    ordered_json body;
    body["texts"] = texts;
    body["model_id"] = model_id;
    return body.dump();
}

std::vector<std::vector<double>> HttpClassifierClient::classify(
    const std::vector<std::string>& texts, const std::string& model_id) {
    require(!texts.empty(), ErrorCode::EmptyInput, "classify: no texts");
    const json reply = impl_->core.post_json("/classify", request_body(texts, model_id), false);
    auto probs = parse_vector_list(reply, "probs", texts.size());
    for (const auto& p : probs) {
        require(!p.empty(), ErrorCode::ProtocolViolation, "probability vectors must be nonempty");
        double sum = 0.0;
        for (double v : p) {
            require(v >= 0.0 && v <= 1.0, ErrorCode::ProtocolViolation,
                    "class probability outside [0,1]");
            sum += v;
        }
        require(std::abs(sum - 1.0) <= 1e-3, ErrorCode::ProtocolViolation,
                "class probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
    return probs;
}

// ---- chat completion ---------------------------------------------------------

struct HttpChatClient::Impl {
    HttpCore core;
    ChatConfig config;
    Impl(ChatConfig cfg, RetryPolicy rp) : core(cfg.endpoint, rp), config(std::move(cfg)) {}
};

HttpChatClient::HttpChatClient(ChatConfig config, RetryPolicy retry) {
    if (config.endpoint.auth_token_env.empty()) {
        config.endpoint.auth_token_env = "PAJAMA_LLM_API_KEY";
    }
    impl_ = std::make_unique<Impl>(std::move(config), retry);
}

HttpChatClient::~HttpChatClient() = default;

const ChatConfig& HttpChatClient::config() const { return impl_->config; }

std::string HttpChatClient::request_body(const std::string& model, const std::string& prompt) {
    ordered_json message;
    message["role"] = "user";
    message["content"] = prompt;
    ordered_json body;
    body["model"] = model;
    body["messages"] = ordered_json::array({message});
    return body.dump();
}

std::string HttpChatClient::complete(const std::string& prompt) {
    const json reply = impl_->core.post_json(
        "/v1/chat/completions", request_body(impl_->config.model, prompt), true);
    try {
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ProtocolViolation,
                    "chat response lacks choices[0].message.content");
    }
}

} // namespace pajama::clients
