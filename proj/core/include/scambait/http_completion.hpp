#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>

#include "scambait/clock.hpp"
#include "scambait/completion.hpp"

namespace scambait {

struct HttpCompletionConfig {
    std::string host = "localhost";
    int port = 443;
    std::string path = "/v1/chat/completions";
    std::string model = "gpt-3.5-turbo";
    // credentials come from the environment, never from disk
    std::string api_key_env = "SCAMBAIT_API_KEY";
    TokenBudget budget;
    int max_attempts = 3;
    std::chrono::milliseconds backoff_base{500};
    double requests_per_minute = 20.0;
};

// Speaks the JSON chat-completion wire format (messages array, choices in
// the response). Transient failures retry with exponential backoff; a global
// token bucket paces dispatch bursts.
class HttpCompletionClient final : public CompletionClient {
public:
    explicit HttpCompletionClient(HttpCompletionConfig config);
    ~HttpCompletionClient() override;

    std::vector<Candidate> complete(const CompletionRequest& request) override;
    const TokenBudget& budget() const override { return config_.budget; }
    std::size_t requests_dispatched() const override;

private:
    void rate_limit();

    HttpCompletionConfig config_;
    std::string api_key_;
    double bucket_tokens_;
    std::chrono::steady_clock::time_point bucket_refilled_;
    std::size_t dispatched_ = 0;
    mutable std::mutex mutex_;
};

} // namespace scambait
