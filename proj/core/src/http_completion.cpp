#include "scambait/http_completion.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "scambait/errors.hpp"

namespace scambait {

using nlohmann::json;

HttpCompletionClient::HttpCompletionClient(HttpCompletionConfig config)
    : config_(std::move(config)),
      bucket_tokens_(config_.requests_per_minute),
      bucket_refilled_(std::chrono::steady_clock::now()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
}

HttpCompletionClient::~HttpCompletionClient() = default;

void HttpCompletionClient::rate_limit() {
    using namespace std::chrono;
    for (;;) {
        {
            std::lock_guard lock(mutex_);
            const auto now = steady_clock::now();
            const double refill =
                duration<double>(now - bucket_refilled_).count() * config_.requests_per_minute / 60.0;
            bucket_tokens_ = std::min(config_.requests_per_minute, bucket_tokens_ + refill);
            bucket_refilled_ = now;
            if (bucket_tokens_ >= 1.0) {
                bucket_tokens_ -= 1.0;
                return;
            }
        }
        std::this_thread::sleep_for(milliseconds(50));
    }
}

std::vector<Candidate> HttpCompletionClient::complete(const CompletionRequest& request) {
    require_within_budget(request, config_.budget);

    json payload;
    payload["model"] = config_.model;
    payload["messages"] = json::array({json{{"role", "user"}, {"content", request.prompt}}});
    payload["temperature"] = request.temperature;
    payload["top_p"] = request.top_p;
    payload["max_tokens"] = request.max_response_tokens;
    payload["n"] = request.n_candidates;
    if (request.seed != 0) payload["seed"] = request.seed;
    const std::string body = payload.dump();

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    std::string last_error = "no attempts made";
    for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(config_.backoff_base * (1 << (attempt - 1)));
        rate_limit();
        {
            std::lock_guard lock(mutex_);
            ++dispatched_;
        }

        httplib::Client client(config_.host, config_.port);
        client.set_read_timeout(60, 0);
        auto result = client.Post(config_.path, headers, body, "application/json");
        if (!result) {
            last_error = "connection failed: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 429 || result->status >= 500) {
            last_error = "status " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200)
            throw ServiceUnavailable("completion service rejected request: status " +
                                     std::to_string(result->status));

        try {
            json response = json::parse(result->body);
            std::vector<Candidate> out;
            for (const auto& choice : response.at("choices")) {
                Candidate candidate;
                candidate.text = choice.at("message").at("content").get<std::string>();
                candidate.truncated =
                    choice.value("finish_reason", std::string{}) == "length";
                out.push_back(std::move(candidate));
            }
            return out;
        } catch (const json::exception& e) {
            last_error = std::string("malformed response: ") + e.what();
        }
    }
    throw ServiceUnavailable("completion service unavailable after " +
                             std::to_string(config_.max_attempts) + " attempts: " + last_error);
}

std::size_t HttpCompletionClient::requests_dispatched() const {
    std::lock_guard lock(mutex_);
    return dispatched_;
}

} // namespace scambait
