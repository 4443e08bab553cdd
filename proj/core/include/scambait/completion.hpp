#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scambait {

// chars/4 heuristic. Portable and dependency-free; budgets are set with
// headroom so a service-exact tokenizer is unnecessary for too-long
// detection.
inline std::size_t estimate_tokens(std::string_view text) {
    return (text.size() + 3) / 4;
}

struct TokenBudget {
    std::size_t total = 4096;
    std::size_t response_reserve = 512;

    std::size_t prompt_allowance() const {
        return total > response_reserve ? total - response_reserve : 0;
    }
    bool fits_prompt(std::size_t prompt_tokens) const {
        return prompt_tokens <= prompt_allowance();
    }
};

struct CompletionRequest {
    std::string prompt;
    double temperature = 0.2;
    double top_p = 0.2;
    std::size_t max_response_tokens = 512;
    std::size_t n_candidates = 1;
    std::uint64_t seed = 0;
};

struct Candidate {
    std::string text;
    bool truncated = false; // service signalled a length cutoff
};

class CompletionClient {
public:
    virtual ~CompletionClient() = default;

    // Throws BudgetExceeded before any dispatch when the request violates the
    // budget invariant, and ServiceUnavailable when retries are exhausted.
    virtual std::vector<Candidate> complete(const CompletionRequest& request) = 0;

    virtual const TokenBudget& budget() const = 0;

    // Requests actually handed to the backing service (audit counter).
    virtual std::size_t requests_dispatched() const = 0;
};

// Shared pre-dispatch guard.
void require_within_budget(const CompletionRequest& request, const TokenBudget& budget);

// Optional handling for overlong inbound text: chunk it, ask the service to
// summarize each chunk, and return the concatenated summaries to reply to.
std::string summarize_in_chunks(CompletionClient& client, std::string_view text,
                                std::size_t overhead_tokens);

} // namespace scambait
