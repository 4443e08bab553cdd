#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "scambait/completion.hpp"

namespace scambait {

// Deterministic stand-in for the live service: candidate texts are a pure
// function of (prompt, seed, candidate index), byte-identical across runs and
// platforms. Behaviour knobs let tests script failures, cutoffs and
// self-sabotaging output.
struct MockBehavior {
    std::uint64_t seed = 0;
    int fail_first_attempts = 0;           // throw ServiceUnavailable this many times
    std::string fail_if_prompt_contains;   // per-conversation failure injection
    bool truncate_all = false;             // flag every candidate as cut off
    std::string forced_text;               // all candidates become this text
};

class MockCompletionClient final : public CompletionClient {
public:
    explicit MockCompletionClient(TokenBudget budget, MockBehavior behavior = {})
        : budget_(budget), behavior_(std::move(behavior)) {}

    std::vector<Candidate> complete(const CompletionRequest& request) override;
    const TokenBudget& budget() const override { return budget_; }
    std::size_t requests_dispatched() const override;

    // prompts of every dispatched request, in dispatch order
    std::vector<std::string> dispatched_prompts() const;

    MockBehavior& behavior() { return behavior_; }

private:
    TokenBudget budget_;
    MockBehavior behavior_;
    std::vector<std::string> prompts_;
    int failures_injected_ = 0;
    mutable std::mutex mutex_;
};

} // namespace scambait
