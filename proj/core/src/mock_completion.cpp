#include "scambait/mock_completion.hpp"

#include <array>
#include <cctype>

#include "scambait/errors.hpp"
#include "scambait/rng.hpp"

namespace scambait {

namespace {

// Filler vocabulary for generated replies. Deliberately avoids the default
// safety lexicons and digit sequences so mock output screens as Pass.
constexpr std::array<const char*, 48> kWords = {
    "thank",    "you",      "for",     "your",    "message", "kindly",
    "explain",  "how",      "the",     "process", "works",   "and",
    "what",     "steps",    "are",     "needed",  "next",    "very",
    "interested", "in",     "this",    "matter",  "could",   "please",
    "share",    "more",     "details", "about",   "transfer", "arrangement",
    "when",     "should",   "we",      "proceed", "with",    "paperwork",
    "happy",    "to",       "assist",  "once",    "everything", "is",
    "clear",    "awaiting", "reply",   "soon",    "best",    "wishes",
};

std::string synthesize_reply(const std::string& prompt, std::uint64_t seed, std::size_t index) {
    SplitMix64 rng(mix_seed(fnv1a(prompt), seed + index * 0x9E37ULL));
    std::string body = "Dear friend,\n\n";
    const std::size_t sentences = 2 + rng.below(3);
    for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t words = 6 + rng.below(8);
        for (std::size_t w = 0; w < words; ++w) {
            std::string word = kWords[rng.below(kWords.size())];
            if (w == 0) word[0] = static_cast<char>(std::toupper(word[0]));
            body += word;
            body += (w + 1 == words) ? "." : " ";
        }
        body += " ";
    }
    body += "\n\nWarm regards,\nA hopeful correspondent";
    return body;
}

} // namespace

std::vector<Candidate> MockCompletionClient::complete(const CompletionRequest& request) {
    require_within_budget(request, budget_);

    std::lock_guard lock(mutex_);
    if (failures_injected_ < behavior_.fail_first_attempts) {
        ++failures_injected_;
        throw ServiceUnavailable("mock scripted failure " + std::to_string(failures_injected_));
    }
    if (!behavior_.fail_if_prompt_contains.empty() &&
        request.prompt.find(behavior_.fail_if_prompt_contains) != std::string::npos)
        throw ServiceUnavailable("mock scripted failure for matching prompt");

    prompts_.push_back(request.prompt);

    std::vector<Candidate> out;
    out.reserve(request.n_candidates);
    for (std::size_t i = 0; i < request.n_candidates; ++i) {
        Candidate candidate;
        candidate.text = behavior_.forced_text.empty()
                             ? synthesize_reply(request.prompt, behavior_.seed ^ request.seed, i)
                             : behavior_.forced_text;
        candidate.truncated = behavior_.truncate_all;
        out.push_back(std::move(candidate));
    }
    return out;
}

std::size_t MockCompletionClient::requests_dispatched() const {
    std::lock_guard lock(mutex_);
    return prompts_.size();
}

std::vector<std::string> MockCompletionClient::dispatched_prompts() const {
    std::lock_guard lock(mutex_);
    return prompts_;
}

} // namespace scambait
