#include "scambait/completion.hpp"

#include "scambait/errors.hpp"

namespace scambait {

void require_within_budget(const CompletionRequest& request, const TokenBudget& budget) {
    const std::size_t prompt_tokens = estimate_tokens(request.prompt);
    if (prompt_tokens + request.max_response_tokens > budget.total)
        throw BudgetExceeded("prompt " + std::to_string(prompt_tokens) + " + response " +
                             std::to_string(request.max_response_tokens) +
                             " tokens exceed budget " + std::to_string(budget.total));
}

std::string summarize_in_chunks(CompletionClient& client, std::string_view text,
                                std::size_t overhead_tokens) {
    static constexpr std::string_view kInstruction =
        "Summarize the following email excerpt in a few sentences, keeping names, "
        "amounts and requests:\n\n";

    const TokenBudget& budget = client.budget();
    const std::size_t allowance = budget.prompt_allowance();
    const std::size_t instruction_tokens = estimate_tokens(kInstruction) + overhead_tokens;
    if (allowance <= instruction_tokens)
        throw BudgetExceeded("no room for chunk instruction within budget");
    // tokens -> chars via the same 4 chars/token estimate
    const std::size_t chunk_chars = (allowance - instruction_tokens) * 4;

    std::string combined;
    for (std::size_t offset = 0; offset < text.size(); offset += chunk_chars) {
        CompletionRequest request;
        request.prompt = std::string(kInstruction) + std::string(text.substr(offset, chunk_chars));
        request.max_response_tokens = budget.response_reserve;
        request.n_candidates = 1;
        auto candidates = client.complete(request);
        if (!candidates.empty()) {
            if (!combined.empty()) combined += "\n";
            combined += candidates.front().text;
        }
    }
    return combined;
}

} // namespace scambait
