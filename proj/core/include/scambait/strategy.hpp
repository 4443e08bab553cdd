#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/classifier.hpp"
#include "scambait/completion.hpp"
#include "scambait/conversation.hpp"

namespace scambait {

enum class StrategyKind { ZeroShotPersona, FewShotExemplar, ClassifierTemplate };

enum class ContextPolicy { LatestInboundOnly, FullHistory };

struct ExemplarPair {
    std::string scammer;
    std::string baiter;
};

struct SamplingParams {
    double temperature = 0.2;
    double top_p = 0.2;
};

struct StrategyConfig {
    std::string id;
    StrategyKind kind = StrategyKind::ZeroShotPersona;
    std::string preamble;
    std::vector<ExemplarPair> exemplars;
    SamplingParams sampling;
    ContextPolicy context_policy = ContextPolicy::LatestInboundOnly;
    std::size_t candidates_k = 3;
};

// Kind-specific invariants (exemplar presence, sampling ranges). Throws
// ConfigInvalid.
void validate(const StrategyConfig& config);

// Prompt layout is fixed:
//   zero-shot:  <preamble>\n\n<target body>
//   few-shot:   <preamble>\n\n then per exemplar
//               "Scammer email:\n...\n\nBaiter reply:\n...\n\n",
//               then "Scammer email:\n<target>\n\nBaiter reply:\n"
// Under LatestInboundOnly the target is the single message needing a reply;
// no earlier conversation text is ever included.
std::string build_prompt_for_body(const StrategyConfig& config, std::string_view target_body);

// Selects the target from the conversation per context policy. A fresh
// solicitation (no inbound yet) supplies its body explicitly. Throws
// EmptyInbound when there is nothing to reply to.
std::string build_prompt(const StrategyConfig& config, const Conversation& conversation,
                         std::string_view solicitation_body = {});

// Requests k candidates with the configured sampling. Throws
// TooLongInboundError before any dispatch when the prompt cannot fit the
// budget, and passes ServiceUnavailable through for the caller to retry.
std::vector<Candidate> generate_reply(const StrategyConfig& config, std::string_view target_body,
                                      CompletionClient& client, std::uint64_t seed);

// The control strategy's machinery (also the safety fallback).
struct TemplateStrategy {
    KeywordClassifier classifier;
    TemplateBank bank;
};

std::string template_reply(const TemplateStrategy& strategy, std::string_view inbound_body,
                           SplitMix64& rng, const std::optional<std::string>& previous_reply);

std::string_view to_string(StrategyKind k);
std::string_view to_string(ContextPolicy p);
std::optional<StrategyKind> strategy_kind_from_string(std::string_view s);
std::optional<ContextPolicy> context_policy_from_string(std::string_view s);

} // namespace scambait
