#include "scambait/strategy.hpp"

#include "scambait/errors.hpp"

namespace scambait {

void validate(const StrategyConfig& config) {
    if (config.id.empty()) throw ConfigInvalid("strategy id must be non-empty");
    switch (config.kind) {
    case StrategyKind::ZeroShotPersona:
        if (!config.exemplars.empty())
            throw ConfigInvalid("zero-shot strategy '" + config.id + "' must have no exemplars");
        break;
    case StrategyKind::FewShotExemplar:
        if (config.exemplars.empty())
            throw ConfigInvalid("few-shot strategy '" + config.id + "' needs exemplar pairs");
        break;
    case StrategyKind::ClassifierTemplate:
        break; // preamble/exemplars/sampling are ignored
    }
    if (config.sampling.temperature < 0.0 || config.sampling.temperature > 2.0)
        throw ConfigInvalid("temperature out of [0,2] in strategy '" + config.id + "'");
    if (config.sampling.top_p < 0.0 || config.sampling.top_p > 1.0)
        throw ConfigInvalid("top_p out of [0,1] in strategy '" + config.id + "'");
    if (config.candidates_k == 0)
        throw ConfigInvalid("candidates_k must be >= 1 in strategy '" + config.id + "'");
}

std::string build_prompt_for_body(const StrategyConfig& config, std::string_view target_body) {
    if (target_body.empty()) throw EmptyInbound("nothing to reply to");

    if (config.kind == StrategyKind::ZeroShotPersona) {
        std::string prompt = config.preamble;
        prompt += "\n\n";
        prompt += target_body;
        return prompt;
    }

    // few-shot: exemplars verbatim, in configured order
    std::string prompt = config.preamble;
    prompt += "\n\n";
    for (const ExemplarPair& pair : config.exemplars) {
        prompt += "Scammer email:\n";
        prompt += pair.scammer;
        prompt += "\n\nBaiter reply:\n";
        prompt += pair.baiter;
        prompt += "\n\n";
    }
    prompt += "Scammer email:\n";
    prompt += target_body;
    prompt += "\n\nBaiter reply:\n";
    return prompt;
}

std::string build_prompt(const StrategyConfig& config, const Conversation& conversation,
                         std::string_view solicitation_body) {
    if (config.context_policy == ContextPolicy::LatestInboundOnly) {
        const Message* inbound = conversation.last_inbound();
        if (inbound) return build_prompt_for_body(config, inbound->body);
        if (!solicitation_body.empty()) return build_prompt_for_body(config, solicitation_body);
        throw EmptyInbound("conversation " + conversation.id() + " has no inbound message");
    }

    // FullHistory: the whole exchange as a labelled transcript
    std::string transcript;
    for (const Message& m : conversation.messages()) {
        transcript += m.direction == Direction::Inbound ? "Scammer email:\n" : "Baiter reply:\n";
        transcript += m.body;
        transcript += "\n\n";
    }
    if (transcript.empty()) {
        if (solicitation_body.empty())
            throw EmptyInbound("conversation " + conversation.id() + " has no history");
        return build_prompt_for_body(config, solicitation_body);
    }
    std::string prompt = config.preamble;
    prompt += "\n\n";
    prompt += transcript;
    prompt += "Baiter reply:\n";
    return prompt;
}

std::vector<Candidate> generate_reply(const StrategyConfig& config, std::string_view target_body,
                                      CompletionClient& client, std::uint64_t seed) {
    const std::string prompt = build_prompt_for_body(config, target_body);
    const TokenBudget& budget = client.budget();
    if (!budget.fits_prompt(estimate_tokens(prompt)))
        throw TooLongInboundError("prompt of " + std::to_string(estimate_tokens(prompt)) +
                                  " tokens exceeds allowance of " +
                                  std::to_string(budget.prompt_allowance()));

    CompletionRequest request;
    request.prompt = prompt;
    request.temperature = config.sampling.temperature;
    request.top_p = config.sampling.top_p;
    request.max_response_tokens = budget.response_reserve;
    request.n_candidates = config.candidates_k;
    request.seed = seed;
    return client.complete(request);
}

std::string template_reply(const TemplateStrategy& strategy, std::string_view inbound_body,
                           SplitMix64& rng, const std::optional<std::string>& previous_reply) {
    const std::string category = strategy.classifier.classify(inbound_body);
    return pick_template(category, strategy.bank, rng, previous_reply);
}

std::string_view to_string(StrategyKind k) {
    switch (k) {
    case StrategyKind::ZeroShotPersona: return "zero_shot_persona";
    case StrategyKind::FewShotExemplar: return "few_shot_exemplar";
    case StrategyKind::ClassifierTemplate: return "classifier_template";
    }
    return "zero_shot_persona";
}

std::string_view to_string(ContextPolicy p) {
    return p == ContextPolicy::LatestInboundOnly ? "latest_inbound_only" : "full_history";
}

std::optional<StrategyKind> strategy_kind_from_string(std::string_view s) {
    if (s == "zero_shot_persona") return StrategyKind::ZeroShotPersona;
    if (s == "few_shot_exemplar") return StrategyKind::FewShotExemplar;
    if (s == "classifier_template") return StrategyKind::ClassifierTemplate;
    return std::nullopt;
}

std::optional<ContextPolicy> context_policy_from_string(std::string_view s) {
    if (s == "latest_inbound_only") return ContextPolicy::LatestInboundOnly;
    if (s == "full_history") return ContextPolicy::FullHistory;
    return std::nullopt;
}

} // namespace scambait
