#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scambait/completion.hpp"

namespace scambait {

struct PIIFinding {
    enum class Kind { Phone, Account, StreetAddress, GovernmentId };
    Kind kind;
    std::string span;
};

struct PIIConfig {
    std::size_t min_phone_digits = 7;   // digits with separators
    std::size_t min_account_digits = 8; // consecutive digits
    std::vector<std::string> street_words;
};

struct SafetyPolicy {
    std::vector<std::string> callout_lexicon;
    std::vector<std::string> self_reveal_lexicon;
    PIIConfig pii;
    // the paper-observed upside of fake details: scammers wasting time
    // verifying them; off by default
    bool allow_fake_pii = false;
};

enum class VerdictKind { Pass, CallOut, SelfReveal, PIILeak };

struct SafetyVerdict {
    VerdictKind kind = VerdictKind::Pass;
    std::string matched_pattern;        // evidence span; empty for Pass
    std::vector<PIIFinding> warnings;   // pii downgraded by allow_fake_pii
};

// All non-overlapping findings, scanned left to right. Street addresses are
// detected first, then digit runs (government-id shape, account, phone).
std::vector<PIIFinding> detect_pii(std::string_view text, const PIIConfig& config);

// Pure function of (text, policy). Precedence when several categories match:
// SelfReveal > CallOut > PIILeak — self-reveal is the most conversation-fatal.
SafetyVerdict screen(std::string_view candidate_text, const SafetyPolicy& policy);

struct SelectedReply {
    std::string text;
    std::size_t index = 0;
    std::vector<SafetyVerdict> verdicts; // one per candidate, retained for audit
};

struct AllRejected {
    std::vector<SafetyVerdict> verdicts;
};

// First Pass candidate in generation order. Truncated and empty candidates
// are never selected. The caller owns the fallback chain (one regeneration
// round, then a classifier-template reply).
std::variant<SelectedReply, AllRejected> select_reply(std::span<const Candidate> candidates,
                                                      const SafetyPolicy& policy);

std::string_view to_string(VerdictKind k);
std::string_view to_string(PIIFinding::Kind k);

} // namespace scambait
