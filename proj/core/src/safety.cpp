#include "scambait/safety.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "scambait/classifier.hpp"

namespace scambait {

namespace {

bool is_sep(char c) {
    return c == ' ' || c == '-' || c == '.' || c == '(' || c == ')' || c == '/';
}

struct Span {
    std::size_t begin, end;
};

bool overlaps(const Span& a, const Span& b) {
    return a.begin < b.end && b.begin < a.end;
}

std::string strip_punct(std::string_view token) {
    while (!token.empty() && !std::isalnum(static_cast<unsigned char>(token.back())))
        token.remove_suffix(1);
    std::string out(token);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// "123 Main Street" — a short digit token followed within three tokens by a
// street word.
void find_street_addresses(std::string_view text, const PIIConfig& config,
                           std::vector<std::pair<Span, PIIFinding>>& findings) {
    struct Token {
        std::size_t begin, end;
    };
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t begin = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > begin) tokens.push_back({begin, i});
    }

    for (std::size_t t = 0; t < tokens.size(); ++t) {
        std::string_view tok = text.substr(tokens[t].begin, tokens[t].end - tokens[t].begin);
        if (tok.empty() || tok.size() > 6) continue;
        if (!std::all_of(tok.begin(), tok.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            continue;
        for (std::size_t ahead = 1; ahead <= 3 && t + ahead < tokens.size(); ++ahead) {
            const std::string word = strip_punct(
                text.substr(tokens[t + ahead].begin, tokens[t + ahead].end - tokens[t + ahead].begin));
            if (std::find(config.street_words.begin(), config.street_words.end(), word) !=
                config.street_words.end()) {
                Span span{tokens[t].begin, tokens[t + ahead].end};
                findings.push_back(
                    {span,
                     PIIFinding{PIIFinding::Kind::StreetAddress,
                                std::string(text.substr(span.begin, span.end - span.begin))}});
                break;
            }
        }
    }
}

bool ssn_shaped(std::string_view run) {
    // ddd[- ]dd[- ]dddd
    if (run.size() != 11) return false;
    for (std::size_t i : {3u, 6u})
        if (run[i] != '-' && run[i] != ' ') return false;
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (i == 3 || i == 6) continue;
        if (!std::isdigit(static_cast<unsigned char>(run[i]))) return false;
    }
    return true;
}

void find_digit_runs(std::string_view text, const PIIConfig& config,
                     std::vector<std::pair<Span, PIIFinding>>& findings) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])) && text[i] != '+') {
            ++i;
            continue;
        }
        // extend a run of digits and separators; trim trailing separators
        std::size_t begin = i;
        std::size_t end = i;
        std::size_t last_digit = std::string_view::npos;
        while (end < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[end])) || is_sep(text[end]) ||
                (end == begin && text[end] == '+'))) {
            if (std::isdigit(static_cast<unsigned char>(text[end]))) last_digit = end;
            ++end;
        }
        if (last_digit == std::string_view::npos) {
            i = end;
            continue;
        }
        end = last_digit + 1;
        std::string_view run = text.substr(begin, end - begin);

        std::size_t digits = 0;
        std::size_t consecutive = 0, best_consecutive = 0;
        bool separated = false;
        for (char c : run) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++digits;
                best_consecutive = std::max(best_consecutive, ++consecutive);
            } else {
                if (consecutive > 0 && digits > 0) separated = true;
                consecutive = 0;
            }
        }

        std::optional<PIIFinding::Kind> kind;
        if (ssn_shaped(run)) {
            kind = PIIFinding::Kind::GovernmentId;
        } else if (best_consecutive >= config.min_account_digits) {
            kind = PIIFinding::Kind::Account;
        } else if (digits >= config.min_phone_digits && separated) {
            kind = PIIFinding::Kind::Phone;
        }
        if (kind)
            findings.push_back({Span{begin, end}, PIIFinding{*kind, std::string(run)}});
        i = end;
    }
}

// "AB1234567" — passport-like letter prefix plus a long digit tail
void find_id_codes(std::string_view text, std::vector<std::pair<Span, PIIFinding>>& findings) {
    std::size_t i = 0;
    while (i + 8 <= text.size()) {
        const bool two_letters = std::isupper(static_cast<unsigned char>(text[i])) &&
                                 std::isupper(static_cast<unsigned char>(text[i + 1]));
        if (!two_letters || (i > 0 && std::isalnum(static_cast<unsigned char>(text[i - 1])))) {
            ++i;
            continue;
        }
        std::size_t j = i + 2;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        const std::size_t digit_count = j - (i + 2);
        if (digit_count >= 6 && digit_count <= 9 &&
            (j == text.size() || !std::isalnum(static_cast<unsigned char>(text[j])))) {
            findings.push_back({Span{i, j}, PIIFinding{PIIFinding::Kind::GovernmentId,
                                                       std::string(text.substr(i, j - i))}});
            i = j;
        } else {
            ++i;
        }
    }
}

} // namespace

std::vector<PIIFinding> detect_pii(std::string_view text, const PIIConfig& config) {
    std::vector<std::pair<Span, PIIFinding>> candidates;
    find_street_addresses(text, config, candidates);
    find_id_codes(text, candidates);
    find_digit_runs(text, config, candidates);

    // keep earlier (and for ties, earlier-detected) findings; drop overlaps
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first.begin < b.first.begin; });
    std::vector<PIIFinding> out;
    std::vector<Span> taken;
    for (auto& [span, finding] : candidates) {
        const bool clash = std::any_of(taken.begin(), taken.end(),
                                       [&](const Span& s) { return overlaps(s, span); });
        if (clash) continue;
        taken.push_back(span);
        out.push_back(std::move(finding));
    }
    return out;
}

SafetyVerdict screen(std::string_view candidate_text, const SafetyPolicy& policy) {
    std::string evidence;
    for (const std::string& phrase : policy.self_reveal_lexicon)
        if (contains_phrase(candidate_text, phrase, &evidence))
            return {VerdictKind::SelfReveal, evidence, {}};
    for (const std::string& phrase : policy.callout_lexicon)
        if (contains_phrase(candidate_text, phrase, &evidence))
            return {VerdictKind::CallOut, evidence, {}};

    std::vector<PIIFinding> findings = detect_pii(candidate_text, policy.pii);
    if (!findings.empty()) {
        if (policy.allow_fake_pii) return {VerdictKind::Pass, "", std::move(findings)};
        return {VerdictKind::PIILeak, findings.front().span, std::move(findings)};
    }
    return {};
}

std::variant<SelectedReply, AllRejected> select_reply(std::span<const Candidate> candidates,
                                                      const SafetyPolicy& policy) {
    std::vector<SafetyVerdict> verdicts;
    verdicts.reserve(candidates.size());
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        verdicts.push_back(screen(candidates[i].text, policy));
        const bool selectable =
            !candidates[i].truncated && !candidates[i].text.empty() &&
            verdicts.back().kind == VerdictKind::Pass;
        if (selectable && !chosen) chosen = i;
    }
    if (!chosen) return AllRejected{std::move(verdicts)};
    return SelectedReply{candidates[*chosen].text, *chosen, std::move(verdicts)};
}

std::string_view to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Pass: return "pass";
    case VerdictKind::CallOut: return "call_out";
    case VerdictKind::SelfReveal: return "self_reveal";
    case VerdictKind::PIILeak: return "pii_leak";
    }
    return "pass";
}

std::string_view to_string(PIIFinding::Kind k) {
    switch (k) {
    case PIIFinding::Kind::Phone: return "phone";
    case PIIFinding::Kind::Account: return "account";
    case PIIFinding::Kind::StreetAddress: return "street_address";
    case PIIFinding::Kind::GovernmentId: return "government_id";
    }
    return "phone";
}

} // namespace scambait
