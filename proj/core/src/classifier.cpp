#include "scambait/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "scambait/errors.hpp"

namespace scambait {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// occurrences of `needle` in `haystack` (both already lower-cased) with word
// boundaries at both ends; multi-word phrases keep internal spacing literal
std::size_t count_bounded(const std::string& haystack, const std::string& needle,
                          std::size_t* first_pos = nullptr) {
    if (needle.empty()) return 0;
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !word_char(haystack[pos - 1]) || !word_char(needle.front());
        const std::size_t end = pos + needle.size();
        const bool right_ok =
            end == haystack.size() || !word_char(haystack[end]) || !word_char(needle.back());
        if (left_ok && right_ok) {
            if (count == 0 && first_pos) *first_pos = pos;
            ++count;
        }
        pos += 1;
    }
    return count;
}

} // namespace

bool contains_phrase(std::string_view text, std::string_view phrase, std::string* matched) {
    const std::string haystack = lower(text);
    const std::string needle = lower(phrase);
    std::size_t pos = 0;
    if (count_bounded(haystack, needle, &pos) == 0) return false;
    if (matched) *matched = std::string(text.substr(pos, phrase.size()));
    return true;
}

std::size_t count_phrase(std::string_view text, std::string_view phrase) {
    return count_bounded(lower(text), lower(phrase));
}

KeywordClassifier::KeywordClassifier(std::vector<CategoryLexicon> lexicons,
                                     std::string fallback_category)
    : lexicons_(std::move(lexicons)), fallback_(std::move(fallback_category)) {
    if (lexicons_.empty()) throw ConfigInvalid("classifier needs at least one category");
    const bool fallback_known =
        std::any_of(lexicons_.begin(), lexicons_.end(),
                    [&](const CategoryLexicon& l) { return l.category == fallback_; });
    if (!fallback_known)
        throw ConfigInvalid("fallback category '" + fallback_ + "' is not a configured category");
}

std::string KeywordClassifier::classify(std::string_view text) const {
    if (text.empty()) throw EmptyText("cannot classify empty text");
    const std::string haystack = lower(text);

    std::string best = fallback_;
    std::size_t best_score = 0;
    for (const CategoryLexicon& lexicon : lexicons_) {
        std::size_t score = 0;
        for (const std::string& phrase : lexicon.phrases)
            score += count_bounded(haystack, lower(phrase));
        if (score > best_score) {
            best_score = score;
            best = lexicon.category;
        }
    }
    return best;
}

std::vector<std::string> KeywordClassifier::categories() const {
    std::vector<std::string> out;
    out.reserve(lexicons_.size());
    for (const CategoryLexicon& l : lexicons_) out.push_back(l.category);
    return out;
}

std::string pick_template(const std::string& category, const TemplateBank& bank,
                          SplitMix64& rng, const std::optional<std::string>& previous) {
    const auto it = bank.templates.find(category);
    if (it == bank.templates.end() || it->second.empty())
        throw UnknownCategory("no templates for category '" + category + "'");
    const std::vector<std::string>& options = it->second;
    if (options.size() == 1) return options.front();

    if (previous) {
        std::vector<const std::string*> fresh;
        for (const std::string& t : options)
            if (t != *previous) fresh.push_back(&t);
        if (!fresh.empty()) return *fresh[rng.below(fresh.size())];
    }
    return options[rng.below(options.size())];
}

} // namespace scambait
