#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/rng.hpp"

namespace scambait {

// Desk-scale fraud-category classifier: weighted keyword hits per category,
// argmax, configurable fallback for texts with no lexicon hits. Sits behind
// the same interface a transformer classifier would implement.
struct CategoryLexicon {
    std::string category;
    std::vector<std::string> phrases;
};

class KeywordClassifier {
public:
    KeywordClassifier(std::vector<CategoryLexicon> lexicons, std::string fallback_category);

    // Throws EmptyText. Deterministic: ties resolve to the earliest
    // configured category.
    std::string classify(std::string_view text) const;

    std::vector<std::string> categories() const;

private:
    std::vector<CategoryLexicon> lexicons_;
    std::string fallback_;
};

struct TemplateBank {
    // category -> complete reply emails (greeting + body)
    std::map<std::string, std::vector<std::string>> templates;
};

// Uniform draw over the category's templates, avoiding the previous template
// used in the same conversation when the category has at least two. Throws
// UnknownCategory.
std::string pick_template(const std::string& category, const TemplateBank& bank,
                          SplitMix64& rng,
                          const std::optional<std::string>& previous = std::nullopt);

// Case-insensitive phrase matching with word boundaries on single words;
// shared by the classifier and the safety lexicons.
bool contains_phrase(std::string_view text, std::string_view phrase, std::string* matched = nullptr);
std::size_t count_phrase(std::string_view text, std::string_view phrase);

} // namespace scambait
