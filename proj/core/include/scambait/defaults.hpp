#pragma once

#include <vector>

#include "scambait/analysis.hpp"
#include "scambait/classifier.hpp"
#include "scambait/metrics.hpp"
#include "scambait/safety.hpp"
#include "scambait/strategy.hpp"

namespace scambait::defaults {

// The three shipped reply strategies. The same definitions live in
// configs/strategies.json for operators who want to edit them without a
// rebuild; these are the built-in fallbacks and what the tests pin.
std::vector<StrategyConfig> strategies();
StrategyConfig zero_shot_strategy();
StrategyConfig few_shot_strategy();
StrategyConfig classifier_template_strategy();

std::vector<CategoryLexicon> classifier_lexicons();
inline constexpr const char* kClassifierFallback = "advance_fee";
KeywordClassifier classifier();
TemplateBank template_bank();
SafetyPolicy safety_policy();
BaselineRow baseline();

inline constexpr std::size_t kCandidates = 3;

} // namespace scambait::defaults
