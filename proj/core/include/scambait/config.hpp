#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scambait/analysis.hpp"
#include "scambait/classifier.hpp"
#include "scambait/completion.hpp"
#include "scambait/http_completion.hpp"
#include "scambait/metrics.hpp"
#include "scambait/safety.hpp"
#include "scambait/strategy.hpp"

namespace scambait {

// Everything the CLI assembles a run from. Each section has built-in
// defaults; a config document overrides what it names and may pull the big
// sections from sibling files (strategies_file, templates_file, ...).
struct AppConfig {
    std::filesystem::path store_dir = "store";
    std::string self_address = "baiter@baitbox.example";

    enum class TransportKind { Maildir, Loopback };
    TransportKind transport_kind = TransportKind::Maildir;
    std::filesystem::path maildir_root = "mail";

    enum class CompletionKind { Mock, Http };
    CompletionKind completion_kind = CompletionKind::Mock;
    TokenBudget budget;
    std::uint64_t mock_seed = 0;
    HttpCompletionConfig http;

    std::vector<StrategyConfig> strategies;
    std::vector<CategoryLexicon> classifier_lexicons;
    std::string classifier_fallback;
    TemplateBank bank;
    SafetyPolicy safety;
    AnalysisConfig analysis;
    BaselineRow baseline;

    std::size_t workers = 1;
    std::chrono::seconds poll_interval{60};
    bool split_and_summarize = false;

    static AppConfig defaults();
    // Throws ConfigInvalid with a field-level diagnostic.
    static AppConfig load(const std::filesystem::path& file);
};

std::vector<StrategyConfig> load_strategies(const std::filesystem::path& file);
TemplateBank load_template_bank(const std::filesystem::path& file);
SafetyPolicy load_safety_policy(const std::filesystem::path& file);
void load_classifier_config(const std::filesystem::path& file,
                            std::vector<CategoryLexicon>& lexicons, std::string& fallback);
BaselineRow load_baseline(const std::filesystem::path& file);

} // namespace scambait
