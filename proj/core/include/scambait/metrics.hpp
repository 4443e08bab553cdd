#pragma once

#include <chrono>
#include <span>
#include <string>
#include <vector>

#include "scambait/analysis.hpp"
#include "scambait/conversation.hpp"
#include "scambait/store.hpp"

namespace scambait {

struct StudyWindow {
    Instant start{Instant::min()};
    Instant end{Instant::max()};

    bool contains(Instant t) const { return t >= start && t <= end; }
};

// Time between the first and last inbound message falling inside the window;
// zero for a single inbound. Throws NoInbound.
std::chrono::seconds distraction_time(const Conversation& conversation,
                                      const StudyWindow& window);

struct StrategyReport {
    std::string strategy_id;
    std::size_t conversations = 0;
    std::size_t total_replies = 0;
    double replies_mean = 0.0;
    std::size_t replies_median = 0; // lower middle for even-sized sets
    std::size_t replies_max = 0;
    double distraction_mean_days = 0.0;
    double distraction_max_days = 0.0;
    double response_rate = 0.0; // contacted addresses answering, pre-filtration
};

// Reply and distraction statistics over one strategy's valid conversations.
StrategyReport aggregate(std::span<const Conversation* const> valid,
                         const std::string& strategy_id, const StudyWindow& window);

// Fraction of contacted addresses with at least one inbound, before validity
// filtration. Throws NothingContacted.
double response_rate(const ConversationStore& store);

// Full per-strategy comparison: aggregates plus per-strategy response rates.
std::vector<StrategyReport> build_reports(const ConversationStore& store,
                                          std::span<const std::string> strategy_ids,
                                          const StudyWindow& window);

struct BaselineRow {
    std::string label = "baseline";
    double mean_replies = 0.0;
    std::size_t max_replies = 0;
    double max_time_days = 0.0;
    std::string compare_strategy_id;
};

// Text table with the replies mean/median/max and time mean/max columns.
std::string render_table(std::span<const StrategyReport> reports);
// Same comparison as CSV. Means print to two decimals, days to one.
std::string render_csv(std::span<const StrategyReport> reports);
// Baseline comparison rows (label,mean_replies,max_replies,max_time_days).
std::string render_baseline_csv(const BaselineRow& baseline,
                                std::span<const StrategyReport> reports);
// Conversation and reply counts per strategy.
std::string render_counts_csv(std::span<const StrategyReport> reports);
std::string render_json(std::span<const StrategyReport> reports, const BaselineRow& baseline);

} // namespace scambait
