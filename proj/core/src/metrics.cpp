#include "scambait/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "scambait/errors.hpp"

namespace scambait {

using nlohmann::json;

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

bool was_contacted(const Conversation& c) {
    return std::any_of(c.messages().begin(), c.messages().end(),
                       [](const Message& m) { return m.direction == Direction::Outbound; });
}

bool has_inbound(const Conversation& c) {
    return std::any_of(c.messages().begin(), c.messages().end(),
                       [](const Message& m) { return m.direction == Direction::Inbound; });
}

} // namespace

std::chrono::seconds distraction_time(const Conversation& conversation,
                                      const StudyWindow& window) {
    std::optional<Instant> first, last;
    for (const Message& m : conversation.messages()) {
        if (m.direction != Direction::Inbound || !window.contains(m.timestamp)) continue;
        if (!first) first = m.timestamp;
        last = m.timestamp;
    }
    if (!first) throw NoInbound("conversation " + conversation.id() + " has no inbound in window");
    return *last - *first;
}

StrategyReport aggregate(std::span<const Conversation* const> valid,
                         const std::string& strategy_id, const StudyWindow& window) {
    StrategyReport report;
    report.strategy_id = strategy_id;

    std::vector<std::size_t> replies;
    std::vector<double> distractions;
    for (const Conversation* c : valid) {
        if (c->strategy_id() != strategy_id) continue;
        replies.push_back(c->inbound_count());
        distractions.push_back(
            std::chrono::duration<double, std::ratio<86400>>(distraction_time(*c, window))
                .count());
    }
    report.conversations = replies.size();
    if (replies.empty()) return report;

    std::sort(replies.begin(), replies.end());
    for (std::size_t r : replies) report.total_replies += r;
    report.replies_mean = static_cast<double>(report.total_replies) /
                          static_cast<double>(replies.size());
    report.replies_median = replies[(replies.size() - 1) / 2];
    report.replies_max = replies.back();

    double total = 0.0;
    for (double d : distractions) {
        total += d;
        report.distraction_max_days = std::max(report.distraction_max_days, d);
    }
    report.distraction_mean_days = total / static_cast<double>(distractions.size());
    return report;
}

double response_rate(const ConversationStore& store) {
    std::size_t contacted = 0;
    std::size_t answered = 0;
    for (const Conversation* c : store.all()) {
        if (!was_contacted(*c)) continue;
        ++contacted;
        if (has_inbound(*c)) ++answered;
    }
    if (contacted == 0) throw NothingContacted("no contacted addresses in store");
    return static_cast<double>(answered) / static_cast<double>(contacted);
}

std::vector<StrategyReport> build_reports(const ConversationStore& store,
                                          std::span<const std::string> strategy_ids,
                                          const StudyWindow& window) {
    const std::vector<const Conversation*> valid = valid_conversations(store);

    std::vector<StrategyReport> reports;
    for (const std::string& id : strategy_ids) {
        StrategyReport report = aggregate(valid, id, window);
        std::size_t contacted = 0, answered = 0;
        for (const Conversation* c : store.all()) {
            if (c->strategy_id() != id || !was_contacted(*c)) continue;
            ++contacted;
            if (has_inbound(*c)) ++answered;
        }
        report.response_rate =
            contacted == 0 ? 0.0
                           : static_cast<double>(answered) / static_cast<double>(contacted);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string render_table(std::span<const StrategyReport> reports) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %8s %6s %6s %12s %12s\n", "strategy", "mean",
                  "med", "max", "mean time", "max time");
    out += line;
    out += std::string(70, '-') + "\n";
    for (const StrategyReport& r : reports) {
        std::snprintf(line, sizeof line, "%-22s %8s %6zu %6zu %10s d %10s d\n",
                      r.strategy_id.c_str(), fixed(r.replies_mean, 2).c_str(), r.replies_median,
                      r.replies_max, fixed(r.distraction_mean_days, 1).c_str(),
                      fixed(r.distraction_max_days, 1).c_str());
        out += line;
    }
    return out;
}

std::string render_csv(std::span<const StrategyReport> reports) {
    std::string out = "strategy,replies_mean,replies_median,replies_max,time_mean_days,time_max_days\n";
    for (const StrategyReport& r : reports) {
        out += r.strategy_id + "," + fixed(r.replies_mean, 2) + "," +
               std::to_string(r.replies_median) + "," + std::to_string(r.replies_max) + "," +
               fixed(r.distraction_mean_days, 1) + "," + fixed(r.distraction_max_days, 1) + "\n";
    }
    return out;
}

std::string render_baseline_csv(const BaselineRow& baseline,
                                std::span<const StrategyReport> reports) {
    std::string out = "study,mean_replies,max_replies,max_time_days\n";
    out += baseline.label + "," + fixed(baseline.mean_replies, 2) + "," +
           std::to_string(baseline.max_replies) + "," + fixed(baseline.max_time_days, 1) + "\n";
    for (const StrategyReport& r : reports) {
        if (!baseline.compare_strategy_id.empty() && r.strategy_id != baseline.compare_strategy_id)
            continue;
        out += "this study (" + r.strategy_id + ")," + fixed(r.replies_mean, 2) + "," +
               std::to_string(r.replies_max) + "," + fixed(r.distraction_max_days, 1) + "\n";
    }
    return out;
}

std::string render_counts_csv(std::span<const StrategyReport> reports) {
    std::string out = "strategy,conversations,replies\n";
    for (const StrategyReport& r : reports)
        out += r.strategy_id + "," + std::to_string(r.conversations) + "," +
               std::to_string(r.total_replies) + "\n";
    return out;
}

std::string render_json(std::span<const StrategyReport> reports, const BaselineRow& baseline) {
    json j;
    j["strategies"] = json::array();
    for (const StrategyReport& r : reports) {
        json row;
        row["strategy"] = r.strategy_id;
        row["conversations"] = r.conversations;
        row["total_replies"] = r.total_replies;
        row["replies_mean"] = r.replies_mean;
        row["replies_median"] = r.replies_median;
        row["replies_max"] = r.replies_max;
        row["distraction_mean_days"] = r.distraction_mean_days;
        row["distraction_max_days"] = r.distraction_max_days;
        row["response_rate"] = r.response_rate;
        j["strategies"].push_back(std::move(row));
    }
    j["baseline"] = {{"label", baseline.label},
                     {"mean_replies", baseline.mean_replies},
                     {"max_replies", baseline.max_replies},
                     {"max_time_days", baseline.max_time_days}};
    return j.dump(2);
}

} // namespace scambait
