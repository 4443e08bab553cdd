#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "scambait/analysis.hpp"
#include "scambait/clock.hpp"
#include "scambait/completion.hpp"
#include "scambait/defaults.hpp"
#include "scambait/ingestion.hpp"
#include "scambait/safety.hpp"
#include "scambait/store.hpp"
#include "scambait/strategy.hpp"
#include "scambait/transport.hpp"

namespace scambait {

struct EngineConfig {
    EmailAddress self_address = email("baiter@baitbox.example");
    std::vector<StrategyConfig> strategies = defaults::strategies();
    // classifier-template machinery, also the safety fallback
    TemplateStrategy control = {defaults::classifier(), defaults::template_bank()};
    SafetyPolicy safety = defaults::safety_policy();
    AnalysisConfig analysis;
    std::size_t workers = 1;
    bool split_and_summarize = false;
    std::uint64_t seed = 0;
};

struct RunManifest {
    std::string run_id;
    std::string mode = "sim";
    std::uint64_t seed = 0;
    std::string started_at;
    std::string until;
    std::uint64_t config_fingerprint = 0;

    std::size_t contacted = 0;
    std::size_t bounced = 0;
    std::size_t inbound_recorded = 0;
    std::size_t outbound_sent = 0;
    std::size_t fallback_used = 0;
    std::size_t terminated_too_long = 0;
    std::size_t terminated_study_end = 0;
    std::size_t unknown_sender = 0;
    std::size_t duplicates_collapsed = 0;
    std::size_t completion_retries = 0;
    std::map<std::string, std::size_t> contacts_per_strategy;

    std::string to_json() const;
};

// The reply loop: poll inbound, thread to conversations, collapse duplicate
// deliveries, generate -> screen -> send, with per-conversation error
// isolation. Outbound stops at `until`; inbound is still recorded afterwards.
class Engine {
public:
    Engine(EngineConfig config, ConversationStore& store, ContactQueue& queue,
           Transport& transport, CompletionClient& client, Clock& clock);

    // Batch-assigns pending queue entries to strategies. Returns how many.
    std::size_t assign_pending(std::uint64_t seed);

    // First contact for assigned entries; no-op after `until`.
    void contact_pending(Instant until);

    // One poll -> analyze -> reply iteration.
    void poll_cycle(Instant until);

    // Live loop: cycles every poll_interval until the clock passes stop_at.
    RunManifest run(Instant until, std::chrono::seconds poll_interval, Instant stop_at);

    // StudyEnd-terminates contacted conversations once the clock passes
    // `until` (idempotent; uncontacted conversations are left alone).
    void finish_study_if_due(Instant until);

    const RunManifest& manifest() const { return manifest_; }

    // transcript/observability hook; lines are emitted in processing order
    std::function<void(const std::string&)> event_sink;
    // test-only crash injection; points: contact_mark, contact_send, mark,
    // send, append
    std::function<void(const char*)> crash_hook;

private:
    void emit(const std::string& line);
    void bump(std::size_t& counter);
    void checkpoint(const char* point);
    bool needs_reply(const Conversation& conversation) const;
    const StrategyConfig* strategy_for(const Conversation& conversation) const;
    void record_inbound(const InboundMail& mail);
    void handle_reply(Conversation& conversation);
    // the candidate -> screen -> regenerate -> template fallback chain
    std::string produce_reply(const StrategyConfig& strategy, const Conversation& conversation,
                              std::string_view target_body, std::uint64_t reply_seed);

    EngineConfig config_;
    std::map<std::string, StrategyConfig> strategies_;
    ConversationStore& store_;
    ContactQueue& queue_;
    Transport& transport_;
    CompletionClient& client_;
    Clock& clock_;
    RunManifest manifest_;
    bool study_finished_ = false;
    mutable std::mutex mutex_; // guards manifest counters and event emission
};

} // namespace scambait
