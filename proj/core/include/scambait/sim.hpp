#pragma once

#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scambait/clock.hpp"
#include "scambait/engine.hpp"
#include "scambait/ingestion.hpp"
#include "scambait/loopback.hpp"
#include "scambait/mock_completion.hpp"

namespace scambait {

// Scripted scammer-side behaviours reproducing the field-observed patterns:
// steady repliers, silent addresses, autoresponders, bot-probing
// authenticators, senders whose mail arrives twice, dead addresses and
// senders of over-budget walls of text.
enum class PersonaBehavior {
    Persistent,              // replies param rounds, then goes silent
    Ghost,                   // never replies
    Autoresponder,           // same body every time
    SuspiciousAuthenticator, // at round param demands its first email back
    AnnoyedThenPersist,      // irritation at round param, keeps going
    DuplicateSender,         // every reply delivered twice within the window
    InvalidAddress,          // bounces before anything is delivered
    LongMailer,              // first reply body of param characters
};

struct PersonaSpec {
    PersonaBehavior behavior = PersonaBehavior::Persistent;
    int param = 0;
    std::size_t count = 1;
    std::chrono::seconds reply_delay{7200};
};

struct ScenarioConfig {
    std::uint64_t seed = 0;
    Instant start = instant_from_unix(1704672000); // 2024-01-08T00:00:00Z
    std::chrono::seconds clock_step{3600};
    int study_days = 28;
    int extra_days = 0; // inbox stays active, outbound stops
    std::vector<std::string> strategy_ids;
    TokenBudget budget;
    std::vector<PersonaSpec> personas;

    static ScenarioConfig from_json_file(const std::filesystem::path& file);
    static ScenarioConfig from_json_text(const std::string& text);
};

// One scripted correspondent. Pure: the action taken is a function of
// (internal round counter, inbound mail, seed).
class Persona {
public:
    Persona(PersonaBehavior behavior, int param, std::size_t index, std::uint64_t seed,
            std::chrono::seconds reply_delay);

    struct Action {
        enum class Kind { Reply, Silence, Terminate };
        Kind kind = Kind::Silence;
        std::string subject;
        std::string body;
        bool duplicate_delivery = false;
    };

    Action step(const OutboundMail& received);

    const EmailAddress& address() const { return address_; }
    ScamSolicitation solicitation() const;
    PersonaBehavior behavior() const { return behavior_; }
    std::chrono::seconds reply_delay() const { return reply_delay_; }
    bool terminated() const { return terminated_; }
    int rounds_received() const { return rounds_received_; }

private:
    std::string scripted_reply(int round);

    PersonaBehavior behavior_;
    int param_;
    std::size_t index_;
    EmailAddress address_;
    std::chrono::seconds reply_delay_;
    SplitMix64 rng_;
    std::string solicitation_subject_;
    std::string solicitation_body_;
    std::string fixed_body_; // autoresponder
    int rounds_received_ = 0;
    bool terminated_ = false;
};

struct ScenarioResult {
    std::string transcript;
    std::string report_csv;
    std::string counts_csv;
    RunManifest manifest;
    std::filesystem::path store_dir;
};

// Drives the full pipeline (ingest -> assign -> reply loop) under a simulated
// clock; the transcript, store and reports are a deterministic function of
// the scenario config. Throws ScenarioInvalid on malformed configs.
class ScenarioRunner {
public:
    ScenarioRunner(ScenarioConfig config, std::filesystem::path workdir);

    ScenarioResult run();

    // engine access for test instrumentation (valid during run())
    MockCompletionClient& completion() { return completion_; }
    LoopbackTransport& loopback() { return loopback_; }

private:
    struct ScheduledDelivery {
        Instant due;
        std::uint64_t seq;
        EmailAddress from;
        std::string subject;
        std::string body;
        std::string in_reply_to;
    };

    ScenarioConfig config_;
    std::filesystem::path workdir_;
    SimClock clock_;
    LoopbackTransport loopback_;
    MockCompletionClient completion_;
};

std::string_view to_string(PersonaBehavior b);
std::optional<PersonaBehavior> persona_behavior_from_string(std::string_view s);

} // namespace scambait
