#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scambait/email_address.hpp"
#include "scambait/message.hpp"

namespace scambait {

enum class TerminationReason { Bounce, TooLongInbound, StudyEnd, ManualStop };

enum class AnalysisFlag {
    PotentialAutoresponder,
    RestoredAfterReview,
    DuplicateDeliveryCollapsed,
    UnknownSenderExcluded,
};

struct ConversationState {
    enum class Phase { Created, Contacted, Engaged, Terminated };
    Phase phase = Phase::Created;
    std::optional<TerminationReason> reason;

    bool operator==(const ConversationState&) const = default;
    bool terminated() const { return phase == Phase::Terminated; }
};

// Message log plus lifecycle state. Legal transitions:
//   Created -> Contacted -> Engaged -> Terminated
//   Created -> Terminated(Bounce), Contacted -> Terminated
// Inbound mail on a Terminated conversation is still recorded; outbound is not.
class Conversation {
public:
    Conversation(std::string id, EmailAddress scammer_address, std::string strategy_id,
                 Instant created_at);

    // Appends and advances state: first outbound -> Contacted, inbound on a
    // contacted conversation -> Engaged. Throws AppendToTerminated for
    // outbound on a terminated conversation. Timestamps earlier than the log
    // tail are clamped to it so the log stays time-ordered.
    void append(Message message);

    void terminate(TerminationReason reason);

    // Inbound message count with duplicate deliveries (identical normalized
    // body within the window of the last kept inbound) counted once.
    std::size_t inbound_count(
        std::chrono::seconds duplicate_window = std::chrono::seconds{300}) const;

    // Removes the given message ids from the log (duplicate-delivery
    // collapsing). State is not recomputed.
    std::size_t drop_messages(std::span<const std::string> ids);

    void add_flag(AnalysisFlag flag) { flags_.insert(flag); }
    bool has_flag(AnalysisFlag flag) const { return flags_.count(flag) > 0; }

    const std::string& id() const { return id_; }
    const EmailAddress& scammer_address() const { return scammer_address_; }
    const std::string& strategy_id() const { return strategy_id_; }
    const ConversationState& state() const { return state_; }
    const std::vector<Message>& messages() const { return messages_; }
    const std::set<AnalysisFlag>& flags() const { return flags_; }
    Instant created_at() const { return created_at_; }

    const Message* last_inbound() const;
    const Message* last_outbound() const;
    std::string next_message_id() const;

    // Used by the store when rehydrating persisted documents; bypasses the
    // state machine.
    static Conversation restore(std::string id, EmailAddress scammer_address,
                                std::string strategy_id, ConversationState state,
                                std::set<AnalysisFlag> flags, std::vector<Message> messages);

private:
    std::string id_;
    EmailAddress scammer_address_;
    std::string strategy_id_;
    Instant created_at_;
    ConversationState state_;
    std::set<AnalysisFlag> flags_;
    std::vector<Message> messages_;
};

std::string_view to_string(Direction d);
std::string_view to_string(ConversationState::Phase p);
std::string_view to_string(TerminationReason r);
std::string_view to_string(AnalysisFlag f);
std::optional<Direction> direction_from_string(std::string_view s);
std::optional<ConversationState::Phase> phase_from_string(std::string_view s);
std::optional<TerminationReason> termination_reason_from_string(std::string_view s);
std::optional<AnalysisFlag> analysis_flag_from_string(std::string_view s);

} // namespace scambait
