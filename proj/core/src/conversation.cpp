#include "scambait/conversation.hpp"

#include <algorithm>
#include <stdexcept>

#include "scambait/errors.hpp"
#include "scambait/textnorm.hpp"

namespace scambait {

Conversation::Conversation(std::string id, EmailAddress scammer_address,
                           std::string strategy_id, Instant created_at)
    : id_(std::move(id)),
      scammer_address_(std::move(scammer_address)),
      strategy_id_(std::move(strategy_id)),
      created_at_(created_at) {}

void Conversation::append(Message message) {
    if (message.direction == Direction::Outbound) {
        if (state_.terminated())
            throw AppendToTerminated("outbound append to terminated conversation " + id_);
        if (message.body.empty())
            throw std::invalid_argument("outbound message body must be non-empty");
    }
    if (message.timestamp < created_at_) message.timestamp = created_at_;
    if (!messages_.empty() && message.timestamp < messages_.back().timestamp)
        message.timestamp = messages_.back().timestamp;

    messages_.push_back(std::move(message));

    const Direction dir = messages_.back().direction;
    switch (state_.phase) {
    case ConversationState::Phase::Created:
        if (dir == Direction::Outbound) state_.phase = ConversationState::Phase::Contacted;
        // inbound before contact (unknown senders) leaves the state as-is
        break;
    case ConversationState::Phase::Contacted:
        if (dir == Direction::Inbound) state_.phase = ConversationState::Phase::Engaged;
        break;
    case ConversationState::Phase::Engaged:
    case ConversationState::Phase::Terminated:
        break;
    }
}

void Conversation::terminate(TerminationReason reason) {
    if (state_.terminated())
        throw InvalidTransition("conversation " + id_ + " is already terminated");
    if (state_.phase == ConversationState::Phase::Created && reason != TerminationReason::Bounce)
        throw InvalidTransition("only Bounce may terminate an uncontacted conversation");
    state_.phase = ConversationState::Phase::Terminated;
    state_.reason = reason;
}

std::size_t Conversation::inbound_count(std::chrono::seconds duplicate_window) const {
    std::size_t count = 0;
    const Message* last_kept = nullptr;
    for (const Message& m : messages_) {
        if (m.direction != Direction::Inbound) continue;
        if (last_kept && is_duplicate_delivery(*last_kept, m, duplicate_window)) continue;
        ++count;
        last_kept = &m;
    }
    return count;
}

std::size_t Conversation::drop_messages(std::span<const std::string> ids) {
    const auto before = messages_.size();
    std::erase_if(messages_, [&](const Message& m) {
        return std::find(ids.begin(), ids.end(), m.id) != ids.end();
    });
    return before - messages_.size();
}

const Message* Conversation::last_inbound() const {
    for (auto it = messages_.rbegin(); it != messages_.rend(); ++it)
        if (it->direction == Direction::Inbound) return &*it;
    return nullptr;
}

const Message* Conversation::last_outbound() const {
    for (auto it = messages_.rbegin(); it != messages_.rend(); ++it)
        if (it->direction == Direction::Outbound) return &*it;
    return nullptr;
}

std::string Conversation::next_message_id() const {
    // ids are log-local and never reused after a collapse: derive from a
    // monotone counter, not the current size
    std::size_t max_seq = 0;
    for (const Message& m : messages_) {
        if (m.id.size() > 1 && m.id.front() == 'm') {
            std::size_t seq = 0;
            bool numeric = true;
            for (std::size_t i = 1; i < m.id.size(); ++i) {
                if (m.id[i] < '0' || m.id[i] > '9') {
                    numeric = false;
                    break;
                }
                seq = seq * 10 + static_cast<std::size_t>(m.id[i] - '0');
            }
            if (numeric) max_seq = std::max(max_seq, seq);
        }
    }
    return "m" + std::to_string(max_seq + 1);
}

Conversation Conversation::restore(std::string id, EmailAddress scammer_address,
                                   std::string strategy_id, ConversationState state,
                                   std::set<AnalysisFlag> flags,
                                   std::vector<Message> messages) {
    Conversation c(std::move(id), std::move(scammer_address), std::move(strategy_id),
                   messages.empty() ? Instant{} : messages.front().timestamp);
    c.state_ = state;
    c.flags_ = std::move(flags);
    c.messages_ = std::move(messages);
    return c;
}

std::string_view to_string(Direction d) {
    return d == Direction::Inbound ? "inbound" : "outbound";
}

std::string_view to_string(ConversationState::Phase p) {
    switch (p) {
    case ConversationState::Phase::Created: return "created";
    case ConversationState::Phase::Contacted: return "contacted";
    case ConversationState::Phase::Engaged: return "engaged";
    case ConversationState::Phase::Terminated: return "terminated";
    }
    return "created";
}

std::string_view to_string(TerminationReason r) {
    switch (r) {
    case TerminationReason::Bounce: return "bounce";
    case TerminationReason::TooLongInbound: return "too_long_inbound";
    case TerminationReason::StudyEnd: return "study_end";
    case TerminationReason::ManualStop: return "manual_stop";
    }
    return "bounce";
}

std::string_view to_string(AnalysisFlag f) {
    switch (f) {
    case AnalysisFlag::PotentialAutoresponder: return "potential_autoresponder";
    case AnalysisFlag::RestoredAfterReview: return "restored_after_review";
    case AnalysisFlag::DuplicateDeliveryCollapsed: return "duplicate_delivery_collapsed";
    case AnalysisFlag::UnknownSenderExcluded: return "unknown_sender_excluded";
    }
    return "potential_autoresponder";
}

std::optional<Direction> direction_from_string(std::string_view s) {
    if (s == "inbound") return Direction::Inbound;
    if (s == "outbound") return Direction::Outbound;
    return std::nullopt;
}

std::optional<ConversationState::Phase> phase_from_string(std::string_view s) {
    using Phase = ConversationState::Phase;
    if (s == "created") return Phase::Created;
    if (s == "contacted") return Phase::Contacted;
    if (s == "engaged") return Phase::Engaged;
    if (s == "terminated") return Phase::Terminated;
    return std::nullopt;
}

std::optional<TerminationReason> termination_reason_from_string(std::string_view s) {
    if (s == "bounce") return TerminationReason::Bounce;
    if (s == "too_long_inbound") return TerminationReason::TooLongInbound;
    if (s == "study_end") return TerminationReason::StudyEnd;
    if (s == "manual_stop") return TerminationReason::ManualStop;
    return std::nullopt;
}

std::optional<AnalysisFlag> analysis_flag_from_string(std::string_view s) {
    if (s == "potential_autoresponder") return AnalysisFlag::PotentialAutoresponder;
    if (s == "restored_after_review") return AnalysisFlag::RestoredAfterReview;
    if (s == "duplicate_delivery_collapsed") return AnalysisFlag::DuplicateDeliveryCollapsed;
    if (s == "unknown_sender_excluded") return AnalysisFlag::UnknownSenderExcluded;
    return std::nullopt;
}

} // namespace scambait
