#include "scambait/analysis.hpp"

#include <map>

#include "scambait/errors.hpp"
#include "scambait/textnorm.hpp"

namespace scambait {

std::size_t collapse_duplicate_delivery(Conversation& conversation,
                                        const AnalysisConfig& config) {
    std::vector<std::string> to_drop;
    const Message* last_kept = nullptr;
    for (const Message& m : conversation.messages()) {
        if (m.direction != Direction::Inbound) continue;
        if (last_kept && is_duplicate_delivery(*last_kept, m, config.duplicate_window)) {
            to_drop.push_back(m.id);
            continue;
        }
        last_kept = &m;
    }
    if (to_drop.empty()) return 0;
    const std::size_t dropped = conversation.drop_messages(to_drop);
    conversation.add_flag(AnalysisFlag::DuplicateDeliveryCollapsed);
    return dropped;
}

bool flag_autoresponder(Conversation& conversation, const AnalysisConfig& config) {
    std::map<std::string, std::size_t> counts;
    for (const Message& m : conversation.messages()) {
        if (m.direction != Direction::Inbound) continue;
        if (++counts[normalize_body(m.body)] > config.autoresponder_threshold) {
            conversation.add_flag(AnalysisFlag::PotentialAutoresponder);
            return true;
        }
    }
    return conversation.has_flag(AnalysisFlag::PotentialAutoresponder);
}

std::vector<const Conversation*> review_queue(const ConversationStore& store) {
    std::vector<const Conversation*> queue;
    for (const Conversation* c : store.all()) {
        if (c->has_flag(AnalysisFlag::PotentialAutoresponder) &&
            !c->has_flag(AnalysisFlag::RestoredAfterReview))
            queue.push_back(c);
    }
    return queue;
}

void restore_after_review(ConversationStore& store, const std::string& conversation_id) {
    Conversation* c = store.find(conversation_id);
    if (!c) throw UnknownConversation("no conversation " + conversation_id);
    if (!c->has_flag(AnalysisFlag::PotentialAutoresponder))
        throw UnknownConversation("conversation " + conversation_id + " was never flagged");
    c->add_flag(AnalysisFlag::RestoredAfterReview);
    store.save(*c);
}

bool is_valid_conversation(const Conversation& conversation) {
    if (conversation.has_flag(AnalysisFlag::UnknownSenderExcluded)) return false;
    if (conversation.has_flag(AnalysisFlag::PotentialAutoresponder) &&
        !conversation.has_flag(AnalysisFlag::RestoredAfterReview))
        return false;
    return conversation.inbound_count() >= 1;
}

std::vector<const Conversation*> valid_conversations(const ConversationStore& store) {
    std::vector<const Conversation*> out;
    for (const Conversation* c : store.all())
        if (is_valid_conversation(*c)) out.push_back(c);
    return out;
}

void run_filtration(ConversationStore& store, const AnalysisConfig& config) {
    for (Conversation* c : store.all_mutable()) {
        const auto flags_before = c->flags();
        const std::size_t collapsed = collapse_duplicate_delivery(*c, config);
        flag_autoresponder(*c, config);
        if (collapsed > 0 || c->flags() != flags_before) store.save(*c);
    }
}

} // namespace scambait
