#pragma once

#include <chrono>
#include <vector>

#include "scambait/conversation.hpp"
#include "scambait/store.hpp"

namespace scambait {

struct AnalysisConfig {
    // deliveries of the same normalized body within this window are
    // sender-side duplicates, not autoresponder evidence
    std::chrono::seconds duplicate_window{300};
    // a conversation is a potential autoresponder when some normalized
    // inbound body occurs more than this many times
    std::size_t autoresponder_threshold{2};
};

// Removes duplicate deliveries (earliest copy kept) and flags the
// conversation when anything was collapsed. Returns the number removed.
std::size_t collapse_duplicate_delivery(Conversation& conversation,
                                        const AnalysisConfig& config = {});

// Flags conversations whose inbound log repeats a normalized body more than
// the threshold. Run after duplicate collapsing. The flag is sticky.
bool flag_autoresponder(Conversation& conversation, const AnalysisConfig& config = {});

// Flagged conversations awaiting manual disposition (flagged but not yet
// restored), sorted by id.
std::vector<const Conversation*> review_queue(const ConversationStore& store);

// Operator decision that a flagged conversation is genuine after all.
// Throws UnknownConversation for unknown ids and for conversations that were
// never flagged.
void restore_after_review(ConversationStore& store, const std::string& conversation_id);

// Valid = at least one inbound message, not an unexcused autoresponder, and
// not from an unknown sender.
bool is_valid_conversation(const Conversation& conversation);
std::vector<const Conversation*> valid_conversations(const ConversationStore& store);

// Collapse + flag across the whole store, persisting changed conversations.
// Idempotent.
void run_filtration(ConversationStore& store, const AnalysisConfig& config = {});

} // namespace scambait
