#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scambait/conversation.hpp"

namespace scambait {

struct CorruptRecord {
    std::filesystem::path file;
    std::string reason;
};

struct LoadReport {
    std::size_t loaded = 0;
    std::vector<CorruptRecord> corrupt;
};

// One JSON document per conversation at <dir>/<id>.json. Writes are atomic
// (tmp + rename) and serialized per conversation id; reads may run
// concurrently. Reply-at-most-once markers live in a <dir>/.marks sidecar so
// the public document schema stays fixed.
class ConversationStore {
public:
    explicit ConversationStore(std::filesystem::path dir);

    ConversationStore(const ConversationStore&) = delete;
    ConversationStore& operator=(const ConversationStore&) = delete;

    // Loads every *.json document; malformed files are reported and skipped.
    LoadReport reload();

    // Registers a new conversation. Enforces one live conversation per
    // scammer address.
    Conversation& create(const EmailAddress& scammer, std::string strategy_id, Instant now,
                         std::vector<AnalysisFlag> flags = {});

    void save(const Conversation& conversation);

    Conversation* find(const std::string& id);
    const Conversation* find(const std::string& id) const;
    std::optional<std::string> id_for_address(const EmailAddress& address) const;
    std::optional<std::string> id_for_outbound_transport(const std::string& transport_id) const;

    // Sorted by conversation id; iteration order is deterministic.
    std::vector<const Conversation*> all() const;
    std::vector<Conversation*> all_mutable();
    std::size_t size() const { return conversations_.size(); }

    const std::filesystem::path& dir() const { return dir_; }

    // --- replied-to markers (mark before send) ---
    // Returns false when the inbound message was already marked.
    bool mark_replied(const std::string& conversation_id, const std::string& message_id);
    bool is_replied(const std::string& conversation_id, const std::string& message_id) const;
    // Clean send failures may retract the mark so the reply stays queued.
    void unmark_replied(const std::string& conversation_id, const std::string& message_id);

    static std::string make_conversation_id(const EmailAddress& scammer, Instant created_at);

private:
    void index(const Conversation& c);
    std::mutex& file_mutex(const std::string& id);
    std::filesystem::path marks_file(const std::string& id) const;
    void persist_marks(const std::string& id);

    std::filesystem::path dir_;
    std::map<std::string, Conversation> conversations_;
    std::map<std::string, std::string> by_address_;
    std::map<std::string, std::string> by_outbound_transport_;
    std::map<std::string, std::vector<std::string>> replied_;
    mutable std::mutex mutex_;
    std::map<std::string, std::unique_ptr<std::mutex>> file_mutexes_;
};

} // namespace scambait
