#include "scambait/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "scambait/errors.hpp"

namespace scambait {

using nlohmann::json;

namespace {

json message_to_json(const Message& m) {
    json j;
    j["id"] = m.id;
    j["direction"] = std::string(to_string(m.direction));
    j["timestamp"] = format_iso8601(m.timestamp);
    j["subject"] = m.subject;
    j["body"] = m.body;
    j["transport_id"] = m.transport_id ? json(*m.transport_id) : json(nullptr);
    j["in_reply_to"] = m.in_reply_to ? json(*m.in_reply_to) : json(nullptr);
    return j;
}

Message message_from_json(const json& j) {
    Message m;
    m.id = j.at("id").get<std::string>();
    auto dir = direction_from_string(j.at("direction").get<std::string>());
    if (!dir) throw std::runtime_error("bad direction");
    m.direction = *dir;
    auto ts = parse_iso8601(j.at("timestamp").get<std::string>());
    if (!ts) throw std::runtime_error("bad timestamp");
    m.timestamp = *ts;
    m.subject = j.at("subject").get<std::string>();
    m.body = j.at("body").get<std::string>();
    if (j.contains("transport_id") && !j["transport_id"].is_null())
        m.transport_id = j["transport_id"].get<std::string>();
    if (j.contains("in_reply_to") && !j["in_reply_to"].is_null())
        m.in_reply_to = j["in_reply_to"].get<std::string>();
    return m;
}

json conversation_to_json(const Conversation& c) {
    json j;
    j["id"] = c.id();
    j["scammer_address"] = c.scammer_address().value();
    j["strategy_id"] = c.strategy_id();
    j["state"] = std::string(to_string(c.state().phase));
    j["termination_reason"] =
        c.state().reason ? json(std::string(to_string(*c.state().reason))) : json(nullptr);
    json flags = json::array();
    for (AnalysisFlag f : c.flags()) flags.push_back(std::string(to_string(f)));
    j["flags"] = flags;
    json messages = json::array();
    for (const Message& m : c.messages()) messages.push_back(message_to_json(m));
    j["messages"] = messages;
    return j;
}

Conversation conversation_from_json(const json& j) {
    auto address = EmailAddress::parse(j.at("scammer_address").get<std::string>());
    if (!address) throw std::runtime_error("bad scammer_address");
    ConversationState state;
    auto phase = phase_from_string(j.at("state").get<std::string>());
    if (!phase) throw std::runtime_error("bad state");
    state.phase = *phase;
    if (j.contains("termination_reason") && !j["termination_reason"].is_null()) {
        auto reason = termination_reason_from_string(j["termination_reason"].get<std::string>());
        if (!reason) throw std::runtime_error("bad termination_reason");
        state.reason = *reason;
    }
    std::set<AnalysisFlag> flags;
    for (const auto& f : j.at("flags")) {
        auto flag = analysis_flag_from_string(f.get<std::string>());
        if (!flag) throw std::runtime_error("bad flag");
        flags.insert(*flag);
    }
    std::vector<Message> messages;
    for (const auto& m : j.at("messages")) messages.push_back(message_from_json(m));
    return Conversation::restore(j.at("id").get<std::string>(), *address,
                                 j.at("strategy_id").get<std::string>(), state,
                                 std::move(flags), std::move(messages));
}

void atomic_write(const std::filesystem::path& target, const std::string& payload) {
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot open " + tmp.string() + " for writing");
        out << payload;
        if (!out.flush()) throw IoFailure("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoFailure("rename to " + target.string() + " failed: " + ec.message());
}

} // namespace

ConversationStore::ConversationStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoFailure("cannot create store directory " + dir_.string());
}

LoadReport ConversationStore::reload() {
    LoadReport report;
    conversations_.clear();
    by_address_.clear();
    by_outbound_transport_.clear();
    replied_.clear();

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& file : files) {
        try {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw std::runtime_error("unreadable");
            json j = json::parse(in);
            Conversation c = conversation_from_json(j);
            std::string id = c.id();
            auto [it, inserted] = conversations_.emplace(id, std::move(c));
            if (!inserted) throw std::runtime_error("duplicate conversation id");
            index(it->second);
            ++report.loaded;
        } catch (const std::exception& e) {
            report.corrupt.push_back({file, e.what()});
        }
    }

    // marks sidecar
    const auto marks_dir = dir_ / ".marks";
    if (std::filesystem::exists(marks_dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(marks_dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
            try {
                std::ifstream in(entry.path(), std::ios::binary);
                json j = json::parse(in);
                std::vector<std::string> ids = j.at("replied").get<std::vector<std::string>>();
                replied_[entry.path().stem().string()] = std::move(ids);
            } catch (const std::exception&) {
                // a corrupt mark file only risks one duplicate reply; start clean
            }
        }
    }
    return report;
}

Conversation& ConversationStore::create(const EmailAddress& scammer, std::string strategy_id,
                                        Instant now, std::vector<AnalysisFlag> flags) {
    std::lock_guard lock(mutex_);
    if (auto existing = by_address_.find(scammer.value()); existing != by_address_.end())
        throw ConfigInvalid("conversation already exists for " + scammer.value());
    std::string id = make_conversation_id(scammer, now);
    auto [it, inserted] =
        conversations_.emplace(id, Conversation(id, scammer, std::move(strategy_id), now));
    if (!inserted) throw ConfigInvalid("conversation id collision: " + id);
    for (AnalysisFlag f : flags) it->second.add_flag(f);
    by_address_[scammer.value()] = id;
    return it->second;
}

void ConversationStore::save(const Conversation& conversation) {
    const std::string payload = conversation_to_json(conversation).dump(2) + "\n";
    {
        std::lock_guard file_lock(file_mutex(conversation.id()));
        atomic_write(dir_ / (conversation.id() + ".json"), payload);
    }
    std::lock_guard lock(mutex_);
    index(conversation);
}

Conversation* ConversationStore::find(const std::string& id) {
    auto it = conversations_.find(id);
    return it == conversations_.end() ? nullptr : &it->second;
}

const Conversation* ConversationStore::find(const std::string& id) const {
    auto it = conversations_.find(id);
    return it == conversations_.end() ? nullptr : &it->second;
}

std::optional<std::string> ConversationStore::id_for_address(const EmailAddress& address) const {
    std::lock_guard lock(mutex_);
    auto it = by_address_.find(address.value());
    if (it == by_address_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> ConversationStore::id_for_outbound_transport(
    const std::string& transport_id) const {
    std::lock_guard lock(mutex_);
    auto it = by_outbound_transport_.find(transport_id);
    if (it == by_outbound_transport_.end()) return std::nullopt;
    return it->second;
}

std::vector<const Conversation*> ConversationStore::all() const {
    std::vector<const Conversation*> out;
    out.reserve(conversations_.size());
    for (const auto& [id, c] : conversations_) out.push_back(&c);
    return out;
}

std::vector<Conversation*> ConversationStore::all_mutable() {
    std::vector<Conversation*> out;
    out.reserve(conversations_.size());
    for (auto& [id, c] : conversations_) out.push_back(&c);
    return out;
}

bool ConversationStore::mark_replied(const std::string& conversation_id,
                                     const std::string& message_id) {
    {
        std::lock_guard lock(mutex_);
        auto& ids = replied_[conversation_id];
        if (std::find(ids.begin(), ids.end(), message_id) != ids.end()) return false;
        ids.push_back(message_id);
    }
    persist_marks(conversation_id);
    return true;
}

bool ConversationStore::is_replied(const std::string& conversation_id,
                                   const std::string& message_id) const {
    std::lock_guard lock(mutex_);
    auto it = replied_.find(conversation_id);
    if (it == replied_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), message_id) != it->second.end();
}

void ConversationStore::unmark_replied(const std::string& conversation_id,
                                       const std::string& message_id) {
    {
        std::lock_guard lock(mutex_);
        auto it = replied_.find(conversation_id);
        if (it == replied_.end()) return;
        std::erase(it->second, message_id);
    }
    persist_marks(conversation_id);
}

std::string ConversationStore::make_conversation_id(const EmailAddress& scammer,
                                                    Instant created_at) {
    std::string sanitized;
    sanitized.reserve(scammer.value().size());
    for (char c : scammer.value())
        sanitized.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                             c == '-' || c == '_')
                                ? c
                                : '-');
    return sanitized + "-" +
           std::to_string(created_at.time_since_epoch().count());
}

void ConversationStore::index(const Conversation& c) {
    by_address_[c.scammer_address().value()] = c.id();
    for (const Message& m : c.messages())
        if (m.direction == Direction::Outbound && m.transport_id)
            by_outbound_transport_[*m.transport_id] = c.id();
}

std::mutex& ConversationStore::file_mutex(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto& slot = file_mutexes_[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

std::filesystem::path ConversationStore::marks_file(const std::string& id) const {
    return dir_ / ".marks" / (id + ".json");
}

void ConversationStore::persist_marks(const std::string& id) {
    std::error_code ec;
    std::filesystem::create_directories(dir_ / ".marks", ec);
    json j;
    {
        std::lock_guard lock(mutex_);
        j["replied"] = replied_[id];
    }
    std::lock_guard file_lock(file_mutex(id + "#marks"));
    atomic_write(marks_file(id), j.dump() + "\n");
}

} // namespace scambait
