#include "scambait/corpus_import.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "scambait/errors.hpp"
#include "scambait/store.hpp"

namespace scambait {

using nlohmann::json;

namespace {

const json* lookup(const json& doc, const std::map<std::string, std::string>& mapping,
                   const std::string& ours) {
    const auto it = mapping.find(ours);
    const std::string& key = it == mapping.end() ? ours : it->second;
    if (!doc.contains(key)) return nullptr;
    return &doc.at(key);
}

} // namespace

FieldMapping FieldMapping::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoFailure("cannot read mapping file " + file.string());
    json j = json::parse(in);
    FieldMapping mapping;
    if (j.contains("conversation_fields"))
        mapping.conversation_fields =
            j["conversation_fields"].get<std::map<std::string, std::string>>();
    if (j.contains("message_fields"))
        mapping.message_fields = j["message_fields"].get<std::map<std::string, std::string>>();
    return mapping;
}

std::vector<Conversation> import_external_corpus(const std::filesystem::path& path,
                                                 const FieldMapping& mapping) {
    if (!std::filesystem::is_directory(path))
        throw IoFailure("corpus path is not a directory: " + path.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<Conversation> out;
    std::set<std::string> missing;

    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded()) {
            missing.insert("(unparseable document: " + file.filename().string() + ")");
            continue;
        }

        const json* address_field = lookup(doc, mapping.conversation_fields, "scammer_address");
        if (!address_field) missing.insert("scammer_address");
        const json* messages_field = lookup(doc, mapping.conversation_fields, "messages");
        if (!messages_field) missing.insert("messages");
        if (!address_field || !messages_field) continue;

        auto address = EmailAddress::parse(address_field->get<std::string>());
        if (!address) {
            missing.insert("scammer_address");
            continue;
        }

        std::vector<Message> messages;
        bool message_fields_ok = true;
        std::size_t seq = 0;
        for (const json& m : *messages_field) {
            Message message;
            const json* dir = lookup(m, mapping.message_fields, "direction");
            const json* ts = lookup(m, mapping.message_fields, "timestamp");
            const json* body = lookup(m, mapping.message_fields, "body");
            if (!dir) missing.insert("direction");
            if (!ts) missing.insert("timestamp");
            if (!body) missing.insert("body");
            if (!dir || !ts || !body) {
                message_fields_ok = false;
                break;
            }
            auto direction = direction_from_string(dir->get<std::string>());
            auto timestamp = parse_iso8601(ts->get<std::string>());
            if (!direction || !timestamp) {
                missing.insert(!direction ? "direction" : "timestamp");
                message_fields_ok = false;
                break;
            }
            message.direction = *direction;
            message.timestamp = *timestamp;
            message.body = body->get<std::string>();
            if (const json* subject = lookup(m, mapping.message_fields, "subject"))
                message.subject = subject->get<std::string>();
            if (const json* id = lookup(m, mapping.message_fields, "id"))
                message.id = id->get<std::string>();
            else
                message.id = "m" + std::to_string(seq + 1);
            ++seq;
            messages.push_back(std::move(message));
        }
        if (!message_fields_ok) continue;

        std::string id;
        if (const json* idf = lookup(doc, mapping.conversation_fields, "id"))
            id = idf->get<std::string>();
        else
            id = ConversationStore::make_conversation_id(
                *address, messages.empty() ? Instant{} : messages.front().timestamp);

        std::string strategy_id;
        if (const json* sf = lookup(doc, mapping.conversation_fields, "strategy_id"))
            strategy_id = sf->get<std::string>();

        // derive state when absent: any inbound -> engaged, any outbound ->
        // contacted, else created
        ConversationState state;
        if (const json* st = lookup(doc, mapping.conversation_fields, "state")) {
            if (auto phase = phase_from_string(st->get<std::string>())) state.phase = *phase;
        } else {
            const bool any_in = std::any_of(messages.begin(), messages.end(), [](const Message& m) {
                return m.direction == Direction::Inbound;
            });
            const bool any_out = std::any_of(messages.begin(), messages.end(), [](const Message& m) {
                return m.direction == Direction::Outbound;
            });
            state.phase = any_in    ? ConversationState::Phase::Engaged
                          : any_out ? ConversationState::Phase::Contacted
                                    : ConversationState::Phase::Created;
        }

        std::set<AnalysisFlag> flags;
        if (const json* ff = lookup(doc, mapping.conversation_fields, "flags"))
            for (const auto& f : *ff)
                if (auto flag = analysis_flag_from_string(f.get<std::string>()))
                    flags.insert(*flag);

        out.push_back(Conversation::restore(std::move(id), *address, std::move(strategy_id),
                                            state, std::move(flags), std::move(messages)));
    }

    if (!missing.empty()) {
        std::vector<std::string> fields(missing.begin(), missing.end());
        std::string what = "corpus schema mismatch; missing or malformed fields:";
        for (const std::string& f : fields) what += " " + f;
        throw SchemaMismatch(what, std::move(fields));
    }
    return out;
}

} // namespace scambait
