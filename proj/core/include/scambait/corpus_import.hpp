#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scambait/conversation.hpp"

namespace scambait {

// Field-name mapping for foreign conversation corpora: our field -> theirs.
// Unmapped names are looked up as-is.
struct FieldMapping {
    std::map<std::string, std::string> conversation_fields;
    std::map<std::string, std::string> message_fields;

    static FieldMapping load(const std::filesystem::path& file);
};

// Loads a directory of conversation documents read-only for analysis.
// Required per document: scammer_address and messages with direction,
// timestamp and body; everything else gets defaults (id from address + first
// timestamp, state derived from the log). Throws SchemaMismatch naming every
// missing field.
std::vector<Conversation> import_external_corpus(const std::filesystem::path& path,
                                                 const FieldMapping& mapping = {});

} // namespace scambait
