#pragma once

#include <optional>
#include <string>

#include "scambait/time_utils.hpp"

namespace scambait {

enum class Direction { Inbound, Outbound };

struct Message {
    std::string id;
    Direction direction = Direction::Inbound;
    Instant timestamp{};
    std::string subject;
    std::string body; // may be empty for Inbound only (attachment-only mail)
    std::optional<std::string> transport_id;
    std::optional<std::string> in_reply_to;

    bool operator==(const Message&) const = default;
};

} // namespace scambait
