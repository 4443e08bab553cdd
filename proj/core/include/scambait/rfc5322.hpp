#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/email_address.hpp"
#include "scambait/time_utils.hpp"

namespace scambait {

// Minimal RFC 5322 surface: the headers this system reads and writes, plus a
// plain-text body. Multipart bodies are flattened to the first text part with
// attachments recorded as "[attachment: <filename>]" markers.
struct ParsedMail {
    std::optional<EmailAddress> from;
    std::optional<EmailAddress> to;
    std::string subject;
    std::string message_id;
    std::optional<std::string> in_reply_to;
    std::vector<std::string> references;
    std::optional<Instant> date;
    std::string body;
};

ParsedMail parse_mail(std::string_view raw);

struct MailFields {
    EmailAddress from;
    EmailAddress to;
    std::string subject;
    std::string body;
    std::string message_id;
    std::optional<std::string> in_reply_to;
    std::vector<std::string> references;
    Instant date{};
};

std::string render_mail(const MailFields& fields);

// Extracts the addr-spec from "Display Name <user@host>" or a bare address.
std::optional<EmailAddress> parse_address_field(std::string_view value);

} // namespace scambait
