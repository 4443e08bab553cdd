#include "scambait/email_address.hpp"

#include <cctype>

#include "scambait/errors.hpp"

namespace scambait {

std::optional<EmailAddress> EmailAddress::parse(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    raw = raw.substr(begin, end - begin);
    if (raw.empty()) return std::nullopt;

    const std::size_t at = raw.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == raw.size()) return std::nullopt;
    if (raw.find('@', at + 1) != std::string_view::npos) return std::nullopt;

    std::string value;
    value.reserve(raw.size());
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>')
            return std::nullopt;
        value.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return EmailAddress(std::move(value));
}

EmailAddress email(std::string_view raw) {
    auto parsed = EmailAddress::parse(raw);
    if (!parsed) throw ConfigInvalid("malformed email address: " + std::string(raw));
    return *parsed;
}

} // namespace scambait
