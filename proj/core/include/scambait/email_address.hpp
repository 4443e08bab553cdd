#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace scambait {

// Normalized (trimmed, lower-cased) address. Exactly one '@' with non-empty
// local part and domain; normalization is idempotent.
class EmailAddress {
public:
    static std::optional<EmailAddress> parse(std::string_view raw);

    const std::string& value() const { return value_; }

    auto operator<=>(const EmailAddress&) const = default;

private:
    explicit EmailAddress(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

// Throwing convenience for addresses known to be well-formed (configs, tests).
EmailAddress email(std::string_view raw);

} // namespace scambait
