#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "scambait/message.hpp"

namespace scambait {

// Canonical body form used for identity checks: lower-cased, whitespace runs
// collapsed, quoted lines ("> ...") stripped, "[attachment: ...]" markers
// stripped, and everything after a "--" signature delimiter dropped.
std::string normalize_body(std::string_view text);

// Same normalized body within the window: a sender-side duplicate delivery,
// not new content.
bool is_duplicate_delivery(const Message& kept, const Message& candidate,
                           std::chrono::seconds window);

} // namespace scambait
