#include "scambait/textnorm.hpp"

#include <cctype>

namespace scambait {

std::string normalize_body(std::string_view text) {
    std::string kept;
    kept.reserve(text.size());

    // line-level pass: drop quoted lines and the signature block
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        std::string_view trimmed = line;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t'))
            trimmed.remove_prefix(1);
        while (!trimmed.empty() &&
               (trimmed.back() == ' ' || trimmed.back() == '\t' || trimmed.back() == '\r'))
            trimmed.remove_suffix(1);

        if (trimmed == "--") break; // signature delimiter
        if (!trimmed.empty() && trimmed.front() != '>') {
            kept.append(line);
            kept.push_back('\n');
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }

    // strip attachment markers
    std::string no_markers;
    no_markers.reserve(kept.size());
    pos = 0;
    while (pos < kept.size()) {
        if (kept.compare(pos, 13, "[attachment: ") == 0) {
            const std::size_t close = kept.find(']', pos);
            if (close != std::string::npos) {
                pos = close + 1;
                continue;
            }
        }
        no_markers.push_back(kept[pos++]);
    }

    // lower-case and collapse whitespace runs
    std::string out;
    out.reserve(no_markers.size());
    bool pending_space = false;
    for (unsigned char c : no_markers) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

bool is_duplicate_delivery(const Message& kept, const Message& candidate,
                           std::chrono::seconds window) {
    if (candidate.timestamp < kept.timestamp) return false;
    if (candidate.timestamp - kept.timestamp > window) return false;
    return normalize_body(kept.body) == normalize_body(candidate.body);
}

} // namespace scambait
