#include "scambait/rfc5322.hpp"

#include <algorithm>
#include <cctype>

namespace scambait {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Header block as ordered (name, value) pairs with folded lines unfolded.
std::vector<std::pair<std::string, std::string>> parse_headers(std::string_view raw,
                                                               std::size_t& body_start) {
    std::vector<std::pair<std::string, std::string>> headers;
    std::size_t pos = 0;
    while (pos < raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string_view::npos) eol = raw.size();
        std::string_view line = raw.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            body_start = eol + 1;
            return headers;
        }
        if ((line.front() == ' ' || line.front() == '\t') && !headers.empty()) {
            headers.back().second += ' ';
            headers.back().second += trim(line);
        } else if (const std::size_t colon = line.find(':'); colon != std::string_view::npos) {
            headers.emplace_back(lower(trim(line.substr(0, colon))),
                                 std::string(trim(line.substr(colon + 1))));
        }
        pos = eol + 1;
    }
    body_start = raw.size();
    return headers;
}

std::optional<std::string> header_value(
    const std::vector<std::pair<std::string, std::string>>& headers, std::string_view name) {
    for (const auto& [k, v] : headers)
        if (k == name) return v;
    return std::nullopt;
}

// <a@b> <c@d> ... -> {"a@b", "c@d"}; bare ids tolerated
std::vector<std::string> parse_id_list(std::string_view value) {
    std::vector<std::string> ids;
    std::size_t pos = 0;
    while (pos < value.size()) {
        const std::size_t open = value.find('<', pos);
        if (open == std::string_view::npos) {
            if (ids.empty()) {
                auto bare = trim(value.substr(pos));
                if (!bare.empty()) ids.emplace_back(bare);
            }
            break;
        }
        const std::size_t close = value.find('>', open);
        if (close == std::string_view::npos) break;
        ids.emplace_back(trim(value.substr(open + 1, close - open - 1)));
        pos = close + 1;
    }
    return ids;
}

std::optional<std::string> content_param(std::string_view content_type, std::string_view key) {
    const std::string lowered = lower(content_type);
    const std::string needle = std::string(key) + "=";
    std::size_t pos = lowered.find(needle);
    if (pos == std::string_view::npos) return std::nullopt;
    pos += needle.size();
    std::string_view rest = std::string_view(content_type).substr(pos);
    if (!rest.empty() && rest.front() == '"') {
        const std::size_t close = rest.find('"', 1);
        if (close == std::string_view::npos) return std::nullopt;
        return std::string(rest.substr(1, close - 1));
    }
    const std::size_t end = rest.find_first_of("; \t\r\n");
    return std::string(rest.substr(0, end));
}

// Flatten multipart to the first text part; other parts become attachment
// markers.
std::string flatten_multipart(std::string_view body, const std::string& boundary) {
    const std::string delim = "--" + boundary;
    std::string text;
    std::vector<std::string> attachments;

    std::size_t pos = body.find(delim);
    while (pos != std::string_view::npos) {
        pos += delim.size();
        if (body.substr(pos, 2) == "--") break;
        while (pos < body.size() && (body[pos] == '\r' || body[pos] == '\n')) ++pos;
        std::size_t end = body.find(delim, pos);
        std::string_view part =
            body.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);

        std::size_t part_body_start = 0;
        auto part_headers = parse_headers(part, part_body_start);
        const std::string type = lower(header_value(part_headers, "content-type").value_or("text/plain"));
        const std::string disposition =
            lower(header_value(part_headers, "content-disposition").value_or(""));
        if (disposition.find("attachment") != std::string::npos) {
            std::string filename = "unnamed";
            if (auto cd = header_value(part_headers, "content-disposition"))
                if (auto f = content_param(*cd, "filename")) filename = *f;
            attachments.push_back(filename);
        } else if (text.empty() && type.find("text/") == 0) {
            text = std::string(trim(part.substr(part_body_start)));
        }
        pos = end;
    }

    for (const std::string& name : attachments) {
        if (!text.empty()) text += "\n";
        text += "[attachment: " + name + "]";
    }
    return text;
}

} // namespace

std::optional<EmailAddress> parse_address_field(std::string_view value) {
    const std::size_t open = value.find('<');
    if (open != std::string_view::npos) {
        const std::size_t close = value.find('>', open);
        if (close == std::string_view::npos) return std::nullopt;
        return EmailAddress::parse(value.substr(open + 1, close - open - 1));
    }
    return EmailAddress::parse(trim(value));
}

ParsedMail parse_mail(std::string_view raw) {
    ParsedMail mail;
    std::size_t body_start = raw.size();
    const auto headers = parse_headers(raw, body_start);

    if (auto v = header_value(headers, "from")) mail.from = parse_address_field(*v);
    if (auto v = header_value(headers, "to")) mail.to = parse_address_field(*v);
    if (auto v = header_value(headers, "subject")) mail.subject = *v;
    if (auto v = header_value(headers, "message-id")) {
        auto ids = parse_id_list(*v);
        if (!ids.empty()) mail.message_id = ids.front();
    }
    if (auto v = header_value(headers, "in-reply-to")) {
        auto ids = parse_id_list(*v);
        if (!ids.empty()) mail.in_reply_to = ids.front();
    }
    if (auto v = header_value(headers, "references")) mail.references = parse_id_list(*v);
    if (auto v = header_value(headers, "date")) mail.date = parse_rfc5322_date(*v);

    std::string_view body = raw.substr(std::min(body_start, raw.size()));
    const std::string content_type = header_value(headers, "content-type").value_or("text/plain");
    if (lower(content_type).find("multipart/") == 0) {
        if (auto boundary = content_param(content_type, "boundary")) {
            mail.body = flatten_multipart(body, *boundary);
            // In-Reply-To threads back to the referenced message even when
            // References is absent.
            if (mail.in_reply_to && mail.references.empty())
                mail.references.push_back(*mail.in_reply_to);
            return mail;
        }
    }
    std::string text(body);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    mail.body = text;
    if (mail.in_reply_to &&
        std::find(mail.references.begin(), mail.references.end(), *mail.in_reply_to) ==
            mail.references.end())
        mail.references.push_back(*mail.in_reply_to);
    return mail;
}

std::string render_mail(const MailFields& fields) {
    std::string out;
    out += "From: <" + fields.from.value() + ">\r\n";
    out += "To: <" + fields.to.value() + ">\r\n";
    out += "Subject: " + fields.subject + "\r\n";
    out += "Date: " + format_rfc5322_date(fields.date) + "\r\n";
    out += "Message-ID: <" + fields.message_id + ">\r\n";
    if (fields.in_reply_to) out += "In-Reply-To: <" + *fields.in_reply_to + ">\r\n";
    if (!fields.references.empty()) {
        out += "References:";
        for (const std::string& r : fields.references) out += " <" + r + ">";
        out += "\r\n";
    }
    out += "MIME-Version: 1.0\r\n";
    out += "Content-Type: text/plain; charset=utf-8\r\n";
    out += "\r\n";
    out += fields.body;
    if (fields.body.empty() || fields.body.back() != '\n') out += "\n";
    return out;
}

} // namespace scambait
