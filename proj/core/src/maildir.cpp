#include "scambait/maildir.hpp"

#include <algorithm>
#include <fstream>

#include "scambait/errors.hpp"
#include "scambait/rfc5322.hpp"

namespace scambait {

namespace {

void ensure_dirs(const std::filesystem::path& root) {
    std::error_code ec;
    for (const char* box : {"out", "in"})
        for (const char* sub : {"tmp", "new", "cur"})
            std::filesystem::create_directories(root / box / sub, ec);
}

} // namespace

MaildirTransport::MaildirTransport(std::filesystem::path root, EmailAddress self, Clock& clock)
    : root_(std::move(root)), self_(std::move(self)), clock_(clock) {
    ensure_dirs(root_);
}

SendResult MaildirTransport::send(const OutboundMail& mail) {
    std::lock_guard lock(mutex_);
    const std::string transport_id =
        std::to_string(clock_.now().time_since_epoch().count()) + "." +
        std::to_string(++send_seq_) + "@" + self_.value().substr(self_.value().find('@') + 1);

    MailFields fields{
        .from = mail.from,
        .to = mail.to,
        .subject = mail.subject,
        .body = mail.body,
        .message_id = transport_id,
        .in_reply_to = mail.in_reply_to,
        .references = mail.in_reply_to ? std::vector<std::string>{*mail.in_reply_to}
                                       : std::vector<std::string>{},
        .date = clock_.now(),
    };

    const std::string name = transport_id.substr(0, transport_id.find('@')) + ".eml";
    const auto tmp = root_ / "out" / "tmp" / name;
    const auto dest = root_ / "out" / "new" / name;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw TransportUnavailable("cannot write " + tmp.string());
        out << render_mail(fields);
        if (!out.flush()) throw TransportUnavailable("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, dest, ec);
    if (ec) throw TransportUnavailable("cannot deliver " + dest.string() + ": " + ec.message());
    return SendReceipt{transport_id};
}

std::vector<InboundMail> MaildirTransport::poll_inbound() {
    std::lock_guard lock(mutex_);
    const auto new_dir = root_ / "in" / "new";
    if (!std::filesystem::exists(new_dir))
        throw TransportUnavailable("maildir missing: " + new_dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(new_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<InboundMail> out;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw TransportUnavailable("cannot read " + file.string());
        std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const ParsedMail parsed = parse_mail(raw);

        std::string transport_id =
            parsed.message_id.empty() ? file.filename().string() : parsed.message_id;

        std::error_code ec;
        std::filesystem::rename(file, root_ / "in" / "cur" / file.filename(), ec);
        if (ec) throw TransportUnavailable("cannot consume " + file.string());

        // same transport id delivered twice: consuming is idempotent
        if (!consumed_.insert(transport_id).second) continue;
        if (!parsed.from) continue; // unroutable without a sender

        out.push_back(InboundMail{
            .from = *parsed.from,
            .to = parsed.to.value_or(self_),
            .subject = parsed.subject,
            .body = parsed.body,
            .transport_id = std::move(transport_id),
            .references = parsed.references,
            .received_at = parsed.date.value_or(clock_.now()),
        });
    }
    return out;
}

SendResult SmtpImapTransport::send(const OutboundMail&) {
    throw TransportUnavailable("SMTP connector not configured in this build");
}

std::vector<InboundMail> SmtpImapTransport::poll_inbound() {
    throw TransportUnavailable("IMAP connector not configured in this build");
}

} // namespace scambait
