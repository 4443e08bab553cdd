#pragma once

#include <filesystem>
#include <mutex>
#include <set>

#include "scambait/clock.hpp"
#include "scambait/transport.hpp"

namespace scambait {

// Filesystem transport with maildir semantics: outbound spooled via
// out/tmp -> out/new, inbound consumed from in/new -> in/cur. One file per
// message keeps individual deliveries crash-safe.
class MaildirTransport final : public Transport {
public:
    MaildirTransport(std::filesystem::path root, EmailAddress self, Clock& clock);

    SendResult send(const OutboundMail& mail) override;
    std::vector<InboundMail> poll_inbound() override;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    EmailAddress self_;
    Clock& clock_;
    std::uint64_t send_seq_ = 0;
    std::set<std::string> consumed_;
    std::mutex mutex_;
};

// Live SMTP/IMAP connector stub. The desk-scale reference transports are
// maildir and loopback; this class only pins the configuration surface a
// real connector would take.
struct SmtpImapConfig {
    std::string smtp_host;
    int smtp_port = 587;
    std::string imap_host;
    int imap_port = 993;
    std::string username;
    std::string password_env = "SCAMBAIT_MAIL_PASSWORD";
};

class SmtpImapTransport final : public Transport {
public:
    explicit SmtpImapTransport(SmtpImapConfig config) : config_(std::move(config)) {}

    SendResult send(const OutboundMail&) override;
    std::vector<InboundMail> poll_inbound() override;

private:
    SmtpImapConfig config_;
};

} // namespace scambait
