#pragma once

#include <string>
#include <variant>
#include <vector>

#include "scambait/email_address.hpp"
#include "scambait/store.hpp"
#include "scambait/time_utils.hpp"

namespace scambait {

struct OutboundMail {
    EmailAddress to;
    EmailAddress from;
    std::string subject;
    std::string body;
    std::optional<std::string> in_reply_to;
};

struct InboundMail {
    EmailAddress from;
    EmailAddress to;
    std::string subject;
    std::string body;
    std::string transport_id;
    std::vector<std::string> references;
    Instant received_at{};
};

struct SendReceipt {
    std::string transport_id;
};

// Recipient address is invalid; the conversation should terminate.
struct Bounce {};

using SendResult = std::variant<SendReceipt, Bounce>;

class Transport {
public:
    virtual ~Transport() = default;

    // Throws TransportUnavailable on retryable infrastructure failure; the
    // message then stays queued with the caller.
    virtual SendResult send(const OutboundMail& mail) = 0;

    // Returns all not-yet-consumed inbound mail in received order. Consuming
    // is idempotent per transport_id.
    virtual std::vector<InboundMail> poll_inbound() = 0;
};

struct UnknownSender {};

// Matches inbound mail to a conversation: sender address first, then any
// References header naming one of our outbound transport ids, else
// UnknownSender.
std::variant<std::string, UnknownSender> thread_inbound(const InboundMail& mail,
                                                        const ConversationStore& store);

} // namespace scambait
