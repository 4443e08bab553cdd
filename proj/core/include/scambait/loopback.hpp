#pragma once

#include <deque>
#include <mutex>
#include <set>

#include "scambait/clock.hpp"
#include "scambait/transport.hpp"

namespace scambait {

// In-memory transport wired to the scammer simulator. Lossless and ordered:
// everything injected is polled exactly once, in injection order.
class LoopbackTransport final : public Transport {
public:
    explicit LoopbackTransport(Clock& clock) : clock_(clock) {}

    SendResult send(const OutboundMail& mail) override;
    std::vector<InboundMail> poll_inbound() override;

    // --- simulator side ---
    void mark_invalid_recipient(const EmailAddress& address);
    void inject_inbound(InboundMail mail);

    struct Delivery {
        OutboundMail mail;
        std::string transport_id;
        Instant at;
    };
    // Outbound delivered since the last drain, in send order.
    std::vector<Delivery> drain_deliveries();
    // Complete send history (includes drained deliveries).
    std::vector<Delivery> send_history() const;

    void set_unavailable(bool value) { unavailable_ = value; }

private:
    Clock& clock_;
    std::deque<InboundMail> inbound_;
    std::vector<Delivery> undelivered_;
    std::vector<Delivery> history_;
    std::set<std::string> invalid_recipients_;
    std::set<std::string> consumed_;
    std::uint64_t send_seq_ = 0;
    bool unavailable_ = false;
    mutable std::mutex mutex_;
};

} // namespace scambait
