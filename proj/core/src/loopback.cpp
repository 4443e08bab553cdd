#include "scambait/loopback.hpp"

#include "scambait/errors.hpp"

namespace scambait {

SendResult LoopbackTransport::send(const OutboundMail& mail) {
    std::lock_guard lock(mutex_);
    if (unavailable_) throw TransportUnavailable("loopback transport marked unavailable");
    if (invalid_recipients_.count(mail.to.value())) return Bounce{};
    Delivery delivery{mail, "lb-" + std::to_string(++send_seq_), clock_.now()};
    undelivered_.push_back(delivery);
    history_.push_back(std::move(delivery));
    return SendReceipt{history_.back().transport_id};
}

std::vector<InboundMail> LoopbackTransport::poll_inbound() {
    std::lock_guard lock(mutex_);
    if (unavailable_) throw TransportUnavailable("loopback transport marked unavailable");
    std::vector<InboundMail> out;
    while (!inbound_.empty()) {
        InboundMail mail = std::move(inbound_.front());
        inbound_.pop_front();
        if (!consumed_.insert(mail.transport_id).second) continue;
        out.push_back(std::move(mail));
    }
    return out;
}

void LoopbackTransport::mark_invalid_recipient(const EmailAddress& address) {
    std::lock_guard lock(mutex_);
    invalid_recipients_.insert(address.value());
}

void LoopbackTransport::inject_inbound(InboundMail mail) {
    std::lock_guard lock(mutex_);
    inbound_.push_back(std::move(mail));
}

std::vector<LoopbackTransport::Delivery> LoopbackTransport::drain_deliveries() {
    std::lock_guard lock(mutex_);
    std::vector<Delivery> out;
    out.swap(undelivered_);
    return out;
}

std::vector<LoopbackTransport::Delivery> LoopbackTransport::send_history() const {
    std::lock_guard lock(mutex_);
    return history_;
}

} // namespace scambait
