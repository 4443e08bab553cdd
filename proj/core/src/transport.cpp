#include "scambait/transport.hpp"

namespace scambait {

std::variant<std::string, UnknownSender> thread_inbound(const InboundMail& mail,
                                                        const ConversationStore& store) {
    if (auto id = store.id_for_address(mail.from)) return *id;
    for (const std::string& ref : mail.references)
        if (auto id = store.id_for_outbound_transport(ref)) return *id;
    return UnknownSender{};
}

} // namespace scambait
