#include "scambait/engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "scambait/allocator.hpp"
#include "scambait/errors.hpp"
#include "scambait/rng.hpp"

namespace scambait {

using nlohmann::json;

namespace {

std::uint64_t fingerprint(const EngineConfig& config) {
    std::string acc;
    for (const StrategyConfig& s : config.strategies) {
        acc += s.id;
        acc += '\x1f';
        acc += s.preamble;
        acc += std::to_string(s.exemplars.size());
        acc += std::to_string(s.candidates_k);
    }
    for (const std::string& phrase : config.safety.callout_lexicon) acc += phrase;
    for (const std::string& phrase : config.safety.self_reveal_lexicon) acc += phrase;
    acc += std::to_string(config.analysis.duplicate_window.count());
    return fnv1a(acc);
}

std::string reply_subject(const std::string& subject) {
    if (subject.rfind("Re:", 0) == 0) return subject;
    return subject.empty() ? "Re: your message" : "Re: " + subject;
}

} // namespace

std::string RunManifest::to_json() const {
    json j;
    j["run_id"] = run_id;
    j["mode"] = mode;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["until"] = until;
    j["config_fingerprint"] = config_fingerprint;
    j["contacted"] = contacted;
    j["bounced"] = bounced;
    j["inbound_recorded"] = inbound_recorded;
    j["outbound_sent"] = outbound_sent;
    j["fallback_used"] = fallback_used;
    j["terminated_too_long"] = terminated_too_long;
    j["terminated_study_end"] = terminated_study_end;
    j["unknown_sender"] = unknown_sender;
    j["duplicates_collapsed"] = duplicates_collapsed;
    j["completion_retries"] = completion_retries;
    j["contacts_per_strategy"] = contacts_per_strategy;
    return j.dump(2);
}

Engine::Engine(EngineConfig config, ConversationStore& store, ContactQueue& queue,
               Transport& transport, CompletionClient& client, Clock& clock)
    : config_(std::move(config)),
      store_(store),
      queue_(queue),
      transport_(transport),
      client_(client),
      clock_(clock) {
    for (const StrategyConfig& s : config_.strategies) {
        validate(s);
        strategies_.emplace(s.id, s);
    }
    manifest_.seed = config_.seed;
    manifest_.run_id = "run-" + std::to_string(config_.seed);
    manifest_.started_at = format_iso8601(clock_.now());
    manifest_.config_fingerprint = fingerprint(config_);
}

void Engine::emit(const std::string& line) {
    if (!event_sink) return;
    std::lock_guard lock(mutex_);
    event_sink("t=" + format_iso8601(clock_.now()) + " " + line);
}

void Engine::bump(std::size_t& counter) {
    std::lock_guard lock(mutex_);
    ++counter;
}

void Engine::checkpoint(const char* point) {
    if (crash_hook) crash_hook(point);
}

std::size_t Engine::assign_pending(std::uint64_t seed) {
    auto pending = queue_.pending_assignment();
    if (pending.empty()) return 0;

    std::vector<std::string> ids;
    ids.reserve(strategies_.size());
    for (const StrategyConfig& s : config_.strategies) ids.push_back(s.id);
    const std::vector<std::string> assigned = assign_strategies(pending.size(), ids, seed);

    for (std::size_t i = 0; i < pending.size(); ++i) {
        pending[i]->strategy_id = assigned[i];
        pending[i]->status = ContactQueue::Status::Assigned;
        const EmailAddress& address = pending[i]->solicitation.scammer_address;
        if (!store_.id_for_address(address)) {
            Conversation& c = store_.create(address, assigned[i], clock_.now());
            store_.save(c);
            emit("ASSIGN conv=" + c.id() + " strategy=" + assigned[i]);
        }
    }
    queue_.persist();
    return pending.size();
}

void Engine::contact_pending(Instant until) {
    if (clock_.now() > until) return;
    for (ContactQueue::Entry* entry : queue_.ready_to_contact()) {
        const EmailAddress& address = entry->solicitation.scammer_address;
        const auto conv_id = store_.id_for_address(address);
        Conversation* conversation = conv_id ? store_.find(*conv_id) : nullptr;
        if (!conversation) {
            conversation = &store_.create(address, *entry->strategy_id, clock_.now());
            store_.save(*conversation);
        }
        if (conversation->state().phase != ConversationState::Phase::Created) {
            entry->status = ContactQueue::Status::Done;
            queue_.persist();
            continue;
        }
        const auto it = strategies_.find(*entry->strategy_id);
        if (it == strategies_.end()) {
            emit("SKIP conv=" + conversation->id() + " reason=unknown-strategy");
            continue;
        }

        std::string text;
        const std::uint64_t reply_seed =
            mix_seed(config_.seed, fnv1a(conversation->id() + "/solicitation"));
        try {
            text = produce_reply(it->second, *conversation, entry->solicitation.body, reply_seed);
        } catch (const TooLongInboundError&) {
            // should have been screened at import; never contact it
            entry->status = ContactQueue::Status::SkippedTooLong;
            queue_.persist();
            emit("SKIP conv=" + conversation->id() + " reason=too-long-solicitation");
            continue;
        } catch (const ServiceUnavailable& e) {
            ++manifest_.completion_retries;
            emit("RETRY conv=" + conversation->id() + " reason=completion-unavailable");
            continue; // stays Assigned
        }

        // mark before send: a crash here loses one first contact, never
        // duplicates it
        entry->status = ContactQueue::Status::Contacting;
        queue_.persist();
        checkpoint("contact_mark");

        SendResult result;
        try {
            result = transport_.send(OutboundMail{address, config_.self_address,
                                                  reply_subject(entry->solicitation.subject),
                                                  text, std::nullopt});
        } catch (const TransportUnavailable& e) {
            entry->status = ContactQueue::Status::Assigned; // clean failure: retry later
            queue_.persist();
            emit("RETRY conv=" + conversation->id() + " reason=transport-unavailable");
            continue;
        }
        checkpoint("contact_send");

        if (std::holds_alternative<Bounce>(result)) {
            conversation->terminate(TerminationReason::Bounce);
            store_.save(*conversation);
            entry->status = ContactQueue::Status::Done;
            queue_.persist();
            ++manifest_.bounced;
            emit("BOUNCE conv=" + conversation->id());
            continue;
        }

        Message outbound;
        outbound.id = conversation->next_message_id();
        outbound.direction = Direction::Outbound;
        outbound.timestamp = clock_.now();
        outbound.subject = reply_subject(entry->solicitation.subject);
        outbound.body = text;
        outbound.transport_id = std::get<SendReceipt>(result).transport_id;
        conversation->append(std::move(outbound));
        store_.save(*conversation);
        entry->status = ContactQueue::Status::Done;
        queue_.persist();
        ++manifest_.contacted;
        ++manifest_.contacts_per_strategy[*entry->strategy_id];
        emit("CONTACT conv=" + conversation->id() + " strategy=" + *entry->strategy_id +
             " to=" + address.value());
    }
}

void Engine::record_inbound(const InboundMail& mail) {
    Conversation* conversation = nullptr;
    const auto route = thread_inbound(mail, store_);
    if (std::holds_alternative<std::string>(route)) {
        conversation = store_.find(std::get<std::string>(route));
    } else {
        conversation = &store_.create(mail.from, "", mail.received_at,
                                      {AnalysisFlag::UnknownSenderExcluded});
        ++manifest_.unknown_sender;
        emit("UNKNOWN-SENDER conv=" + conversation->id() + " from=" + mail.from.value());
    }
    if (!conversation) return;

    Message inbound;
    inbound.id = conversation->next_message_id();
    inbound.direction = Direction::Inbound;
    inbound.timestamp = mail.received_at;
    inbound.subject = mail.subject;
    inbound.body = mail.body;
    inbound.transport_id = mail.transport_id;
    if (!mail.references.empty()) inbound.in_reply_to = mail.references.back();
    conversation->append(std::move(inbound));
    ++manifest_.inbound_recorded;
    emit("RECV conv=" + conversation->id() + " transport=" + mail.transport_id);

    const std::size_t collapsed = collapse_duplicate_delivery(*conversation, config_.analysis);
    if (collapsed > 0) {
        manifest_.duplicates_collapsed += collapsed;
        emit("COLLAPSE conv=" + conversation->id() + " n=" + std::to_string(collapsed));
    }
    const bool was_flagged = conversation->has_flag(AnalysisFlag::PotentialAutoresponder);
    if (flag_autoresponder(*conversation, config_.analysis) && !was_flagged)
        emit("FLAG conv=" + conversation->id() + " flag=potential_autoresponder");
    store_.save(*conversation);
}

bool Engine::needs_reply(const Conversation& conversation) const {
    if (conversation.state().terminated()) return false;
    if (conversation.messages().empty()) return false;
    const Message& last = conversation.messages().back();
    if (last.direction != Direction::Inbound) return false;
    if (!strategies_.count(conversation.strategy_id())) return false;
    return !store_.is_replied(conversation.id(), last.id);
}

const StrategyConfig* Engine::strategy_for(const Conversation& conversation) const {
    const auto it = strategies_.find(conversation.strategy_id());
    return it == strategies_.end() ? nullptr : &it->second;
}

std::string Engine::produce_reply(const StrategyConfig& strategy,
                                  const Conversation& conversation,
                                  std::string_view target_body, std::uint64_t reply_seed) {
    const Message* previous_outbound = conversation.last_outbound();
    const std::optional<std::string> previous =
        previous_outbound ? std::optional(previous_outbound->body) : std::nullopt;

    if (strategy.kind == StrategyKind::ClassifierTemplate) {
        SplitMix64 rng(reply_seed);
        return template_reply(config_.control, target_body, rng, previous);
    }

    std::string body(target_body);
    const std::string probe = build_prompt_for_body(strategy, body);
    if (!client_.budget().fits_prompt(estimate_tokens(probe)) && config_.split_and_summarize) {
        const std::size_t overhead = estimate_tokens(probe) - estimate_tokens(body);
        body = summarize_in_chunks(client_, body, overhead);
    }

    auto candidates = generate_reply(strategy, body, client_, reply_seed);
    auto selection = select_reply(candidates, config_.safety);
    if (std::holds_alternative<SelectedReply>(selection))
        return std::get<SelectedReply>(selection).text;

    // one regeneration round, then fall back to the control's template bank
    candidates = generate_reply(strategy, body, client_, mix_seed(reply_seed, 1));
    selection = select_reply(candidates, config_.safety);
    if (std::holds_alternative<SelectedReply>(selection))
        return std::get<SelectedReply>(selection).text;

    SplitMix64 rng(reply_seed);
    std::string text = template_reply(config_.control, target_body, rng, previous);
    bump(manifest_.fallback_used);
    emit("FALLBACK conv=" + conversation.id());
    return text;
}

void Engine::handle_reply(Conversation& conversation) {
    const Message* inbound = &conversation.messages().back();
    const StrategyConfig* strategy = strategy_for(conversation);
    if (!strategy) return;

    const std::uint64_t reply_seed =
        mix_seed(config_.seed, fnv1a(conversation.id() + "/" + inbound->id));

    std::string text;
    try {
        text = produce_reply(*strategy, conversation, inbound->body, reply_seed);
    } catch (const TooLongInboundError&) {
        conversation.terminate(TerminationReason::TooLongInbound);
        store_.save(conversation);
        bump(manifest_.terminated_too_long);
        emit("TERMINATE conv=" + conversation.id() + " reason=too_long_inbound");
        return;
    } catch (const ServiceUnavailable&) {
        bump(manifest_.completion_retries);
        emit("RETRY conv=" + conversation.id() + " reason=completion-unavailable");
        return; // unanswered and unmarked: retried next cycle
    }

    if (!store_.mark_replied(conversation.id(), inbound->id)) return; // already handled
    checkpoint("mark");

    SendResult result;
    try {
        result = transport_.send(OutboundMail{conversation.scammer_address(),
                                              config_.self_address,
                                              reply_subject(inbound->subject), text,
                                              inbound->transport_id});
    } catch (const TransportUnavailable&) {
        // clean failure: retract the mark so the reply stays queued
        store_.unmark_replied(conversation.id(), inbound->id);
        emit("RETRY conv=" + conversation.id() + " reason=transport-unavailable");
        return;
    }
    checkpoint("send");

    if (std::holds_alternative<Bounce>(result)) {
        conversation.terminate(TerminationReason::Bounce);
        store_.save(conversation);
        bump(manifest_.bounced);
        emit("BOUNCE conv=" + conversation.id());
        return;
    }

    Message outbound;
    outbound.id = conversation.next_message_id();
    outbound.direction = Direction::Outbound;
    outbound.timestamp = clock_.now();
    outbound.subject = reply_subject(inbound->subject);
    outbound.body = text;
    outbound.transport_id = std::get<SendReceipt>(result).transport_id;
    outbound.in_reply_to = inbound->transport_id;
    conversation.append(std::move(outbound));
    checkpoint("append");
    store_.save(conversation);
    bump(manifest_.outbound_sent);
    emit("SEND conv=" + conversation.id() +
         " transport=" + std::get<SendReceipt>(result).transport_id);
}

void Engine::finish_study_if_due(Instant until) {
    if (study_finished_ || clock_.now() <= until) return;
    study_finished_ = true;
    for (Conversation* c : store_.all_mutable()) {
        if (c->state().terminated()) continue;
        if (c->state().phase == ConversationState::Phase::Created) continue; // never contacted
        c->terminate(TerminationReason::StudyEnd);
        store_.save(*c);
        ++manifest_.terminated_study_end;
        emit("TERMINATE conv=" + c->id() + " reason=study_end");
    }
}

void Engine::poll_cycle(Instant until) {
    finish_study_if_due(until);
    contact_pending(until);

    std::vector<InboundMail> mails;
    try {
        mails = transport_.poll_inbound();
    } catch (const TransportUnavailable&) {
        emit("RETRY poll reason=transport-unavailable");
        return;
    }
    for (const InboundMail& mail : mails) record_inbound(mail);

    finish_study_if_due(until);
    if (clock_.now() > until) return; // record-only mode after study end

    std::vector<Conversation*> ready;
    for (Conversation* c : store_.all_mutable())
        if (needs_reply(*c)) ready.push_back(c);

    if (config_.workers <= 1) {
        for (Conversation* c : ready) {
            try {
                handle_reply(*c);
            } catch (const std::exception& e) {
                // one conversation's failure never stalls the others
                emit("ERROR conv=" + c->id() + " what=" + e.what());
            }
        }
        return;
    }

    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < config_.workers; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= ready.size()) return;
                try {
                    handle_reply(*ready[i]);
                } catch (const std::exception& e) {
                    emit("ERROR conv=" + ready[i]->id() + " what=" + e.what());
                }
            }
        });
    }
    for (std::thread& w : workers) w.join();
}

RunManifest Engine::run(Instant until, std::chrono::seconds poll_interval, Instant stop_at) {
    manifest_.until = format_iso8601(until);
    while (clock_.now() <= stop_at) {
        poll_cycle(until);
        clock_.sleep(poll_interval);
    }
    finish_study_if_due(until);
    return manifest_;
}

} // namespace scambait
