#include "scambait/sim.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "scambait/analysis.hpp"
#include "scambait/defaults.hpp"
#include "scambait/errors.hpp"
#include "scambait/metrics.hpp"

namespace scambait {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 6> kNames = {
    "Mrs. Adaeze Okafor",  "Barrister Samuel Cole", "Dr. Elena Varga",
    "Mr. Kwame Mensah",    "Sister Mary Obi",       "Engineer Tunde Alabi",
};

constexpr std::array<const char*, 4> kOpeners = {
    "The documents are nearly ready on my side.",
    "My associate is preparing the remaining papers.",
    "The office requires one further confirmation from you.",
    "Everything is in order here and we must not delay.",
};

constexpr std::array<const char*, 4> kQuestions = {
    "What name should appear on the forms?",
    "Which bank do you prefer for the arrangement?",
    "When can you send your confirmation?",
    "How soon can you complete your part?",
};

std::string local_part(PersonaBehavior behavior, std::size_t index) {
    std::string name(to_string(behavior));
    std::replace(name.begin(), name.end(), '_', '-');
    return name + "-" + std::to_string(index);
}

std::string csv_quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string_view to_string(PersonaBehavior b) {
    switch (b) {
    case PersonaBehavior::Persistent: return "persistent";
    case PersonaBehavior::Ghost: return "ghost";
    case PersonaBehavior::Autoresponder: return "autoresponder";
    case PersonaBehavior::SuspiciousAuthenticator: return "suspicious_authenticator";
    case PersonaBehavior::AnnoyedThenPersist: return "annoyed_then_persist";
    case PersonaBehavior::DuplicateSender: return "duplicate_sender";
    case PersonaBehavior::InvalidAddress: return "invalid_address";
    case PersonaBehavior::LongMailer: return "long_mailer";
    }
    return "persistent";
}

std::optional<PersonaBehavior> persona_behavior_from_string(std::string_view s) {
    if (s == "persistent") return PersonaBehavior::Persistent;
    if (s == "ghost") return PersonaBehavior::Ghost;
    if (s == "autoresponder") return PersonaBehavior::Autoresponder;
    if (s == "suspicious_authenticator") return PersonaBehavior::SuspiciousAuthenticator;
    if (s == "annoyed_then_persist") return PersonaBehavior::AnnoyedThenPersist;
    if (s == "duplicate_sender") return PersonaBehavior::DuplicateSender;
    if (s == "invalid_address") return PersonaBehavior::InvalidAddress;
    if (s == "long_mailer") return PersonaBehavior::LongMailer;
    return std::nullopt;
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ScenarioInvalid("malformed scenario JSON");

    ScenarioConfig config;
    config.seed = j.value("seed", config.seed);
    if (j.contains("start")) {
        auto start = parse_iso8601(j["start"].get<std::string>());
        if (!start) throw ScenarioInvalid("bad start timestamp");
        config.start = *start;
    }
    config.clock_step = std::chrono::seconds(j.value("clock_step_seconds", 3600));
    config.study_days = j.value("study_days", config.study_days);
    config.extra_days = j.value("extra_days", config.extra_days);
    if (config.study_days < 1) throw ScenarioInvalid("study_days must be >= 1");
    if (config.clock_step.count() < 1) throw ScenarioInvalid("clock_step must be positive");
    if (j.contains("strategies"))
        config.strategy_ids = j["strategies"].get<std::vector<std::string>>();
    config.budget.total = j.value("budget_tokens", config.budget.total);
    config.budget.response_reserve = j.value("response_reserve", config.budget.response_reserve);

    if (!j.contains("personas") || !j["personas"].is_array() || j["personas"].empty())
        throw ScenarioInvalid("scenario needs a personas array");
    for (const auto& p : j["personas"]) {
        PersonaSpec spec;
        const auto behavior = persona_behavior_from_string(p.at("behavior").get<std::string>());
        if (!behavior)
            throw ScenarioInvalid("unknown persona behavior: " +
                                  p.at("behavior").get<std::string>());
        spec.behavior = *behavior;
        spec.param = p.value("param", 0);
        spec.count = p.value("count", std::size_t{1});
        spec.reply_delay = std::chrono::seconds(p.value("reply_delay_seconds", 7200));
        if (spec.count == 0) throw ScenarioInvalid("persona count must be >= 1");
        if (spec.reply_delay.count() < 0) throw ScenarioInvalid("reply_delay must be >= 0");
        config.personas.push_back(spec);
    }
    return config;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ScenarioInvalid("cannot read scenario file " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

Persona::Persona(PersonaBehavior behavior, int param, std::size_t index, std::uint64_t seed,
                 std::chrono::seconds reply_delay)
    : behavior_(behavior),
      param_(param),
      index_(index),
      address_(email(local_part(behavior, index) + "@sim.example")),
      reply_delay_(reply_delay),
      rng_(seed) {
    if (param_ <= 0) {
        switch (behavior_) {
        case PersonaBehavior::Persistent:
        case PersonaBehavior::DuplicateSender: param_ = 4; break;
        case PersonaBehavior::SuspiciousAuthenticator:
        case PersonaBehavior::AnnoyedThenPersist: param_ = 2; break;
        case PersonaBehavior::LongMailer: param_ = 20000; break;
        default: param_ = 0; break;
        }
    }

    const std::string name = kNames[rng_.below(kNames.size())];
    const std::uint64_t amount = 2 + rng_.below(18);
    switch (behavior_) {
    case PersonaBehavior::Autoresponder:
        solicitation_subject_ = "Your pending delivery";
        solicitation_body_ =
            "Our office holds a consignment and an unpaid invoice in your name. Contact our "
            "payment desk at once to settle the account and arrange shipment.";
        fixed_body_ =
            "Thank you for contacting our claims office. Your file is being processed and an "
            "agent will respond to you shortly. Do not reply to this automated notice.";
        break;
    case PersonaBehavior::SuspiciousAuthenticator:
        solicitation_subject_ = "A lucrative opportunity";
        solicitation_body_ =
            "I represent private investors seeking a discreet partner for a lucrative venture "
            "with guaranteed returns. A modest initial investment yields remarkable profit. "
            "Shall I send you the portfolio? - " + name;
        break;
    case PersonaBehavior::AnnoyedThenPersist:
        solicitation_subject_ = "Hello my dear";
        solicitation_body_ =
            "I found your address and felt my heart stir. I am a lonely widow seeking true "
            "love and a lasting relationship. Write to me soon, darling. Yours, " + name;
        break;
    case PersonaBehavior::DuplicateSender:
        solicitation_subject_ = "FINAL NOTIFICATION OF WINNINGS";
        solicitation_body_ =
            "Your address emerged as a winner in our international lottery draw. A prize of " +
            std::to_string(amount * 50) +
            " thousand euros awaits. Contact our claims office with your winning reference to "
            "claim your prize.";
        break;
    default:
        solicitation_subject_ = "URGENT BUSINESS PROPOSAL";
        solicitation_body_ =
            "Dear friend, I am " + name +
            ", personal attorney to a late client of mutual acquaintance. An estate of " +
            std::to_string(amount) +
            " million dollars awaits a beneficiary and I seek your urgent assistance with the "
            "transfer of this fund. Reply with haste and in confidence.";
        break;
    }
}

ScamSolicitation Persona::solicitation() const {
    return {address_, solicitation_subject_, solicitation_body_,
            "sim:" + std::string(to_string(behavior_)) + "-" + std::to_string(index_)};
}

std::string Persona::scripted_reply(int round) {
    std::string body = "Thank you for your swift response. ";
    body += kOpeners[rng_.below(kOpeners.size())];
    body += " ";
    body += kQuestions[rng_.below(kQuestions.size())];
    body += " We are now at step " + std::to_string(round) + ".";
    return body;
}

Persona::Action Persona::step(const OutboundMail& received) {
    if (terminated_) return {};
    ++rounds_received_;
    const int round = rounds_received_;
    const std::string subject =
        received.subject.rfind("Re:", 0) == 0 ? received.subject : "Re: " + received.subject;

    switch (behavior_) {
    case PersonaBehavior::Ghost:
    case PersonaBehavior::InvalidAddress:
        return {};
    case PersonaBehavior::Persistent:
    case PersonaBehavior::DuplicateSender: {
        if (round > param_) {
            terminated_ = true;
            return {Action::Kind::Terminate};
        }
        return {Action::Kind::Reply, subject, scripted_reply(round),
                behavior_ == PersonaBehavior::DuplicateSender};
    }
    case PersonaBehavior::Autoresponder:
        return {Action::Kind::Reply, subject, fixed_body_, false};
    case PersonaBehavior::SuspiciousAuthenticator: {
        if (round < param_) return {Action::Kind::Reply, subject, scripted_reply(round), false};
        if (round == param_)
            return {Action::Kind::Reply, subject,
                    "Before we continue I must be certain you are a real person. Resend to me "
                    "the first email I sent you, word for word, or we are finished.",
                    false};
        // the authentication test: our reply must quote the original
        // solicitation verbatim
        if (received.body.find(solicitation_body_) != std::string::npos)
            return {Action::Kind::Reply, subject,
                    "Very well, I am satisfied. " + scripted_reply(round), false};
        terminated_ = true;
        return {Action::Kind::Terminate};
    }
    case PersonaBehavior::AnnoyedThenPersist: {
        if (round == param_)
            return {Action::Kind::Reply, subject,
                    "I already told you this. Why do you keep asking the same questions? Pay "
                    "attention and let us proceed seriously.",
                    false};
        return {Action::Kind::Reply, subject, scripted_reply(round), false};
    }
    case PersonaBehavior::LongMailer: {
        if (round > 1) return {};
        std::string body;
        body.reserve(static_cast<std::size_t>(param_) + 32);
        while (body.size() < static_cast<std::size_t>(param_))
            body += "Read this carefully and do not skip a single word. ";
        body.resize(static_cast<std::size_t>(param_));
        return {Action::Kind::Reply, subject, std::move(body), false};
    }
    }
    return {};
}

ScenarioRunner::ScenarioRunner(ScenarioConfig config, std::filesystem::path workdir)
    : config_(std::move(config)),
      workdir_(std::move(workdir)),
      clock_(config_.start),
      loopback_(clock_),
      completion_(config_.budget, MockBehavior{config_.seed}) {
    if (config_.personas.empty()) throw ScenarioInvalid("scenario has no personas");
    std::error_code ec;
    std::filesystem::create_directories(workdir_, ec);
    if (ec) throw ScenarioInvalid("cannot create scenario workdir " + workdir_.string());
}

ScenarioResult ScenarioRunner::run() {
    // personas; every instance gets its own derived rng stream
    std::vector<std::unique_ptr<Persona>> personas;
    std::map<std::string, Persona*> by_address;
    std::size_t index = 0;
    for (const PersonaSpec& spec : config_.personas) {
        for (std::size_t i = 0; i < spec.count; ++i, ++index) {
            auto persona = std::make_unique<Persona>(
                spec.behavior, spec.param, index,
                mix_seed(config_.seed, fnv1a(local_part(spec.behavior, index))),
                spec.reply_delay);
            if (spec.behavior == PersonaBehavior::InvalidAddress)
                loopback_.mark_invalid_recipient(persona->address());
            by_address[persona->address().value()] = persona.get();
            personas.push_back(std::move(persona));
        }
    }

    // feed the real ingestion path
    const auto csv_path = workdir_ / "solicitations.csv";
    {
        std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
        csv << "address,subject,body\n";
        for (const auto& persona : personas) {
            const ScamSolicitation s = persona->solicitation();
            csv << csv_quote(s.scammer_address.value()) << "," << csv_quote(s.subject) << ","
                << csv_quote(s.body) << "\n";
        }
    }

    ConversationStore store(workdir_ / "store");
    ContactQueue queue(workdir_ / "queue.json");

    EngineConfig engine_config;
    engine_config.self_address = email("baiter@baitbox.example");
    for (const StrategyConfig& s : defaults::strategies()) {
        if (config_.strategy_ids.empty() ||
            std::find(config_.strategy_ids.begin(), config_.strategy_ids.end(), s.id) !=
                config_.strategy_ids.end())
            engine_config.strategies.push_back(s);
    }
    if (engine_config.strategies.empty()) throw ScenarioInvalid("no known strategies selected");
    engine_config.control = {defaults::classifier(), defaults::template_bank()};
    engine_config.safety = defaults::safety_policy();
    engine_config.seed = config_.seed;

    Engine engine(engine_config, store, queue, loopback_, completion_, clock_);
    std::vector<std::string> transcript;
    engine.event_sink = [&](const std::string& line) { transcript.push_back(line); };
    auto runner_event = [&](const std::string& line) {
        transcript.push_back("t=" + format_iso8601(clock_.now()) + " " + line);
    };

    ImportResult imported = import_batch(csv_path, [&](const EmailAddress& address) {
        return store.id_for_address(address).has_value();
    });
    std::size_t overhead = 0;
    for (const StrategyConfig& s : engine_config.strategies) {
        if (s.kind == StrategyKind::ClassifierTemplate) continue;
        overhead = std::max(overhead, estimate_tokens(build_prompt_for_body(s, "x")) - 1);
    }
    for (const ScamSolicitation& s : imported.accepted) {
        if (screen_length(s, config_.budget, overhead) == LengthScreen::TooLongToContact) {
            ++imported.report.too_long;
            queue.enqueue(s, ContactQueue::Status::SkippedTooLong);
        } else {
            queue.enqueue(s);
        }
    }
    queue.persist();
    runner_event("IMPORT imported=" + std::to_string(imported.report.imported) +
                 " duplicate=" + std::to_string(imported.report.duplicate) +
                 " too_long=" + std::to_string(imported.report.too_long));

    engine.assign_pending(config_.seed);

    const Instant until = config_.start + std::chrono::days{config_.study_days};
    const Instant stop = until + std::chrono::days{config_.extra_days};

    std::vector<ScheduledDelivery> pending;
    std::uint64_t seq = 0;

    while (clock_.now() <= stop) {
        // deliveries that came due since the last cycle, in (due, seq) order
        std::stable_sort(pending.begin(), pending.end(),
                         [](const ScheduledDelivery& a, const ScheduledDelivery& b) {
                             return a.due != b.due ? a.due < b.due : a.seq < b.seq;
                         });
        auto cutoff = std::find_if(pending.begin(), pending.end(),
                                   [&](const ScheduledDelivery& d) { return d.due > clock_.now(); });
        for (auto it = pending.begin(); it != cutoff; ++it) {
            loopback_.inject_inbound(InboundMail{
                .from = it->from,
                .to = engine_config.self_address,
                .subject = it->subject,
                .body = it->body,
                .transport_id = "sim-" + std::to_string(it->seq),
                .references = {it->in_reply_to},
                .received_at = it->due,
            });
        }
        pending.erase(pending.begin(), cutoff);

        engine.poll_cycle(until);

        for (const LoopbackTransport::Delivery& delivery : loopback_.drain_deliveries()) {
            const auto it = by_address.find(delivery.mail.to.value());
            if (it == by_address.end()) continue;
            Persona& persona = *it->second;
            if (persona.terminated()) continue;
            const Persona::Action action = persona.step(delivery.mail);
            switch (action.kind) {
            case Persona::Action::Kind::Silence:
                break;
            case Persona::Action::Kind::Terminate:
                runner_event("PERSONA-TERMINATE addr=" + persona.address().value() +
                             " round=" + std::to_string(persona.rounds_received()));
                break;
            case Persona::Action::Kind::Reply: {
                const Instant due = clock_.now() + persona.reply_delay();
                pending.push_back({due, seq++, persona.address(), action.subject, action.body,
                                   delivery.transport_id});
                if (action.duplicate_delivery)
                    pending.push_back({due + std::chrono::seconds{5}, seq++, persona.address(),
                                       action.subject, action.body, delivery.transport_id});
                break;
            }
            }
        }

        clock_.advance(config_.clock_step);
    }
    engine.finish_study_if_due(until);

    run_filtration(store, engine_config.analysis);

    std::vector<std::string> strategy_ids;
    for (const StrategyConfig& s : engine_config.strategies) strategy_ids.push_back(s.id);
    const StudyWindow window{config_.start, until};
    const std::vector<StrategyReport> reports = build_reports(store, strategy_ids, window);

    ScenarioResult result;
    RunManifest manifest = engine.manifest();
    manifest.mode = "sim";
    manifest.until = format_iso8601(until);
    result.manifest = std::move(manifest);
    for (const std::string& line : transcript) {
        result.transcript += line;
        result.transcript += "\n";
    }
    result.report_csv = render_csv(reports);
    result.counts_csv = render_counts_csv(reports);
    result.store_dir = store.dir();
    return result;
}

} // namespace scambait
