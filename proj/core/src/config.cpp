#include "scambait/config.hpp"

#include <fstream>

#include <json.hpp>

#include "scambait/defaults.hpp"
#include "scambait/errors.hpp"

namespace scambait {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigInvalid("cannot read config file " + file.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigInvalid("malformed JSON in " + file.string());
    return j;
}

StrategyConfig strategy_from_json(const json& j) {
    StrategyConfig config;
    config.id = j.at("id").get<std::string>();
    const auto kind = strategy_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw ConfigInvalid("unknown strategy kind in '" + config.id + "'");
    config.kind = *kind;
    config.preamble = j.value("preamble", std::string{});
    if (j.contains("exemplars"))
        for (const auto& pair : j["exemplars"])
            config.exemplars.push_back(
                {pair.at("scammer").get<std::string>(), pair.at("baiter").get<std::string>()});
    if (j.contains("sampling")) {
        config.sampling.temperature = j["sampling"].value("temperature", 0.2);
        config.sampling.top_p = j["sampling"].value("top_p", 0.2);
    }
    if (j.contains("context_policy")) {
        const auto policy = context_policy_from_string(j["context_policy"].get<std::string>());
        if (!policy) throw ConfigInvalid("unknown context_policy in '" + config.id + "'");
        config.context_policy = *policy;
    }
    config.candidates_k = j.value("candidates_k", defaults::kCandidates);
    validate(config);
    return config;
}

} // namespace

std::vector<StrategyConfig> load_strategies(const std::filesystem::path& file) {
    const json j = read_json(file);
    if (!j.is_array()) throw ConfigInvalid("strategies file must hold an array");
    std::vector<StrategyConfig> out;
    for (const auto& entry : j) out.push_back(strategy_from_json(entry));
    if (out.empty()) throw ConfigInvalid("strategies file is empty");
    return out;
}

TemplateBank load_template_bank(const std::filesystem::path& file) {
    const json j = read_json(file);
    TemplateBank bank;
    for (const auto& [category, templates] : j.items()) {
        std::vector<std::string> texts = templates.get<std::vector<std::string>>();
        if (texts.empty())
            throw ConfigInvalid("template category '" + category + "' has no templates");
        bank.templates[category] = std::move(texts);
    }
    if (bank.templates.empty()) throw ConfigInvalid("template bank is empty");
    return bank;
}

SafetyPolicy load_safety_policy(const std::filesystem::path& file) {
    const json j = read_json(file);
    SafetyPolicy policy = defaults::safety_policy();
    if (j.contains("callout_lexicon"))
        policy.callout_lexicon = j["callout_lexicon"].get<std::vector<std::string>>();
    if (j.contains("self_reveal_lexicon"))
        policy.self_reveal_lexicon = j["self_reveal_lexicon"].get<std::vector<std::string>>();
    if (j.contains("pii")) {
        const json& pii = j["pii"];
        policy.pii.min_phone_digits = pii.value("min_phone_digits", policy.pii.min_phone_digits);
        policy.pii.min_account_digits =
            pii.value("min_account_digits", policy.pii.min_account_digits);
        if (pii.contains("street_words"))
            policy.pii.street_words = pii["street_words"].get<std::vector<std::string>>();
    }
    policy.allow_fake_pii = j.value("allow_fake_pii", policy.allow_fake_pii);
    return policy;
}

void load_classifier_config(const std::filesystem::path& file,
                            std::vector<CategoryLexicon>& lexicons, std::string& fallback) {
    const json j = read_json(file);
    lexicons.clear();
    for (const auto& entry : j.at("categories"))
        lexicons.push_back({entry.at("category").get<std::string>(),
                            entry.at("phrases").get<std::vector<std::string>>()});
    fallback = j.at("fallback").get<std::string>();
}

BaselineRow load_baseline(const std::filesystem::path& file) {
    const json j = read_json(file);
    BaselineRow row = defaults::baseline();
    row.label = j.value("label", row.label);
    row.mean_replies = j.value("mean_replies", row.mean_replies);
    row.max_replies = j.value("max_replies", row.max_replies);
    row.max_time_days = j.value("max_time_days", row.max_time_days);
    row.compare_strategy_id = j.value("compare_strategy", row.compare_strategy_id);
    return row;
}

AppConfig AppConfig::defaults() {
    AppConfig config;
    config.strategies = defaults::strategies();
    config.bank = defaults::template_bank();
    config.safety = defaults::safety_policy();
    config.baseline = defaults::baseline();
    config.classifier_lexicons = defaults::classifier_lexicons();
    config.classifier_fallback = defaults::kClassifierFallback;
    return config;
}

AppConfig AppConfig::load(const std::filesystem::path& file) {
    const json j = read_json(file);
    AppConfig config = defaults();
    const auto base = file.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };

    if (j.contains("store")) config.store_dir = resolve(j["store"].get<std::string>());
    config.self_address = j.value("self_address", config.self_address);

    if (j.contains("transport")) {
        const json& t = j["transport"];
        const std::string kind = t.value("kind", "maildir");
        if (kind == "maildir")
            config.transport_kind = TransportKind::Maildir;
        else if (kind == "loopback")
            config.transport_kind = TransportKind::Loopback;
        else
            throw ConfigInvalid("unknown transport kind '" + kind + "'");
        if (t.contains("root")) config.maildir_root = resolve(t["root"].get<std::string>());
    }

    if (j.contains("completion")) {
        const json& c = j["completion"];
        const std::string kind = c.value("kind", "mock");
        if (kind == "mock")
            config.completion_kind = CompletionKind::Mock;
        else if (kind == "http")
            config.completion_kind = CompletionKind::Http;
        else
            throw ConfigInvalid("unknown completion kind '" + kind + "'");
        config.budget.total = c.value("budget_tokens", config.budget.total);
        config.budget.response_reserve = c.value("response_reserve", config.budget.response_reserve);
        config.mock_seed = c.value("mock_seed", config.mock_seed);
        if (c.contains("http")) {
            const json& h = c["http"];
            config.http.host = h.value("host", config.http.host);
            config.http.port = h.value("port", config.http.port);
            config.http.path = h.value("path", config.http.path);
            config.http.model = h.value("model", config.http.model);
            config.http.api_key_env = h.value("api_key_env", config.http.api_key_env);
            config.http.requests_per_minute =
                h.value("requests_per_minute", config.http.requests_per_minute);
        }
        config.http.budget = config.budget;
    }

    if (j.contains("strategies_file"))
        config.strategies = load_strategies(resolve(j["strategies_file"].get<std::string>()));
    if (j.contains("templates_file"))
        config.bank = load_template_bank(resolve(j["templates_file"].get<std::string>()));
    if (j.contains("safety_file"))
        config.safety = load_safety_policy(resolve(j["safety_file"].get<std::string>()));
    if (j.contains("classifier_file"))
        load_classifier_config(resolve(j["classifier_file"].get<std::string>()),
                               config.classifier_lexicons, config.classifier_fallback);
    if (j.contains("baseline_file"))
        config.baseline = load_baseline(resolve(j["baseline_file"].get<std::string>()));

    if (j.contains("analysis")) {
        const json& a = j["analysis"];
        config.analysis.duplicate_window =
            std::chrono::seconds(a.value("duplicate_window_seconds",
                                         config.analysis.duplicate_window.count()));
        config.analysis.autoresponder_threshold =
            a.value("autoresponder_threshold", config.analysis.autoresponder_threshold);
    }

    config.workers = j.value("workers", config.workers);
    config.poll_interval = std::chrono::seconds(
        j.value("poll_interval_seconds", config.poll_interval.count()));
    config.split_and_summarize = j.value("split_and_summarize", config.split_and_summarize);
    return config;
}

} // namespace scambait
