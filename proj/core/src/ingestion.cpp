#include "scambait/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "scambait/errors.hpp"
#include "scambait/rfc5322.hpp"

namespace scambait {

using nlohmann::json;

namespace {

struct RawRecord {
    std::optional<ScamSolicitation> solicitation;
    std::string error; // set when parsing failed
    std::string source_ref;
};

// RFC 4180: quoted fields may contain commas, newlines and doubled quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
            row.clear();
        } else {
            field += c;
        }
        ++i;
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RawRecord> read_csv_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    const auto rows = parse_csv(text);
    std::vector<RawRecord> records;
    if (rows.empty()) return records;

    std::size_t start = 0;
    if (!rows[0].empty() && rows[0][0] == "address") start = 1; // header row

    for (std::size_t r = start; r < rows.size(); ++r) {
        RawRecord record;
        record.source_ref = path.filename().string() + ":" + std::to_string(r + 1);
        const auto& row = rows[r];
        if (row.size() < 3) {
            record.error = "expected 3 columns, got " + std::to_string(row.size());
        } else if (auto address = EmailAddress::parse(row[0]); !address) {
            record.error = "malformed address: " + row[0];
        } else if (row[2].empty()) {
            record.error = "empty body";
        } else {
            record.solicitation =
                ScamSolicitation{*address, row[1], row[2], record.source_ref};
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<RawRecord> read_mail_records(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<RawRecord> records;
    for (const auto& file : files) {
        RawRecord record;
        record.source_ref = file.filename().string();
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            record.error = "unreadable";
            records.push_back(std::move(record));
            continue;
        }
        std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const ParsedMail mail = parse_mail(raw);
        if (!mail.from) {
            record.error = "missing or malformed From header";
        } else if (mail.body.empty()) {
            record.error = "empty body";
        } else {
            record.solicitation =
                ScamSolicitation{*mail.from, mail.subject, mail.body, record.source_ref};
        }
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace

std::string ImportReport::to_json() const {
    json j;
    j["imported"] = imported;
    j["duplicate"] = duplicate;
    j["already_contacted"] = already_contacted;
    j["parse_failure"] = parse_failure;
    j["too_long"] = too_long;
    j["failures"] = failures;
    return j.dump(2);
}

ImportResult import_batch(const std::filesystem::path& path,
                          const std::function<bool(const EmailAddress&)>& already_contacted) {
    if (!std::filesystem::exists(path)) throw IoFailure("no such path: " + path.string());

    std::vector<RawRecord> records;
    if (std::filesystem::is_directory(path)) {
        records = read_mail_records(path);
    } else {
        records = read_csv_records(path);
    }
    if (records.empty()) throw EmptyBatch("no records found in " + path.string());

    ImportResult result;
    std::set<std::string> seen;
    for (RawRecord& record : records) {
        if (!record.solicitation) {
            ++result.report.parse_failure;
            result.report.failures.push_back(record.source_ref + ": " + record.error);
            continue;
        }
        const std::string& address = record.solicitation->scammer_address.value();
        if (!seen.insert(address).second) {
            ++result.report.duplicate;
            continue;
        }
        if (already_contacted && already_contacted(record.solicitation->scammer_address)) {
            ++result.report.already_contacted;
            continue;
        }
        ++result.report.imported;
        result.accepted.push_back(std::move(*record.solicitation));
    }
    if (result.accepted.empty() && result.report.parse_failure == records.size())
        throw EmptyBatch("every record in " + path.string() + " failed to parse");
    return result;
}

LengthScreen screen_length(const ScamSolicitation& solicitation, const TokenBudget& budget,
                           std::size_t strategy_overhead_tokens) {
    const std::size_t prompt_tokens =
        strategy_overhead_tokens + estimate_tokens(solicitation.body);
    return budget.fits_prompt(prompt_tokens) ? LengthScreen::Accepted
                                             : LengthScreen::TooLongToContact;
}

ContactQueue::ContactQueue(std::filesystem::path file) : file_(std::move(file)) {}

namespace {

std::string_view status_name(ContactQueue::Status s) {
    switch (s) {
    case ContactQueue::Status::Pending: return "pending";
    case ContactQueue::Status::Assigned: return "assigned";
    case ContactQueue::Status::Contacting: return "contacting";
    case ContactQueue::Status::Done: return "done";
    case ContactQueue::Status::SkippedTooLong: return "skipped_too_long";
    }
    return "pending";
}

std::optional<ContactQueue::Status> status_from(std::string_view s) {
    using Status = ContactQueue::Status;
    if (s == "pending") return Status::Pending;
    if (s == "assigned") return Status::Assigned;
    if (s == "contacting") return Status::Contacting;
    if (s == "done") return Status::Done;
    if (s == "skipped_too_long") return Status::SkippedTooLong;
    return std::nullopt;
}

} // namespace

void ContactQueue::load() {
    entries_.clear();
    std::ifstream in(file_, std::ios::binary);
    if (!in) return; // no queue yet
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw IoFailure("corrupt contact queue: " + file_.string());
    for (const auto& e : j) {
        auto address = EmailAddress::parse(e.at("address").get<std::string>());
        if (!address) continue;
        Entry entry{ScamSolicitation{*address, e.value("subject", std::string{}),
                                     e.at("body").get<std::string>(),
                                     e.value("source_ref", std::string{})},
                    std::nullopt,
                    status_from(e.value("status", "pending")).value_or(Status::Pending)};
        if (e.contains("strategy_id") && !e["strategy_id"].is_null())
            entry.strategy_id = e["strategy_id"].get<std::string>();
        entries_.push_back(std::move(entry));
    }
}

void ContactQueue::enqueue(const ScamSolicitation& solicitation, Status status) {
    if (contains(solicitation.scammer_address)) return;
    entries_.push_back(Entry{solicitation, std::nullopt, status});
}

bool ContactQueue::contains(const EmailAddress& address) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
        return e.solicitation.scammer_address == address;
    });
}

std::vector<ContactQueue::Entry*> ContactQueue::pending_assignment() {
    std::vector<Entry*> out;
    for (Entry& e : entries_)
        if (e.status == Status::Pending) out.push_back(&e);
    return out;
}

std::vector<ContactQueue::Entry*> ContactQueue::ready_to_contact() {
    std::vector<Entry*> out;
    for (Entry& e : entries_)
        if (e.status == Status::Assigned && e.strategy_id) out.push_back(&e);
    return out;
}

void ContactQueue::persist() {
    json j = json::array();
    for (const Entry& e : entries_) {
        json entry;
        entry["address"] = e.solicitation.scammer_address.value();
        entry["subject"] = e.solicitation.subject;
        entry["body"] = e.solicitation.body;
        entry["source_ref"] = e.solicitation.source_ref;
        entry["strategy_id"] = e.strategy_id ? json(*e.strategy_id) : json(nullptr);
        entry["status"] = std::string(status_name(e.status));
        j.push_back(std::move(entry));
    }
    const std::filesystem::path tmp = file_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot write " + tmp.string());
        out << j.dump(2) << "\n";
        if (!out.flush()) throw IoFailure("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file_, ec);
    if (ec) throw IoFailure("cannot persist queue: " + ec.message());
}

} // namespace scambait
