#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scambait/completion.hpp"
#include "scambait/email_address.hpp"

namespace scambait {

struct ScamSolicitation {
    EmailAddress scammer_address;
    std::string subject;
    std::string body;
    std::string source_ref; // provenance: filename or file:line
};

struct ImportReport {
    std::size_t imported = 0;
    std::size_t duplicate = 0;
    std::size_t already_contacted = 0;
    std::size_t parse_failure = 0;
    std::size_t too_long = 0;
    std::vector<std::string> failures; // one diagnostic per bad record

    std::string to_json() const;
};

struct ImportResult {
    std::vector<ScamSolicitation> accepted;
    ImportReport report;
};

// Imports a directory of RFC 5322 files or a CSV with header
// address,subject,body (RFC 4180 quoting). Deduplicates by scammer address
// keeping the first occurrence; addresses the predicate recognises are
// dropped as already contacted. Throws EmptyBatch when no records parse.
ImportResult import_batch(
    const std::filesystem::path& path,
    const std::function<bool(const EmailAddress&)>& already_contacted = nullptr);

enum class LengthScreen { Accepted, TooLongToContact };

// A solicitation is contactable when the estimated first-contact prompt
// (strategy overhead + body) still leaves the response reserve within budget.
LengthScreen screen_length(const ScamSolicitation& solicitation, const TokenBudget& budget,
                           std::size_t strategy_overhead_tokens);

// Pending first contacts, persisted next to the store so interrupted runs
// resume without re-importing. Entries move pending -> assigned ->
// contacting -> done; "contacting" entries survive a crash un-retried so a
// first contact is never sent twice.
class ContactQueue {
public:
    enum class Status { Pending, Assigned, Contacting, Done, SkippedTooLong };

    struct Entry {
        ScamSolicitation solicitation;
        std::optional<std::string> strategy_id;
        Status status = Status::Pending;
    };

    explicit ContactQueue(std::filesystem::path file);

    void load();
    void enqueue(const ScamSolicitation& solicitation, Status status = Status::Pending);
    bool contains(const EmailAddress& address) const;

    std::vector<Entry*> pending_assignment();
    std::vector<Entry*> ready_to_contact();
    void persist();

    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& entries() { return entries_; }

private:
    std::filesystem::path file_;
    std::vector<Entry> entries_;
};

} // namespace scambait
