#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scambait {

// Base for all recoverable runtime failures raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

class TransportUnavailable : public Error {
public:
    using Error::Error;
};

class ServiceUnavailable : public Error {
public:
    using Error::Error;
};

// Caller violated the prompt/response token budget invariant. A bug, not a
// runtime condition, hence logic_error.
class BudgetExceeded : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class AppendToTerminated : public Error {
public:
    using Error::Error;
};

class InvalidTransition : public Error {
public:
    using Error::Error;
};

class UnknownConversation : public Error {
public:
    using Error::Error;
};

class UnknownCategory : public Error {
public:
    using Error::Error;
};

class EmptyText : public Error {
public:
    using Error::Error;
};

class EmptyInbound : public Error {
public:
    using Error::Error;
};

class EmptyBatch : public Error {
public:
    using Error::Error;
};

class NoStrategies : public Error {
public:
    using Error::Error;
};

class NoInbound : public Error {
public:
    using Error::Error;
};

class NothingContacted : public Error {
public:
    using Error::Error;
};

// Inbound text too large to fit any completion request; the conversation is
// terminated rather than answered.
class TooLongInboundError : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

class ScenarioInvalid : public Error {
public:
    using Error::Error;
};

class SchemaMismatch : public Error {
public:
    SchemaMismatch(const std::string& what, std::vector<std::string> fields)
        : Error(what), missing_fields(std::move(fields)) {}
    std::vector<std::string> missing_fields;
};

} // namespace scambait
