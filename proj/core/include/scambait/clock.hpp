#pragma once

#include <chrono>

#include "scambait/time_utils.hpp"

namespace scambait {

// Injected everywhere timestamps are read so simulated runs never touch
// wall-clock time.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Instant now() const = 0;
    virtual void sleep(std::chrono::seconds duration) = 0;
};

class SystemClock final : public Clock {
public:
    Instant now() const override;
    void sleep(std::chrono::seconds duration) override;
};

class SimClock final : public Clock {
public:
    explicit SimClock(Instant start) : now_(start) {}

    Instant now() const override { return now_; }
    // sleeping in sim just advances time
    void sleep(std::chrono::seconds duration) override { now_ += duration; }
    void advance(std::chrono::seconds step) { now_ += step; }

private:
    Instant now_;
};

} // namespace scambait
