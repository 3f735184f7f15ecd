#pragma once

#include <chrono>
#include <mutex>

namespace parascrape {

class Clock {
public:
    using duration = std::chrono::nanoseconds;
    using time_point = std::chrono::time_point<std::chrono::steady_clock, duration>;

    virtual ~Clock() = default;
    virtual time_point now() = 0;
    virtual void sleep_for(duration d) = 0;
};

class SteadyClock final : public Clock {
public:
    time_point now() override { return std::chrono::steady_clock::now(); }
    void sleep_for(duration d) override;
};

// Virtual time: sleep_for advances the clock instead of blocking.
class ManualClock final : public Clock {
public:
    time_point now() override;
    void sleep_for(duration d) override;
    void advance(duration d);

private:
    std::mutex mu_;
    time_point now_{};
};

}  // namespace parascrape
