#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "parascrape/clock.hpp"

namespace parascrape {

struct TokenBucket {
    double capacity = 0;
    double tokens = 0;
    double refill_rps = 0;
    Clock::time_point last_refill{};
};

// Per-host token bucket. A bucket starts full; each acquire takes one token,
// blocking on the clock until one is available.
class RateLimiter {
public:
    using GrantObserver = std::function<void(const std::string& host, Clock::time_point granted)>;

    RateLimiter(double refill_rps, double capacity, Clock& clock);

    void acquire(const std::string& host);
    bool try_acquire(const std::string& host);

    // Invoked under the limiter lock at the moment a token is granted.
    void set_observer(GrantObserver observer);

    TokenBucket snapshot(const std::string& host);
    double refill_rps() const { return refill_rps_; }
    double capacity() const { return capacity_; }

private:
    TokenBucket& bucket_locked(const std::string& host, Clock::time_point now);
    // Takes a token or returns how long to wait for one.
    Clock::duration take_or_wait_locked(const std::string& host);

    double refill_rps_;
    double capacity_;
    Clock& clock_;
    std::mutex mu_;
    std::map<std::string, TokenBucket> buckets_;
    GrantObserver observer_;
};

}  // namespace parascrape
