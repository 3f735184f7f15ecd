#include "parascrape/rate_limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parascrape {

RateLimiter::RateLimiter(double refill_rps, double capacity, Clock& clock)
    : refill_rps_(refill_rps), capacity_(capacity), clock_(clock) {
    if (!(refill_rps > 0.0)) throw std::invalid_argument("rate limit must be > 0 requests/second");
    if (!(capacity >= 1.0)) throw std::invalid_argument("bucket capacity must be >= 1");
}

void RateLimiter::set_observer(GrantObserver observer) {
    std::lock_guard lock(mu_);
    observer_ = std::move(observer);
}

TokenBucket& RateLimiter::bucket_locked(const std::string& host, Clock::time_point now) {
    auto it = buckets_.find(host);
    if (it == buckets_.end()) {
        it = buckets_.emplace(host, TokenBucket{capacity_, capacity_, refill_rps_, now}).first;
        return it->second;
    }
    auto& b = it->second;
    if (now > b.last_refill) {
        double elapsed = std::chrono::duration<double>(now - b.last_refill).count();
        b.tokens = std::min(b.capacity, b.tokens + elapsed * b.refill_rps);
        b.last_refill = now;
    }
    return b;
}

Clock::duration RateLimiter::take_or_wait_locked(const std::string& host) {
    auto now = clock_.now();
    auto& b = bucket_locked(host, now);
    if (b.tokens >= 1.0) {
        b.tokens -= 1.0;
        if (observer_) observer_(host, now);
        return Clock::duration::zero();
    }
    double wait_s = (1.0 - b.tokens) / b.refill_rps;
    auto wait = std::chrono::ceil<Clock::duration>(std::chrono::duration<double>(wait_s));
    return std::max(wait, Clock::duration{1});
}

void RateLimiter::acquire(const std::string& host) {
    for (;;) {
        Clock::duration wait;
        {
            std::lock_guard lock(mu_);
            wait = take_or_wait_locked(host);
        }
        if (wait == Clock::duration::zero()) return;
        clock_.sleep_for(wait);
    }
}

bool RateLimiter::try_acquire(const std::string& host) {
    std::lock_guard lock(mu_);
    return take_or_wait_locked(host) == Clock::duration::zero();
}

TokenBucket RateLimiter::snapshot(const std::string& host) {
    std::lock_guard lock(mu_);
    return bucket_locked(host, clock_.now());
}

}  // namespace parascrape
