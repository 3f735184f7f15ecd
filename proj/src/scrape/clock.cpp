#include "parascrape/clock.hpp"

#include <thread>

namespace parascrape {

void SteadyClock::sleep_for(duration d) {
    if (d > duration::zero()) std::this_thread::sleep_for(d);
}

Clock::time_point ManualClock::now() {
    std::lock_guard lock(mu_);
    return now_;
}

void ManualClock::sleep_for(duration d) { advance(d); }

void ManualClock::advance(duration d) {
    if (d <= duration::zero()) return;
    std::lock_guard lock(mu_);
    now_ += d;
}

}  // namespace parascrape
