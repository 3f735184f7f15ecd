#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parascrape/clock.hpp"
#include "parascrape/extract.hpp"
#include "parascrape/html.hpp"
#include "parascrape/rate_limiter.hpp"
#include "parascrape/record.hpp"
#include "parascrape/transport.hpp"

namespace parascrape {

enum class FetchStatus { ok, http_error, transport_error };

struct FetchResult {
    std::string url;
    FetchStatus status = FetchStatus::transport_error;
    int http_code = 0;
    std::string error;               // message for transport_error
    std::optional<std::string> body;  // present iff status == ok
    std::int64_t latency_ms = 0;
    int attempts = 0;

    bool ok() const { return status == FetchStatus::ok; }
    std::string describe() const;
};

struct RetryPolicy {
    int max = 2;
    std::int64_t backoff_ms = 100;
};

struct FetchDeps {
    Transport& transport;
    RateLimiter& limiter;
    Clock& clock;
    RetryPolicy retry;
};

// Takes one rate-limit token per attempt. Transport errors and 5xx are retried
// with backoff_ms * 2^(attempt-1); any other non-2xx status is terminal.
// Never throws for network conditions.
FetchResult fetch(const std::string& url, FetchDeps& deps);

using Extractor = std::function<PageExtraction(const std::string& url, const DomNode& page)>;

Extractor template_extractor(PageTemplate tmpl, Timestamp now);

struct ScrapeResult {
    std::vector<ProductRecord> records;
    RunReport report;
};

// Throws std::invalid_argument on an empty URL list.
ScrapeResult scrape_sequential(const std::vector<std::string>& urls, const Extractor& extractor, FetchDeps& deps);

// Fixed pool of `workers` threads pulling URLs from a shared queue. Records come
// back in URL order, then extraction order: the same list scrape_sequential
// returns.
ScrapeResult scrape_parallel(const std::vector<std::string>& urls, const Extractor& extractor, FetchDeps& deps,
                             std::size_t workers);

// One URL per line; blank lines and '#' comments skipped.
std::vector<std::string> parse_url_list(std::string_view text);

}  // namespace parascrape
