#include "parascrape/scrape.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "parascrape/url.hpp"

namespace parascrape {

std::string FetchResult::describe() const {
    switch (status) {
        case FetchStatus::ok: return "ok " + std::to_string(http_code);
        case FetchStatus::http_error:
            return "http " + std::to_string(http_code) + " after " + std::to_string(attempts) + " attempt(s)";
        case FetchStatus::transport_error:
            return "transport error: " + error + " after " + std::to_string(attempts) + " attempt(s)";
    }
    return {};
}

FetchResult fetch(const std::string& target, FetchDeps& deps) {
    FetchResult out;
    out.url = target;
    const auto host = url::host(target);
    const auto start = deps.clock.now();
    const int max_attempts = std::max(0, deps.retry.max) + 1;

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        deps.limiter.acquire(host);
        out.attempts = attempt;
        auto resp = deps.transport.get(target);
        bool retryable = false;
        if (resp.error) {
            out.status = FetchStatus::transport_error;
            out.http_code = 0;
            out.error = *resp.error;
            retryable = true;
        } else if (resp.status >= 200 && resp.status <= 299) {
            out.status = FetchStatus::ok;
            out.http_code = resp.status;
            out.error.clear();
            out.body = std::move(resp.body);
            break;
        } else {
            out.status = FetchStatus::http_error;
            out.http_code = resp.status;
            retryable = resp.status >= 500 && resp.status <= 599;
        }
        if (!retryable || attempt == max_attempts) break;
        auto backoff = std::chrono::milliseconds(deps.retry.backoff_ms * (std::int64_t{1} << (attempt - 1)));
        deps.clock.sleep_for(backoff);
    }
    out.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(deps.clock.now() - start).count();
    return out;
}

Extractor template_extractor(PageTemplate tmpl, Timestamp now) {
    return [tmpl = std::move(tmpl), now](const std::string& u, const DomNode& page) {
        return extract_page(page, u, tmpl, now);
    };
}

namespace {

struct PageOutcome {
    std::vector<ProductRecord> records;
    std::vector<RunError> errors;
    bool ok = false;
    double fetch_seconds = 0;
    double extract_seconds = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

PageOutcome scrape_one(const std::string& u, const Extractor& extractor, FetchDeps& deps) {
    PageOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    auto fr = fetch(u, deps);
    out.fetch_seconds = seconds_since(t0);
    if (!fr.ok()) {
        out.errors.push_back({u, "fetch", fr.describe()});
        return out;
    }
    auto t1 = std::chrono::steady_clock::now();
    try {
        auto dom = parse_html(*fr.body);
        auto page = extractor(u, dom);
        out.records = std::move(page.records);
        for (auto& w : page.warnings) out.errors.push_back({u, "extract", std::move(w)});
        out.ok = true;
    } catch (const std::exception& e) {
        out.errors.push_back({u, "extract", e.what()});
    }
    out.extract_seconds = seconds_since(t1);
    return out;
}

ScrapeResult assemble(std::vector<PageOutcome>& pages, RunReport report) {
    ScrapeResult res;
    double fetch_s = 0, extract_s = 0;
    for (auto& p : pages) {
        if (p.ok) ++report.items_out;
        for (auto& r : p.records) res.records.push_back(std::move(r));
        for (auto& e : p.errors) report.errors.push_back(std::move(e));
        fetch_s += p.fetch_seconds;
        extract_s += p.extract_seconds;
    }
    report.records_out = res.records.size();
    report.per_phase_seconds["fetch"] = fetch_s;
    report.per_phase_seconds["extract"] = extract_s;
    res.report = std::move(report);
    return res;
}

void finish_timing(RunReport& report, std::chrono::steady_clock::time_point t0) {
    report.finished_at = std::chrono::system_clock::now();
    report.wall_seconds = seconds_since(t0);
}

}  // namespace

ScrapeResult scrape_sequential(const std::vector<std::string>& urls, const Extractor& extractor, FetchDeps& deps) {
    if (urls.empty()) throw std::invalid_argument("scrape requires at least one URL");
    RunReport report;
    report.started_at = std::chrono::system_clock::now();
    report.items_in = urls.size();
    auto t0 = std::chrono::steady_clock::now();

    std::vector<PageOutcome> pages;
    pages.reserve(urls.size());
    for (const auto& u : urls) pages.push_back(scrape_one(u, extractor, deps));

    finish_timing(report, t0);
    report.per_worker_items = {urls.size()};
    return assemble(pages, std::move(report));
}

ScrapeResult scrape_parallel(const std::vector<std::string>& urls, const Extractor& extractor, FetchDeps& deps,
                             std::size_t workers) {
    if (urls.empty()) throw std::invalid_argument("scrape requires at least one URL");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    RunReport report;
    report.started_at = std::chrono::system_clock::now();
    report.items_in = urls.size();
    auto t0 = std::chrono::steady_clock::now();

    std::vector<PageOutcome> pages(urls.size());
    std::vector<std::size_t> per_worker(workers, 0);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= urls.size()) return;
                    pages[i] = scrape_one(urls[i], extractor, deps);
                    ++per_worker[w];
                }
            });
        }
    }  // all workers joined here

    finish_timing(report, t0);
    report.per_worker_items = std::move(per_worker);
    return assemble(pages, std::move(report));
}

std::vector<std::string> parse_url_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        auto nl = text.find('\n', i);
        auto line = text.substr(i, nl == std::string_view::npos ? std::string_view::npos : nl - i);
        // '#' opens a comment at line start or after whitespace; elsewhere it is a URL fragment.
        for (std::size_t h = line.find('#'); h != std::string_view::npos; h = line.find('#', h + 1)) {
            if (h == 0 || std::isspace(static_cast<unsigned char>(line[h - 1]))) {
                line = line.substr(0, h);
                break;
            }
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        if (!line.empty()) out.emplace_back(line);
        if (nl == std::string_view::npos) break;
        i = nl + 1;
    }
    return out;
}

}  // namespace parascrape
