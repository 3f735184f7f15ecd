#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "parascrape/clock.hpp"

namespace parascrape {

// One attempt at the wire level.
struct TransportResponse {
    int status = 0;                      // HTTP status; 0 when the transport failed
    std::string body;
    std::optional<std::string> error;    // transport-level failure message
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResponse get(const std::string& url) = 0;
};

// Live HTTP(S) GET via cpp-httplib.
class HttpTransport final : public Transport {
public:
    explicit HttpTransport(int timeout_seconds = 20, std::string user_agent = "parascrape/1.0");
    TransportResponse get(const std::string& url) override;

private:
    int timeout_seconds_;
    std::string user_agent_;
};

struct FixtureRoute {
    std::filesystem::path file;
    std::int64_t latency_ms = 0;
    int fail_times = 0;  // first N requests answer 503
    int status = 200;
};

// Serves URL paths from files under a root directory. Routes come from
// <root>/manifest.json:
//   {"routes": {"/path": {"file": "page.html", "latency_ms": 200, "fail_times": 0, "status": 200}}}
// A path with no route is served from <root><path> when that file exists and
// answers 404 otherwise.
class FixtureTransport final : public Transport {
public:
    FixtureTransport(std::filesystem::path root, Clock& clock);
    FixtureTransport(std::filesystem::path root, std::map<std::string, FixtureRoute> routes, Clock& clock);

    TransportResponse get(const std::string& url) override;

    int request_count(const std::string& path);
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    std::map<std::string, FixtureRoute> routes_;
    Clock& clock_;
    std::mutex mu_;
    std::map<std::string, int> hits_;
};

std::map<std::string, FixtureRoute> load_fixture_manifest(const std::filesystem::path& manifest);

}  // namespace parascrape
