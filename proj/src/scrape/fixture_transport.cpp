#include "parascrape/transport.hpp"

#include <stdexcept>

#include <json.hpp>

#include "parascrape/csv.hpp"
#include "parascrape/url.hpp"

namespace parascrape {

std::map<std::string, FixtureRoute> load_fixture_manifest(const std::filesystem::path& manifest) {
    std::map<std::string, FixtureRoute> routes;
    auto j = nlohmann::json::parse(read_file(manifest));
    if (!j.contains("routes")) return routes;
    for (const auto& [path, r] : j.at("routes").items()) {
        if (!r.is_object()) throw std::invalid_argument(manifest.string() + ": route " + path + " is not an object");
        FixtureRoute route;
        route.file = r.value("file", std::string{});
        route.latency_ms = r.value("latency_ms", std::int64_t{0});
        route.fail_times = r.value("fail_times", 0);
        route.status = r.value("status", 200);
        if (route.file.empty() && route.status >= 200 && route.status <= 299) {
            throw std::invalid_argument(manifest.string() + ": route " + path + " has no file");
        }
        routes.emplace(path, std::move(route));
    }
    return routes;
}

FixtureTransport::FixtureTransport(std::filesystem::path root, Clock& clock)
    : root_(std::move(root)), clock_(clock) {
    auto manifest = root_ / "manifest.json";
    if (std::filesystem::exists(manifest)) routes_ = load_fixture_manifest(manifest);
}

FixtureTransport::FixtureTransport(std::filesystem::path root, std::map<std::string, FixtureRoute> routes,
                                   Clock& clock)
    : root_(std::move(root)), routes_(std::move(routes)), clock_(clock) {}

int FixtureTransport::request_count(const std::string& path) {
    std::lock_guard lock(mu_);
    auto it = hits_.find(path);
    return it == hits_.end() ? 0 : it->second;
}

TransportResponse FixtureTransport::get(const std::string& target) {
    const std::string path = url::path(target);
    int hit = 0;
    {
        std::lock_guard lock(mu_);
        hit = ++hits_[path];
    }

    auto it = routes_.find(path);
    std::filesystem::path file;
    FixtureRoute route;
    if (it != routes_.end()) {
        route = it->second;
        file = route.file.is_absolute() ? route.file : root_ / route.file;
    } else {
        auto rel = std::filesystem::path(path).relative_path().lexically_normal();
        bool escapes = !rel.empty() && *rel.begin() == "..";
        file = root_ / rel;
        if (rel.empty() || escapes || !std::filesystem::is_regular_file(file)) return {404, {}, std::nullopt};
    }

    if (route.latency_ms > 0) clock_.sleep_for(std::chrono::milliseconds(route.latency_ms));
    if (hit <= route.fail_times) return {503, {}, std::nullopt};
    if (route.status < 200 || route.status > 299) return {route.status, {}, std::nullopt};
    try {
        return {route.status, read_file(file), std::nullopt};
    } catch (const IoError&) {
        return {404, {}, std::nullopt};
    }
}

}  // namespace parascrape
