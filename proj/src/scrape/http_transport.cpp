#include "parascrape/transport.hpp"

#include <httplib.h>

#include "parascrape/url.hpp"

namespace parascrape {

HttpTransport::HttpTransport(int timeout_seconds, std::string user_agent)
    : timeout_seconds_(timeout_seconds), user_agent_(std::move(user_agent)) {}

TransportResponse HttpTransport::get(const std::string& target) {
    auto parts = url::split(target);
    if (!parts.scheme || !parts.authority) return {0, {}, "not an absolute URL: " + target};
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (*parts.scheme == "https") return {0, {}, "https is unavailable: built without OpenSSL"};
#endif
    std::string origin = *parts.scheme + "://" + *parts.authority;
    std::string path = parts.path.empty() ? "/" : parts.path;
    if (parts.query) path += "?" + *parts.query;

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_follow_location(true);
    auto res = client.Get(path, {{"User-Agent", user_agent_}});
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, std::move(res->body), std::nullopt};
}

}  // namespace parascrape
