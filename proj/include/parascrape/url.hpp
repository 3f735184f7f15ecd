#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace parascrape::url {

struct Parts {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

Parts split(std::string_view ref);
std::string join(const Parts& parts);

// Absolute means: has a scheme and a non-empty host.
bool is_absolute(std::string_view u);

// Host of an absolute URL, lowercase, without userinfo or port.
std::string host(std::string_view u);

// Path component only ("/" when empty).
std::string path(std::string_view u);

std::string remove_dot_segments(std::string_view path);

// Relative-reference resolution against an absolute base.
std::string resolve(std::string_view base, std::string_view ref);

}  // namespace parascrape::url
