#include "parascrape/url.hpp"

#include <cctype>
#include <vector>

namespace parascrape::url {

Parts split(std::string_view ref) {
    Parts p;
    // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
    auto colon = ref.find(':');
    if (colon != std::string_view::npos && colon > 0 && std::isalpha(static_cast<unsigned char>(ref[0]))) {
        bool ok = true;
        for (std::size_t i = 0; i < colon; ++i) {
            char c = ref[i];
            if (c == '/' || c == '?' || c == '#' ||
                !(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::string s(ref.substr(0, colon));
            for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            p.scheme = std::move(s);
            ref.remove_prefix(colon + 1);
        }
    }
    if (auto hash = ref.find('#'); hash != std::string_view::npos) {
        p.fragment = std::string(ref.substr(hash + 1));
        ref = ref.substr(0, hash);
    }
    if (auto q = ref.find('?'); q != std::string_view::npos) {
        p.query = std::string(ref.substr(q + 1));
        ref = ref.substr(0, q);
    }
    if (ref.substr(0, 2) == "//") {
        ref.remove_prefix(2);
        auto slash = ref.find('/');
        p.authority = std::string(ref.substr(0, slash));
        ref = slash == std::string_view::npos ? std::string_view{} : ref.substr(slash);
    }
    p.path = std::string(ref);
    return p;
}

std::string join(const Parts& p) {
    std::string out;
    if (p.scheme) out += *p.scheme + ":";
    if (p.authority) out += "//" + *p.authority;
    out += p.path;
    if (p.query) out += "?" + *p.query;
    if (p.fragment) out += "#" + *p.fragment;
    return out;
}

namespace {

std::string host_of_authority(std::string_view auth) {
    if (auto at = auth.rfind('@'); at != std::string_view::npos) auth.remove_prefix(at + 1);
    std::string_view h = auth;
    if (!h.empty() && h.front() == '[') {
        auto close = h.find(']');
        h = h.substr(0, close == std::string_view::npos ? h.size() : close + 1);
    } else if (auto c = h.find(':'); c != std::string_view::npos) {
        h = h.substr(0, c);
    }
    std::string out(h);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

bool is_absolute(std::string_view u) {
    auto p = split(u);
    return p.scheme && p.authority && !host_of_authority(*p.authority).empty();
}

std::string host(std::string_view u) {
    auto p = split(u);
    return p.authority ? host_of_authority(*p.authority) : std::string{};
}

std::string path(std::string_view u) {
    auto p = split(u);
    return p.path.empty() ? std::string("/") : p.path;
}

std::string remove_dot_segments(std::string_view in) {
    std::string input(in);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.replace(0, 3, "/");
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0 || input == "/..") {
            input = input.size() == 3 ? std::string("/") : input.substr(3);
            auto last = output.rfind('/');
            output.erase(last == std::string::npos ? 0 : last);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            auto start = input[0] == '/' ? 1 : 0;
            auto next = input.find('/', start);
            if (next == std::string::npos) next = input.size();
            output += input.substr(0, next);
            input.erase(0, next);
        }
    }
    return output;
}

std::string resolve(std::string_view base_text, std::string_view ref_text) {
    auto base = split(base_text);
    auto ref = split(ref_text);
    Parts t;
    if (ref.scheme) {
        t.scheme = ref.scheme;
        t.authority = ref.authority;
        t.path = remove_dot_segments(ref.path);
        t.query = ref.query;
    } else {
        if (ref.authority) {
            t.authority = ref.authority;
            t.path = remove_dot_segments(ref.path);
            t.query = ref.query;
        } else {
            if (ref.path.empty()) {
                t.path = base.path;
                t.query = ref.query ? ref.query : base.query;
            } else {
                if (ref.path.front() == '/') {
                    t.path = remove_dot_segments(ref.path);
                } else {
                    std::string merged;
                    if (base.authority && base.path.empty()) {
                        merged = "/" + ref.path;
                    } else {
                        auto last = base.path.rfind('/');
                        merged = (last == std::string::npos ? std::string{} : base.path.substr(0, last + 1)) + ref.path;
                    }
                    t.path = remove_dot_segments(merged);
                }
                t.query = ref.query;
            }
            t.authority = base.authority;
        }
        t.scheme = base.scheme;
    }
    t.fragment = ref.fragment;
    return join(t);
}

}  // namespace parascrape::url
