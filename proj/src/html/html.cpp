#include "parascrape/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>

namespace parascrape {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = lower(c);
    return out;
}

bool iequals_prefix(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (s.size() - pos < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (lower(s[pos + i]) != prefix[i]) return false;
    }
    return true;
}

bool is_void(std::string_view tag) {
    static constexpr std::array<std::string_view, 14> kVoid = {
        "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"};
    return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string decode_entities(std::string_view s) {
    struct Named {
        std::string_view name;
        std::uint32_t cp;
    };
    static constexpr std::array<Named, 10> kNamed = {{{"amp", '&'},
                                                      {"lt", '<'},
                                                      {"gt", '>'},
                                                      {"quot", '"'},
                                                      {"apos", '\''},
                                                      {"nbsp", 0xA0},
                                                      {"copy", 0xA9},
                                                      {"reg", 0xAE},
                                                      {"trade", 0x2122},
                                                      {"mdash", 0x2014}}};
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        auto semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        auto body = s.substr(i + 1, semi - i - 1);
        bool done = false;
        if (body.size() > 1 && body[0] == '#') {
            std::uint32_t cp = 0;
            auto digits = body.substr(1);
            int base = 10;
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits.remove_prefix(1);
            }
            auto res = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
            if (!digits.empty() && res.ec == std::errc{} && res.ptr == digits.data() + digits.size()) {
                append_utf8(out, cp);
                done = true;
            }
        } else {
            for (const auto& n : kNamed) {
                if (n.name == body) {
                    append_utf8(out, n.cp);
                    done = true;
                    break;
                }
            }
        }
        if (done) {
            i = semi + 1;
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {
        root_.kind = DomNode::Kind::element;
        stack_.push_back(&root_);
    }

    DomNode run() {
        std::size_t text_start = 0;
        while (pos_ < src_.size()) {
            if (src_[pos_] != '<') {
                ++pos_;
                continue;
            }
            std::size_t tag_start = pos_;
            if (!markup_at(pos_)) {
                ++pos_;
                continue;
            }
            flush_text(text_start, tag_start);
            consume_markup();
            text_start = pos_;
        }
        flush_text(text_start, src_.size());
        return std::move(root_);
    }

private:
    bool markup_at(std::size_t p) const {
        if (p + 1 >= src_.size()) return false;
        char c = src_[p + 1];
        if (std::isalpha(static_cast<unsigned char>(c))) return true;
        if (c == '!' || c == '?') return true;
        if (c == '/' && p + 2 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[p + 2]))) return true;
        return false;
    }

    DomNode& top() { return *stack_.back(); }

    void add_text(std::string text) {
        if (text.empty()) return;
        auto& kids = top().children;
        if (!kids.empty() && kids.back().is_text()) {
            kids.back().text_content += text;
            return;
        }
        DomNode t;
        t.kind = DomNode::Kind::text;
        t.text_content = std::move(text);
        kids.push_back(std::move(t));
    }

    void flush_text(std::size_t begin, std::size_t end) {
        if (end > begin) add_text(decode_entities(src_.substr(begin, end - begin)));
    }

    void skip_past(std::string_view terminator) {
        auto p = src_.find(terminator, pos_);
        pos_ = p == std::string_view::npos ? src_.size() : p + terminator.size();
    }

    void consume_markup() {
        if (src_.compare(pos_, 4, "<!--") == 0) {
            pos_ += 4;
            skip_past("-->");
            return;
        }
        char c = src_[pos_ + 1];
        if (c == '!' || c == '?') {
            skip_past(">");
            return;
        }
        if (c == '/') {
            pos_ += 2;
            auto name = read_name();
            skip_past(">");
            close_element(name);
            return;
        }
        ++pos_;
        open_element();
    }

    std::string read_name() {
        std::size_t b = pos_;
        while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '/' && src_[pos_] != '>') ++pos_;
        return lowercase(src_.substr(b, pos_ - b));
    }

    void skip_space() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    }

    void open_element() {
        DomNode el;
        el.kind = DomNode::Kind::element;
        el.tag = read_name();
        bool self_closing = false;
        while (pos_ < src_.size()) {
            skip_space();
            if (pos_ >= src_.size()) break;
            char c = src_[pos_];
            if (c == '>') {
                ++pos_;
                break;
            }
            if (c == '/') {
                ++pos_;
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    self_closing = true;
                    ++pos_;
                    break;
                }
                continue;
            }
            std::size_t b = pos_;
            while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '=' && src_[pos_] != '>' &&
                   !(src_[pos_] == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>')) {
                ++pos_;
            }
            std::string name = lowercase(src_.substr(b, pos_ - b));
            if (name.empty()) {
                ++pos_;
                continue;
            }
            std::string value;
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == '=') {
                ++pos_;
                skip_space();
                if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
                    char q = src_[pos_++];
                    auto end = src_.find(q, pos_);
                    if (end == std::string_view::npos) end = src_.size();
                    value = decode_entities(src_.substr(pos_, end - pos_));
                    pos_ = std::min(end + 1, src_.size());
                } else {
                    std::size_t vb = pos_;
                    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>') ++pos_;
                    value = decode_entities(src_.substr(vb, pos_ - vb));
                }
            }
            bool seen = std::any_of(el.attributes.begin(), el.attributes.end(),
                                    [&](const auto& a) { return a.first == name; });
            if (!seen) el.attributes.emplace_back(std::move(name), std::move(value));
        }

        const std::string tag = el.tag;
        top().children.push_back(std::move(el));
        if (is_void(tag) || self_closing) return;
        stack_.push_back(&top().children.back());
        if (tag == "script" || tag == "style") {
            skip_raw_text(tag, false);
        } else if (tag == "textarea" || tag == "title") {
            skip_raw_text(tag, true);
        }
    }

    // Content of raw-text elements runs to the matching end tag.
    void skip_raw_text(const std::string& tag, bool keep) {
        std::size_t b = pos_;
        std::size_t p = pos_;
        while (p < src_.size()) {
            if (src_[p] == '<' && p + 1 < src_.size() && src_[p + 1] == '/' && iequals_prefix(src_, p + 2, tag)) break;
            ++p;
        }
        if (keep && p > b) add_text(decode_entities(src_.substr(b, p - b)));
        pos_ = p;
        if (pos_ < src_.size()) {
            pos_ += 2;
            read_name();
            skip_past(">");
        }
        stack_.pop_back();
    }

    void close_element(const std::string& name) {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == name) {
                stack_.resize(i);
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    DomNode root_;
    std::vector<DomNode*> stack_;
};

void collect_text(const DomNode& n, std::string& out) {
    if (n.is_text()) {
        out += n.text_content;
        return;
    }
    for (const auto& c : n.children) collect_text(c, out);
}

}  // namespace

DomNode parse_html(std::string_view source) { return Parser(source).run(); }

std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::string node_text(const DomNode& node) {
    std::string raw;
    collect_text(node, raw);
    return collapse_ws(raw);
}

std::optional<std::string> node_attr(const DomNode& node, std::string_view name) {
    if (!node.is_element()) return std::nullopt;
    const auto wanted = lowercase(name);
    for (const auto& [k, v] : node.attributes) {
        if (k == wanted) return v;
    }
    return std::nullopt;
}

std::string escape_html_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::size_t count_nodes(const DomNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += count_nodes(c);
    return n;
}

}  // namespace parascrape
