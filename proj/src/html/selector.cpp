#include "parascrape/selector.hpp"

#include <cctype>
#include <functional>

namespace parascrape {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool is_tag_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'; }

bool is_class_char(char c) { return !is_space(c) && c != '.' && c != '[' && c != ']' && c != '=' && c != '"' && c != '\''; }

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

class SelectorParser {
public:
    explicit SelectorParser(std::string_view expr) : e_(expr) {}

    Selector run() {
        Selector sel;
        skip_space();
        if (p_ >= e_.size()) throw SelectorError(0, "empty selector");
        while (p_ < e_.size()) {
            sel.steps.push_back(step());
            skip_space();
        }
        return sel;
    }

private:
    void skip_space() {
        while (p_ < e_.size() && is_space(e_[p_])) ++p_;
    }

    SelectorStep step() {
        SelectorStep s;
        const std::size_t start = p_;
        if (is_tag_char(e_[p_])) {
            std::size_t b = p_;
            while (p_ < e_.size() && is_tag_char(e_[p_])) ++p_;
            s.tag = lowercase(e_.substr(b, p_ - b));
        }
        while (p_ < e_.size() && !is_space(e_[p_])) {
            char c = e_[p_];
            if (c == '.') {
                std::size_t dot = p_++;
                std::size_t b = p_;
                while (p_ < e_.size() && is_class_char(e_[p_])) ++p_;
                if (p_ == b) throw SelectorError(dot, "empty class name");
                s.classes.insert(std::string(e_.substr(b, p_ - b)));
            } else if (c == '[') {
                attribute(s);
            } else if (c == ']') {
                throw SelectorError(p_, "unbalanced ']'");
            } else {
                throw SelectorError(p_, std::string("unexpected character '") + c + "'");
            }
        }
        if (!s.tag && s.classes.empty() && s.attr_present.empty() && s.attr_equals.empty()) {
            throw SelectorError(start, "empty step");
        }
        return s;
    }

    void attribute(SelectorStep& s) {
        const std::size_t open = p_++;
        std::size_t b = p_;
        while (p_ < e_.size() && e_[p_] != '=' && e_[p_] != ']' && e_[p_] != '[') ++p_;
        if (p_ >= e_.size() || e_[p_] == '[') throw SelectorError(open, "unbalanced '['");
        auto name = lowercase(trim(e_.substr(b, p_ - b)));
        if (name.empty()) throw SelectorError(b, "empty attribute name");
        if (e_[p_] == ']') {
            ++p_;
            s.attr_present.insert(name);
            return;
        }
        ++p_;  // '='
        while (p_ < e_.size() && is_space(e_[p_])) ++p_;
        std::string value;
        if (p_ < e_.size() && (e_[p_] == '"' || e_[p_] == '\'')) {
            char q = e_[p_++];
            auto end = e_.find(q, p_);
            if (end == std::string_view::npos) throw SelectorError(p_ - 1, "unterminated quoted value");
            value = std::string(e_.substr(p_, end - p_));
            p_ = end + 1;
            while (p_ < e_.size() && is_space(e_[p_])) ++p_;
        } else {
            std::size_t vb = p_;
            while (p_ < e_.size() && e_[p_] != ']' && e_[p_] != '[') ++p_;
            value = std::string(trim(e_.substr(vb, p_ - vb)));
        }
        if (p_ >= e_.size() || e_[p_] != ']') throw SelectorError(open, "unbalanced '['");
        ++p_;
        s.attr_equals[name] = std::move(value);
    }

    std::string_view e_;
    std::size_t p_ = 0;
};

bool has_class_token(std::string_view classes, const std::string& wanted) {
    std::size_t i = 0;
    while (i < classes.size()) {
        while (i < classes.size() && is_space(classes[i])) ++i;
        std::size_t b = i;
        while (i < classes.size() && !is_space(classes[i])) ++i;
        if (i > b && classes.substr(b, i - b) == wanted) return true;
    }
    return false;
}

}  // namespace

bool SelectorStep::matches(const DomNode& el) const {
    if (!el.is_element() || el.is_root()) return false;
    if (tag && el.tag != *tag) return false;
    if (!classes.empty()) {
        auto cls = node_attr(el, "class");
        if (!cls) return false;
        for (const auto& c : classes) {
            if (!has_class_token(*cls, c)) return false;
        }
    }
    for (const auto& a : attr_present) {
        if (!node_attr(el, a)) return false;
    }
    for (const auto& [k, v] : attr_equals) {
        auto got = node_attr(el, k);
        if (!got || *got != v) return false;
    }
    return true;
}

Selector parse_selector(std::string_view expr) { return SelectorParser(expr).run(); }

std::vector<const DomNode*> select(const DomNode& root, const Selector& selector) {
    std::vector<const DomNode*> out;
    if (selector.steps.empty()) return out;
    std::vector<const DomNode*> ancestors;
    const auto& last = selector.steps.back();

    std::function<void(const DomNode&)> walk = [&](const DomNode& n) {
        if (!n.is_element()) return;
        if (last.matches(n)) {
            // Greedy nearest-ancestor matching is exact for descendant-only chains.
            std::ptrdiff_t want = static_cast<std::ptrdiff_t>(selector.steps.size()) - 2;
            for (auto it = ancestors.rbegin(); it != ancestors.rend() && want >= 0; ++it) {
                if (selector.steps[static_cast<std::size_t>(want)].matches(**it)) --want;
            }
            if (want < 0) out.push_back(&n);
        }
        ancestors.push_back(&n);
        for (const auto& c : n.children) walk(c);
        ancestors.pop_back();
    };
    walk(root);
    return out;
}

const DomNode* select_first(const DomNode& root, const Selector& selector) {
    auto all = select(root, selector);
    return all.empty() ? nullptr : all.front();
}

}  // namespace parascrape
