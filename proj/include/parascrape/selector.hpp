#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parascrape/html.hpp"

namespace parascrape {

// One compound step: tag? (.class)* ([name] | [name=value])*
struct SelectorStep {
    std::optional<std::string> tag;
    std::set<std::string> classes;
    std::set<std::string> attr_present;
    std::map<std::string, std::string> attr_equals;

    bool matches(const DomNode& el) const;
    friend bool operator==(const SelectorStep&, const SelectorStep&) = default;
};

// Steps joined by the descendant combinator.
struct Selector {
    std::vector<SelectorStep> steps;
    friend bool operator==(const Selector&, const Selector&) = default;
};

class SelectorError : public std::runtime_error {
public:
    SelectorError(std::size_t position, const std::string& what)
        : std::runtime_error("selector error at " + std::to_string(position) + ": " + what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

Selector parse_selector(std::string_view expr);

// Matching elements in document order, each at most once.
std::vector<const DomNode*> select(const DomNode& root, const Selector& selector);
const DomNode* select_first(const DomNode& root, const Selector& selector);

}  // namespace parascrape
