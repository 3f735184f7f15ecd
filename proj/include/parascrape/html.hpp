#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parascrape {

struct DomNode {
    enum class Kind { element, text };

    Kind kind = Kind::element;
    std::string tag;  // lowercase; empty for text nodes and the document root
    std::vector<std::pair<std::string, std::string>> attributes;  // names lowercase, unique, source order
    std::vector<DomNode> children;
    std::string text_content;  // text nodes only

    bool is_element() const { return kind == Kind::element; }
    bool is_text() const { return kind == Kind::text; }
    bool is_root() const { return kind == Kind::element && tag.empty(); }
};

// Lenient HTML parse. Never fails: unclosed elements are closed at the
// enclosing end tag, stray end tags are ignored, void elements take no
// children. Comments, doctype and processing instructions are dropped.
DomNode parse_html(std::string_view source);

// Descendant text, whitespace runs collapsed to one space and trimmed.
std::string node_text(const DomNode& node);

// Attribute lookup with a case-insensitive name.
std::optional<std::string> node_attr(const DomNode& node, std::string_view name);

std::string collapse_ws(std::string_view s);

// Escapes &, < and > so the text parses back as a single text run.
std::string escape_html_text(std::string_view s);

// Total node count including the root.
std::size_t count_nodes(const DomNode& node);

}  // namespace parascrape
