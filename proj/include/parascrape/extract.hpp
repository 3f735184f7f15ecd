#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parascrape/html.hpp"
#include "parascrape/record.hpp"
#include "parascrape/selector.hpp"

namespace parascrape {

inline constexpr std::string_view kDefaultCardSelector = "div.w-full a[href]";

// Absolute URLs linked from dispensary cards, in card order, first occurrence
// kept.
std::vector<std::string> extract_dispensary_urls(const DomNode& root, std::string_view base_url,
                                                 const Selector& card_selector);
std::vector<std::string> extract_dispensary_urls(const DomNode& root, std::string_view base_url);

struct Capture {
    std::optional<std::string> attr;  // absent: capture node_text
    friend bool operator==(const Capture&, const Capture&) = default;
};

struct FieldRule {
    std::string selector_text;
    Selector selector;
    Capture capture;
};

using ExtractionRules = std::map<Field, FieldRule>;

struct ExtractionContext {
    std::string dispensary_name;
    std::string dispensary_url;
    std::string product_url;
    std::string page_url;  // document the fields come from; relative src values resolve against it
    Timestamp now{};
};

struct FieldIssue {
    Field field;
    std::string message;
};

struct ProductExtraction {
    ProductRecord record;
    std::vector<FieldIssue> issues;  // coercion failures; the field is left absent
};

class ExtractionError : public std::runtime_error {
public:
    explicit ExtractionError(std::vector<Field> missing);
    const std::vector<Field>& missing() const { return missing_; }

private:
    std::vector<Field> missing_;
};

class RuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws ExtractionError when product_name or category is unmatched and
// std::invalid_argument when the rules do not cover them.
ProductExtraction extract_product(const DomNode& root, const ExtractionRules& rules, const ExtractionContext& ctx);

// Field coercions. Each returns nullopt when the text does not have the
// expected shape.
std::optional<std::int64_t> parse_price_cents(std::string_view text);  // "$30.00", "25", "25.5"
std::optional<double> parse_first_number(std::string_view text);       // "THC 24.5%" -> 24.5
std::optional<std::int64_t> parse_count(std::string_view text);        // "(1,204 reviews)" -> 1204
StrainType parse_strain_label(std::string_view text);
Fulfillment parse_fulfillment_label(std::string_view text);

// Site template: field rules plus the page-level selectors that split a menu
// page into product cards.
struct PageTemplate {
    ExtractionRules rules;
    std::optional<Selector> container;        // each match is one product; absent: whole page
    std::optional<Selector> product_link;     // within a container, href -> product_url
    std::optional<Selector> dispensary_name;  // page-level
};

struct PageExtraction {
    std::vector<ProductRecord> records;
    std::vector<std::string> warnings;
};

PageExtraction extract_page(const DomNode& root, std::string_view page_url, const PageTemplate& tmpl, Timestamp now);

// Rule file: {"<field>": {"selector": "...", "capture": "text" | {"attr": "name"}}, ...}
// plus optional "@container", "@product_link" and "@dispensary_name" selector strings.
PageTemplate parse_page_template(std::string_view json_text);
PageTemplate load_page_template(const std::filesystem::path& path);
PageTemplate default_page_template();
std::string default_rules_json();

}  // namespace parascrape
