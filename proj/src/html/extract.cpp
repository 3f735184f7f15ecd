#include "parascrape/extract.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

#include "parascrape/csv.hpp"
#include "parascrape/url.hpp"

namespace parascrape {

namespace {

std::string join_fields(const std::vector<Field>& fields) {
    std::string s;
    for (auto f : fields) {
        if (!s.empty()) s += ", ";
        s += field_name(f);
    }
    return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_context_field(Field f) {
    return f == Field::product_url || f == Field::dispensary_name || f == Field::dispensary_url ||
           f == Field::scraped_at;
}

}  // namespace

ExtractionError::ExtractionError(std::vector<Field> missing)
    : std::runtime_error("missing required fields: " + join_fields(missing)), missing_(std::move(missing)) {}

std::vector<std::string> extract_dispensary_urls(const DomNode& root, std::string_view base_url,
                                                 const Selector& card_selector) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const DomNode* a : select(root, card_selector)) {
        auto href = node_attr(*a, "href");
        if (!href) continue;
        auto ref = trim(*href);
        if (ref.empty()) continue;
        auto abs = url::resolve(base_url, ref);
        if (!url::is_absolute(abs)) continue;
        if (seen.insert(abs).second) out.push_back(std::move(abs));
    }
    return out;
}

std::vector<std::string> extract_dispensary_urls(const DomNode& root, std::string_view base_url) {
    static const Selector kCard = parse_selector(kDefaultCardSelector);
    return extract_dispensary_urls(root, base_url, kCard);
}

std::optional<std::int64_t> parse_price_cents(std::string_view text) {
    auto s = trim(text);
    if (!s.empty() && s.front() == '$') s = trim(s.substr(1));
    std::size_t i = 0;
    std::int64_t dollars = 0;
    while (i < s.size() && is_digit(s[i])) {
        if (dollars > 1'000'000'000'000) return std::nullopt;
        dollars = dollars * 10 + (s[i] - '0');
        ++i;
    }
    if (i == 0) return std::nullopt;
    std::int64_t cents = 0;
    if (i < s.size()) {
        if (s[i] != '.') return std::nullopt;
        ++i;
        std::size_t frac_start = i;
        while (i < s.size() && is_digit(s[i])) ++i;
        std::size_t frac_len = i - frac_start;
        if (frac_len == 0 || frac_len > 2 || i != s.size()) return std::nullopt;
        cents = (s[frac_start] - '0') * 10 + (frac_len == 2 ? s[frac_start + 1] - '0' : 0);
    }
    return dollars * 100 + cents;
}

std::optional<double> parse_first_number(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && !is_digit(text[i])) ++i;
    if (i == text.size()) return std::nullopt;
    std::size_t b = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i + 1 < text.size() && text[i] == '.' && is_digit(text[i + 1])) {
        ++i;
        while (i < text.size() && is_digit(text[i])) ++i;
    }
    return parse_decimal(text.substr(b, i - b));
}

std::optional<std::int64_t> parse_count(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && !is_digit(text[i])) ++i;
    if (i == text.size()) return std::nullopt;
    std::string digits;
    while (i < text.size() && (is_digit(text[i]) || (text[i] == ',' && i + 1 < text.size() && is_digit(text[i + 1])))) {
        if (text[i] != ',') digits.push_back(text[i]);
        ++i;
    }
    return parse_integer(digits);
}

StrainType parse_strain_label(std::string_view text) {
    auto s = lowercase(text);
    if (s.find("hybrid") != std::string::npos) return StrainType::hybrid;
    if (s.find("indica") != std::string::npos) return StrainType::indica;
    if (s.find("sativa") != std::string::npos) return StrainType::sativa;
    return StrainType::unknown;
}

Fulfillment parse_fulfillment_label(std::string_view text) {
    auto s = lowercase(text);
    Fulfillment f;
    f.delivery = s.find("deliver") != std::string::npos;
    f.pickup = s.find("pickup") != std::string::npos || s.find("pick-up") != std::string::npos ||
               s.find("pick up") != std::string::npos;
    return f;
}

ProductExtraction extract_product(const DomNode& root, const ExtractionRules& rules, const ExtractionContext& ctx) {
    if (!rules.count(Field::product_name) || !rules.count(Field::category)) {
        throw std::invalid_argument("extraction rules must cover product_name and category");
    }
    ProductExtraction out;
    auto& r = out.record;
    r.dispensary_name = ctx.dispensary_name;
    r.dispensary_url = ctx.dispensary_url;
    r.product_url = ctx.product_url;
    r.scraped_at = ctx.now;

    std::vector<Field> missing;
    for (const auto& [field, rule] : rules) {
        if (is_context_field(field)) continue;
        const DomNode* hit = select_first(root, rule.selector);
        std::optional<std::string> raw;
        if (hit) raw = rule.capture.attr ? node_attr(*hit, *rule.capture.attr) : std::optional{node_text(*hit)};
        if (raw && rule.capture.attr) raw = collapse_ws(*raw);
        if (raw && raw->empty()) raw.reset();

        if (!raw) {
            if (field == Field::product_name || field == Field::category) missing.push_back(field);
            continue;
        }
        auto issue = [&](const char* what) { out.issues.push_back({field, std::string(what) + ": '" + *raw + "'"}); };
        switch (field) {
            case Field::product_name: r.product_name = *raw; break;
            case Field::category: r.category = *raw; break;
            case Field::brand: r.brand = *raw; break;
            case Field::strain: r.strain = *raw; break;
            case Field::unit_weight: r.unit_weight = *raw; break;
            case Field::description: r.description = *raw; break;
            case Field::strain_type: r.strain_type = parse_strain_label(*raw); break;
            case Field::fulfillment: r.fulfillment = parse_fulfillment_label(*raw); break;
            case Field::image_url: {
                const auto& base = url::is_absolute(ctx.page_url)      ? ctx.page_url
                                   : url::is_absolute(ctx.product_url) ? ctx.product_url
                                                                       : ctx.dispensary_url;
                r.image_url = url::is_absolute(base) ? url::resolve(base, *raw) : *raw;
                break;
            }
            case Field::thc_pct:
            case Field::cbd_pct:
            case Field::thc_mg:
            case Field::rating: {
                auto v = parse_first_number(*raw);
                if (!v) {
                    issue("not a number");
                    break;
                }
                if (field == Field::thc_pct) r.thc_pct = v;
                if (field == Field::cbd_pct) r.cbd_pct = v;
                if (field == Field::thc_mg) r.thc_mg = v;
                if (field == Field::rating) r.rating = v;
                break;
            }
            case Field::price_original_cents:
            case Field::price_discount_cents: {
                auto v = parse_price_cents(*raw);
                if (!v) {
                    issue("not a price");
                    break;
                }
                (field == Field::price_original_cents ? r.price_original_cents : r.price_discount_cents) = v;
                break;
            }
            case Field::review_count: {
                auto v = parse_count(*raw);
                if (!v) {
                    issue("not a count");
                    break;
                }
                r.review_count = v;
                break;
            }
            default: break;
        }
    }
    if (!missing.empty()) throw ExtractionError(std::move(missing));
    return out;
}

PageExtraction extract_page(const DomNode& root, std::string_view page_url, const PageTemplate& tmpl, Timestamp now) {
    PageExtraction out;
    ExtractionContext ctx;
    ctx.dispensary_url = std::string(page_url);
    ctx.page_url = std::string(page_url);
    ctx.now = now;
    if (tmpl.dispensary_name) {
        if (const DomNode* n = select_first(root, *tmpl.dispensary_name)) ctx.dispensary_name = node_text(*n);
    }
    if (ctx.dispensary_name.empty()) ctx.dispensary_name = url::host(page_url);

    std::vector<const DomNode*> units;
    if (tmpl.container) units = select(root, *tmpl.container);
    const bool whole_page = units.empty();
    if (whole_page) units.push_back(&root);

    for (std::size_t i = 0; i < units.size(); ++i) {
        ExtractionContext item = ctx;
        item.product_url = std::string(page_url);
        if (!whole_page) {
            const DomNode* link = tmpl.product_link ? select_first(*units[i], *tmpl.product_link) : nullptr;
            auto href = link ? node_attr(*link, "href") : std::nullopt;
            item.product_url = href ? url::resolve(page_url, trim(*href))
                                    : std::string(page_url) + "#item-" + std::to_string(i + 1);
        }
        try {
            auto ex = extract_product(*units[i], tmpl.rules, item);
            for (const auto& is : ex.issues) {
                out.warnings.push_back(item.product_url + " " + std::string(field_name(is.field)) + ": " + is.message);
            }
            out.records.push_back(std::move(ex.record));
        } catch (const ExtractionError& e) {
            out.warnings.push_back(item.product_url + ": " + e.what());
        }
    }
    return out;
}

namespace {

Selector selector_or_throw(const std::string& text, const std::string& where) {
    try {
        return parse_selector(text);
    } catch (const SelectorError& e) {
        throw RuleError(where + ": " + e.what());
    }
}

}  // namespace

PageTemplate parse_page_template(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw RuleError(std::string("rules are not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw RuleError("rules must be a JSON object");
    PageTemplate t;
    for (const auto& [key, val] : j.items()) {
        if (!key.empty() && key.front() == '@') {
            if (!val.is_string()) throw RuleError(key + " must be a selector string");
            auto sel = selector_or_throw(val.get<std::string>(), key);
            if (key == "@container") {
                t.container = std::move(sel);
            } else if (key == "@product_link") {
                t.product_link = std::move(sel);
            } else if (key == "@dispensary_name") {
                t.dispensary_name = std::move(sel);
            } else {
                throw RuleError("unknown page key '" + key + "'");
            }
            continue;
        }
        auto field = field_from_name(key);
        if (!field) throw RuleError("unknown field '" + key + "'");
        if (is_context_field(*field)) throw RuleError("field '" + key + "' comes from the page context, not a rule");
        if (!val.is_object() || !val.contains("selector") || !val["selector"].is_string()) {
            throw RuleError(key + ": expected {\"selector\": string, \"capture\": ...}");
        }
        FieldRule rule;
        rule.selector_text = val["selector"].get<std::string>();
        rule.selector = selector_or_throw(rule.selector_text, key);
        if (val.contains("capture")) {
            const auto& cap = val["capture"];
            if (cap.is_string() && cap.get<std::string>() == "text") {
                // default
            } else if (cap.is_object() && cap.contains("attr") && cap["attr"].is_string()) {
                rule.capture.attr = cap["attr"].get<std::string>();
            } else {
                throw RuleError(key + ": capture must be \"text\" or {\"attr\": name}");
            }
        }
        t.rules.emplace(*field, std::move(rule));
    }
    if (!t.rules.count(Field::product_name) || !t.rules.count(Field::category)) {
        throw RuleError("rules must cover product_name and category");
    }
    return t;
}

PageTemplate load_page_template(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw RuleError(e.what());
    }
    return parse_page_template(text);
}

std::string default_rules_json() {
    return R"({
  "@container": "div.product-card",
  "@product_link": "a.product-link[href]",
  "@dispensary_name": "h1.dispensary-name",
  "product_name": {"selector": ".product-name", "capture": "text"},
  "category": {"selector": ".product-category", "capture": "text"},
  "brand": {"selector": ".product-brand", "capture": "text"},
  "strain": {"selector": ".strain-name", "capture": "text"},
  "strain_type": {"selector": ".strain-type", "capture": "text"},
  "thc_pct": {"selector": ".cannabinoids .thc", "capture": "text"},
  "cbd_pct": {"selector": ".cannabinoids .cbd", "capture": "text"},
  "thc_mg": {"selector": ".cannabinoids .thc-mg", "capture": "text"},
  "price_original_cents": {"selector": ".price-original", "capture": "text"},
  "price_discount_cents": {"selector": ".price-discount", "capture": "text"},
  "unit_weight": {"selector": ".unit-weight", "capture": "text"},
  "description": {"selector": ".product-description", "capture": "text"},
  "image_url": {"selector": "img.product-image[src]", "capture": {"attr": "src"}},
  "rating": {"selector": ".rating-value", "capture": "text"},
  "review_count": {"selector": ".review-count", "capture": "text"},
  "fulfillment": {"selector": ".fulfillment", "capture": "text"}
}
)";
}

PageTemplate default_page_template() {
    static const PageTemplate t = parse_page_template(default_rules_json());
    return t;
}

}  // namespace parascrape
