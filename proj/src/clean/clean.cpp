#include "parascrape/clean.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "parascrape/html.hpp"

namespace parascrape {

FilterResult filter_records(const std::vector<ProductRecord>& records, const CleanPolicy& policy) {
    FilterResult out;
    for (const auto& r : records) {
        std::vector<std::string> reasons;
        for (Field f : policy.required_fields) {
            if (!field_present(r, f)) reasons.push_back("missing:" + std::string(field_name(f)));
        }
        for (auto& v : invariant_violations(r)) {
            // An absent product_url is already reported as missing.
            if (v == "url:product_url" && r.product_url.empty() && policy.required_fields.count(Field::product_url)) {
                continue;
            }
            reasons.push_back(std::move(v));
        }
        if (reasons.empty()) {
            out.kept.push_back(r);
        } else {
            out.dropped.push_back({r, std::move(reasons)});
        }
    }
    return out;
}

std::vector<ProductRecord> dedupe(const std::vector<ProductRecord>& records, const std::vector<Field>& key) {
    if (key.empty()) throw std::invalid_argument("dedupe key must name at least one field");
    std::set<std::vector<std::string>> seen;
    std::vector<ProductRecord> out;
    for (const auto& r : records) {
        std::vector<std::string> k;
        k.reserve(key.size());
        for (Field f : key) k.push_back(field_cell(r, f));
        if (seen.insert(std::move(k)).second) out.push_back(r);
    }
    return out;
}

namespace {

void collapse(std::string& s) { s = collapse_ws(s); }

void collapse(std::optional<std::string>& s) {
    if (!s) return;
    *s = collapse_ws(*s);
    if (s->empty()) s.reset();
}

void clamp_pct(std::optional<double>& v) {
    if (v) *v = std::clamp(*v, 0.0, 100.0);
}

void drop_negative(std::optional<std::int64_t>& cents) {
    if (cents && *cents < 0) cents.reset();
}

}  // namespace

ProductRecord normalize(ProductRecord r, const CleanPolicy& policy) {
    if (policy.trim_collapse_ws) {
        collapse(r.product_name);
        collapse(r.category);
        collapse(r.brand);
        collapse(r.strain);
        collapse(r.unit_weight);
        collapse(r.description);
        collapse(r.image_url);
        collapse(r.product_url);
        collapse(r.dispensary_name);
        collapse(r.dispensary_url);
    }
    if (policy.lowercase_category) {
        for (auto& c : r.category) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (policy.clamp_percents) {
        clamp_pct(r.thc_pct);
        clamp_pct(r.cbd_pct);
    }
    if (policy.strip_currency) {
        // Prices are parsed to cents at extraction; a negative amount cannot
        // come from a price label.
        drop_negative(r.price_original_cents);
        drop_negative(r.price_discount_cents);
    }
    return r;
}

CleanResult clean_records(const std::vector<ProductRecord>& records, const CleanPolicy& policy) {
    std::vector<ProductRecord> normalized;
    normalized.reserve(records.size());
    for (const auto& r : records) normalized.push_back(normalize(r, policy));
    auto filtered = filter_records(normalized, policy);
    CleanResult out;
    out.records = dedupe(filtered.kept, policy.dedup_key);
    out.duplicates_removed = filtered.kept.size() - out.records.size();
    out.dropped = std::move(filtered.dropped);
    return out;
}

}  // namespace parascrape
