#include "parascrape/record.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace parascrape {

std::string_view to_string(StrainType t) {
    switch (t) {
        case StrainType::indica: return "indica";
        case StrainType::sativa: return "sativa";
        case StrainType::hybrid: return "hybrid";
        case StrainType::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<StrainType> parse_strain_type(std::string_view s) {
    if (s == "indica") return StrainType::indica;
    if (s == "sativa") return StrainType::sativa;
    if (s == "hybrid") return StrainType::hybrid;
    if (s == "unknown") return StrainType::unknown;
    return std::nullopt;
}

std::string to_string(const Fulfillment& f) {
    if (f.delivery && f.pickup) return "delivery;pickup";
    if (f.delivery) return "delivery";
    if (f.pickup) return "pickup";
    return "";
}

std::optional<Fulfillment> parse_fulfillment(std::string_view s) {
    Fulfillment f;
    while (!s.empty()) {
        auto semi = s.find(';');
        auto tok = s.substr(0, semi);
        if (tok == "delivery") {
            f.delivery = true;
        } else if (tok == "pickup") {
            f.pickup = true;
        } else {
            return std::nullopt;
        }
        if (semi == std::string_view::npos) break;
        s.remove_prefix(semi + 1);
        if (s.empty()) return std::nullopt;
    }
    return f;
}

std::string_view field_name(Field f) { return kProductFieldNames[static_cast<std::size_t>(f)]; }

std::optional<Field> field_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kProductFieldCount; ++i) {
        if (kProductFieldNames[i] == name) return static_cast<Field>(i);
    }
    return std::nullopt;
}

std::string format_decimal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss hms{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long long>(hms.seconds().count()));
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    using namespace std::chrono;
    // YYYY-MM-DDTHH:MM:SSZ
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':' ||
        s[19] != 'Z') {
        return std::nullopt;
    }
    auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto res = std::from_chars(s.data() + pos, s.data() + pos + len, v);
        if (res.ec != std::errc{} || res.ptr != s.data() + pos + len) return std::nullopt;
        return v;
    };
    auto y = num(0, 4), mo = num(5, 2), d = num(8, 2), h = num(11, 2), mi = num(14, 2), se = num(17, 2);
    if (!y || !mo || !d || !h || !mi || !se) return std::nullopt;
    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok() || *h > 23 || *mi > 59 || *se > 59) return std::nullopt;
    return sys_days{ymd} + hours{*h} + minutes{*mi} + seconds{*se};
}

namespace {

template <class T>
std::string opt_cell(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_same_v<T, std::string>) {
        return *v;
    } else if constexpr (std::is_same_v<T, double>) {
        return format_decimal(*v);
    } else {
        return std::to_string(*v);
    }
}

std::optional<std::string> text_or_absent(std::string_view cell) {
    if (cell.empty()) return std::nullopt;
    return std::string(cell);
}

std::optional<double> decimal_or_absent(std::string_view cell, Field f) {
    if (cell.empty()) return std::nullopt;
    auto v = parse_decimal(cell);
    if (!v) throw std::invalid_argument("bad decimal for " + std::string(field_name(f)) + ": '" + std::string(cell) + "'");
    return v;
}

std::optional<std::int64_t> integer_or_absent(std::string_view cell, Field f) {
    if (cell.empty()) return std::nullopt;
    auto v = parse_integer(cell);
    if (!v) throw std::invalid_argument("bad integer for " + std::string(field_name(f)) + ": '" + std::string(cell) + "'");
    return v;
}

bool looks_like_url(std::string_view s) {
    auto colon = s.find("://");
    if (colon == std::string_view::npos || colon == 0) return false;
    for (char c : s.substr(0, colon)) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')) return false;
    }
    auto rest = s.substr(colon + 3);
    auto host_end = rest.find_first_of("/?#");
    return !rest.substr(0, host_end).empty();
}

}  // namespace

std::string field_cell(const ProductRecord& r, Field f) {
    switch (f) {
        case Field::product_name: return r.product_name;
        case Field::category: return r.category;
        case Field::brand: return opt_cell(r.brand);
        case Field::strain: return opt_cell(r.strain);
        case Field::strain_type: return std::string(to_string(r.strain_type));
        case Field::thc_pct: return opt_cell(r.thc_pct);
        case Field::cbd_pct: return opt_cell(r.cbd_pct);
        case Field::thc_mg: return opt_cell(r.thc_mg);
        case Field::price_original_cents: return opt_cell(r.price_original_cents);
        case Field::price_discount_cents: return opt_cell(r.price_discount_cents);
        case Field::unit_weight: return opt_cell(r.unit_weight);
        case Field::description: return opt_cell(r.description);
        case Field::image_url: return opt_cell(r.image_url);
        case Field::product_url: return r.product_url;
        case Field::dispensary_name: return r.dispensary_name;
        case Field::dispensary_url: return r.dispensary_url;
        case Field::rating: return opt_cell(r.rating);
        case Field::review_count: return opt_cell(r.review_count);
        case Field::fulfillment: return to_string(r.fulfillment);
        case Field::scraped_at: return format_timestamp(r.scraped_at);
    }
    return {};
}

std::vector<std::string> to_cells(const ProductRecord& r) {
    std::vector<std::string> cells;
    cells.reserve(kProductFieldCount);
    for (std::size_t i = 0; i < kProductFieldCount; ++i) cells.push_back(field_cell(r, static_cast<Field>(i)));
    return cells;
}

bool field_present(const ProductRecord& r, Field f) {
    switch (f) {
        case Field::strain_type: return r.strain_type != StrainType::unknown;
        case Field::fulfillment: return !r.fulfillment.empty();
        case Field::scraped_at: return true;
        default: return !field_cell(r, f).empty();
    }
}

void set_field_from_cell(ProductRecord& r, Field f, std::string_view cell) {
    switch (f) {
        case Field::product_name: r.product_name = cell; break;
        case Field::category: r.category = cell; break;
        case Field::brand: r.brand = text_or_absent(cell); break;
        case Field::strain: r.strain = text_or_absent(cell); break;
        case Field::strain_type: {
            auto t = cell.empty() ? std::optional{StrainType::unknown} : parse_strain_type(cell);
            if (!t) throw std::invalid_argument("bad strain_type: '" + std::string(cell) + "'");
            r.strain_type = *t;
            break;
        }
        case Field::thc_pct: r.thc_pct = decimal_or_absent(cell, f); break;
        case Field::cbd_pct: r.cbd_pct = decimal_or_absent(cell, f); break;
        case Field::thc_mg: r.thc_mg = decimal_or_absent(cell, f); break;
        case Field::price_original_cents: r.price_original_cents = integer_or_absent(cell, f); break;
        case Field::price_discount_cents: r.price_discount_cents = integer_or_absent(cell, f); break;
        case Field::unit_weight: r.unit_weight = text_or_absent(cell); break;
        case Field::description: r.description = text_or_absent(cell); break;
        case Field::image_url: r.image_url = text_or_absent(cell); break;
        case Field::product_url: r.product_url = cell; break;
        case Field::dispensary_name: r.dispensary_name = cell; break;
        case Field::dispensary_url: r.dispensary_url = cell; break;
        case Field::rating: r.rating = decimal_or_absent(cell, f); break;
        case Field::review_count: r.review_count = integer_or_absent(cell, f); break;
        case Field::fulfillment: {
            auto ff = parse_fulfillment(cell);
            if (!ff) throw std::invalid_argument("bad fulfillment: '" + std::string(cell) + "'");
            r.fulfillment = *ff;
            break;
        }
        case Field::scraped_at: {
            auto t = parse_timestamp(cell);
            if (!t) throw std::invalid_argument("bad scraped_at: '" + std::string(cell) + "'");
            r.scraped_at = *t;
            break;
        }
    }
}

std::vector<std::string> invariant_violations(const ProductRecord& r) {
    std::vector<std::string> out;
    auto pct_ok = [](const std::optional<double>& v) { return !v || (*v >= 0.0 && *v <= 100.0); };
    if (!pct_ok(r.thc_pct)) out.emplace_back("range:thc_pct");
    if (!pct_ok(r.cbd_pct)) out.emplace_back("range:cbd_pct");
    if (r.thc_mg && *r.thc_mg < 0.0) out.emplace_back("range:thc_mg");
    if (r.price_original_cents && *r.price_original_cents < 0) out.emplace_back("range:price_original_cents");
    if (r.price_discount_cents && *r.price_discount_cents < 0) out.emplace_back("range:price_discount_cents");
    if (r.price_original_cents && r.price_discount_cents && *r.price_discount_cents > *r.price_original_cents) {
        out.emplace_back("price:discount_gt_original");
    }
    if (r.rating && (*r.rating < 0.0 || *r.rating > 5.0)) out.emplace_back("range:rating");
    if (r.review_count && *r.review_count < 0) out.emplace_back("range:review_count");
    if (!looks_like_url(r.product_url)) out.emplace_back("url:product_url");
    return out;
}

std::string to_string(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, double>) {
                return format_decimal(x);
            } else {
                return std::to_string(x);
            }
        },
        v);
}

std::optional<double> as_number(const Value& v) {
    if (auto i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (auto d = std::get_if<double>(&v)) return *d;
    return parse_decimal(std::get<std::string>(v));
}

}  // namespace parascrape
