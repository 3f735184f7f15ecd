#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parascrape {

using Timestamp = std::chrono::sys_seconds;

enum class StrainType { indica, sativa, hybrid, unknown };

std::string_view to_string(StrainType t);
std::optional<StrainType> parse_strain_type(std::string_view s);

struct Fulfillment {
    bool delivery = false;
    bool pickup = false;

    bool empty() const { return !delivery && !pickup; }
    friend bool operator==(const Fulfillment&, const Fulfillment&) = default;
};

// Rendered as "delivery;pickup", "delivery", "pickup" or "".
std::string to_string(const Fulfillment& f);
std::optional<Fulfillment> parse_fulfillment(std::string_view s);

// One scraped product. Optional text fields never hold an empty string: an
// empty CSV cell reads back as absent.
struct ProductRecord {
    std::string product_name;
    std::string category;
    std::optional<std::string> brand;
    std::optional<std::string> strain;
    StrainType strain_type = StrainType::unknown;
    std::optional<double> thc_pct;
    std::optional<double> cbd_pct;
    std::optional<double> thc_mg;
    std::optional<std::int64_t> price_original_cents;
    std::optional<std::int64_t> price_discount_cents;
    std::optional<std::string> unit_weight;
    std::optional<std::string> description;
    std::optional<std::string> image_url;
    std::string product_url;
    std::string dispensary_name;
    std::string dispensary_url;
    std::optional<double> rating;
    std::optional<std::int64_t> review_count;
    Fulfillment fulfillment;
    Timestamp scraped_at{};

    friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

enum class Field : std::size_t {
    product_name,
    category,
    brand,
    strain,
    strain_type,
    thc_pct,
    cbd_pct,
    thc_mg,
    price_original_cents,
    price_discount_cents,
    unit_weight,
    description,
    image_url,
    product_url,
    dispensary_name,
    dispensary_url,
    rating,
    review_count,
    fulfillment,
    scraped_at,
};

inline constexpr std::size_t kProductFieldCount = 20;

inline constexpr std::array<std::string_view, kProductFieldCount> kProductFieldNames = {
    "product_name", "category",    "brand",        "strain",
    "strain_type",  "thc_pct",     "cbd_pct",      "thc_mg",
    "price_original_cents",        "price_discount_cents",
    "unit_weight",  "description", "image_url",    "product_url",
    "dispensary_name",             "dispensary_url",
    "rating",       "review_count", "fulfillment", "scraped_at",
};

static_assert(static_cast<std::size_t>(Field::scraped_at) + 1 == kProductFieldCount,
              "ProductRecord schema must have exactly 20 fields");

std::string_view field_name(Field f);
std::optional<Field> field_from_name(std::string_view name);

// Canonical text of one field as it appears in a CSV cell ("" when absent).
std::string field_cell(const ProductRecord& r, Field f);
std::vector<std::string> to_cells(const ProductRecord& r);

// True when the field holds a value; required text fields count as present
// only when non-empty.
bool field_present(const ProductRecord& r, Field f);

// Parses one cell into the record's field. Throws std::invalid_argument on a
// malformed value.
void set_field_from_cell(ProductRecord& r, Field f, std::string_view cell);

// Schema invariant checks. Each entry is a reason code such as
// "range:thc_pct" or "price:discount_gt_original".
std::vector<std::string> invariant_violations(const ProductRecord& r);

std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view s);

// Value carried by a key-value pair. Values read back from CSV are text.
using Value = std::variant<std::int64_t, double, std::string>;

std::string to_string(const Value& v);
// Numeric view of a value: numbers as-is, text parsed as a decimal.
std::optional<double> as_number(const Value& v);

struct KeyValuePair {
    std::string key;
    Value value;

    friend bool operator==(const KeyValuePair&, const KeyValuePair&) = default;
};

struct GroupedPairs {
    std::string key;
    std::vector<Value> values;

    friend bool operator==(const GroupedPairs&, const GroupedPairs&) = default;
};

// Shortest decimal text that round-trips the double.
std::string format_decimal(double v);
std::optional<double> parse_decimal(std::string_view s);
std::optional<std::int64_t> parse_integer(std::string_view s);

struct RunError {
    std::string item_id;
    std::string phase;
    std::string message;

    friend bool operator==(const RunError&, const RunError&) = default;
};

struct RunReport {
    std::chrono::system_clock::time_point started_at{};
    std::chrono::system_clock::time_point finished_at{};
    double wall_seconds = 0.0;
    std::size_t items_in = 0;
    std::size_t items_out = 0;
    std::size_t records_out = 0;
    std::vector<RunError> errors;
    std::map<std::string, double> per_phase_seconds;
    std::vector<std::size_t> per_worker_items;
};

}  // namespace parascrape
