#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles/oracles.hpp"
#include "parascrape/record.hpp"

using namespace parascrape;

TEST(Record, SchemaHasTwentyNamedFields) {
    EXPECT_EQ(kProductFieldCount, 20u);
    for (std::size_t i = 0; i < kProductFieldCount; ++i) {
        auto f = static_cast<Field>(i);
        EXPECT_EQ(field_from_name(field_name(f)), f);
    }
    EXPECT_FALSE(field_from_name("price"));
}

TEST(Record, CellsRoundTripThroughSetField) {
    auto r = oracle::product_page_record();
    ProductRecord back;
    for (std::size_t i = 0; i < kProductFieldCount; ++i) {
        auto f = static_cast<Field>(i);
        set_field_from_cell(back, f, field_cell(r, f));
    }
    EXPECT_EQ(back, r);
}

TEST(Record, EmptyCellIsAbsent) {
    ProductRecord r;
    r.brand = "x";
    set_field_from_cell(r, Field::brand, "");
    EXPECT_FALSE(r.brand);
    EXPECT_FALSE(field_present(r, Field::strain_type));
    EXPECT_EQ(field_cell(r, Field::thc_pct), "");
}

TEST(Record, BadCellsThrow) {
    ProductRecord r;
    EXPECT_THROW(set_field_from_cell(r, Field::thc_pct, "high"), std::invalid_argument);
    EXPECT_THROW(set_field_from_cell(r, Field::review_count, "1.5"), std::invalid_argument);
    EXPECT_THROW(set_field_from_cell(r, Field::strain_type, "ruderalis"), std::invalid_argument);
    EXPECT_THROW(set_field_from_cell(r, Field::scraped_at, "yesterday"), std::invalid_argument);
}

TEST(Record, FulfillmentText) {
    EXPECT_EQ(to_string(Fulfillment{true, true}), "delivery;pickup");
    EXPECT_EQ(to_string(Fulfillment{false, true}), "pickup");
    EXPECT_EQ(to_string(Fulfillment{}), "");
    EXPECT_EQ(parse_fulfillment("delivery"), (Fulfillment{true, false}));
    EXPECT_FALSE(parse_fulfillment("drone"));
}

TEST(Record, InvariantViolations) {
    auto r = oracle::product_page_record();
    EXPECT_TRUE(invariant_violations(r).empty());
    r.thc_pct = 120;
    r.price_discount_cents = 4000;
    r.product_url = "not a url";
    auto v = invariant_violations(r);
    EXPECT_NE(std::find(v.begin(), v.end(), "range:thc_pct"), v.end());
    EXPECT_NE(std::find(v.begin(), v.end(), "price:discount_gt_original"), v.end());
    EXPECT_NE(std::find(v.begin(), v.end(), "url:product_url"), v.end());
}

TEST(Record, TimestampFormat) {
    EXPECT_EQ(format_timestamp(oracle::fixed_time()), "2024-05-01T00:00:00Z");
    EXPECT_EQ(parse_timestamp("2024-05-01T00:00:00Z"), oracle::fixed_time());
    EXPECT_FALSE(parse_timestamp("2024-05-01 00:00:00"));
    EXPECT_FALSE(parse_timestamp("2024-13-01T00:00:00Z"));
}

TEST(Record, DecimalRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        double v = d(rng);
        EXPECT_EQ(parse_decimal(format_decimal(v)), v);
    }
    EXPECT_EQ(format_decimal(24.5), "24.5");
    EXPECT_EQ(format_decimal(3.0), "3");
    EXPECT_FALSE(parse_decimal("1.2.3"));
    EXPECT_FALSE(parse_decimal(""));
    EXPECT_EQ(parse_integer("-42"), -42);
    EXPECT_FALSE(parse_integer("4x"));
}

TEST(Record, ValueNumbers) {
    EXPECT_EQ(as_number(Value{std::int64_t{3}}), 3.0);
    EXPECT_EQ(as_number(Value{std::string("2.5")}), 2.5);
    EXPECT_FALSE(as_number(Value{std::string("two")}));
    EXPECT_EQ(to_string(Value{std::int64_t{7}}), "7");
}
