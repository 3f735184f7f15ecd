#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "parascrape/clean.hpp"

using namespace parascrape;

namespace {

ProductRecord rec(std::string name, std::string url) {
    ProductRecord r;
    r.product_name = std::move(name);
    r.category = "flower";
    r.product_url = std::move(url);
    return r;
}

}  // namespace

TEST(Filter, MissingRequiredFieldDrops) {
    auto r = rec("", "https://d.example/p");
    auto res = filter_records({r}, CleanPolicy{});
    EXPECT_TRUE(res.kept.empty());
    ASSERT_EQ(res.dropped.size(), 1u);
    EXPECT_EQ(res.dropped[0].reasons, std::vector<std::string>{"missing:product_name"});
}

TEST(Filter, InvariantViolationsDrop) {
    auto r = rec("A", "https://d.example/p");
    r.thc_pct = 140;
    r.price_original_cents = 1000;
    r.price_discount_cents = 1500;
    auto res = filter_records({r}, CleanPolicy{});
    ASSERT_EQ(res.dropped.size(), 1u);
    EXPECT_EQ(res.dropped[0].reasons, (std::vector<std::string>{"range:thc_pct", "price:discount_gt_original"}));

    auto bad_url = rec("A", "not a url");
    EXPECT_EQ(filter_records({bad_url}, CleanPolicy{}).dropped[0].reasons, std::vector<std::string>{"url:product_url"});
    auto no_url = rec("A", "");
    EXPECT_EQ(filter_records({no_url}, CleanPolicy{}).dropped[0].reasons, std::vector<std::string>{"missing:product_url"});
}

TEST(Filter, PolicyChoosesRequiredFields) {
    auto r = rec("A", "https://d.example/p");
    CleanPolicy p;
    p.required_fields.insert(Field::brand);
    EXPECT_EQ(filter_records({r}, p).dropped.size(), 1u);
    r.brand = "B";
    EXPECT_EQ(filter_records({r}, p).kept.size(), 1u);
}

TEST(Dedupe, FirstOccurrenceWinsInOrder) {
    std::vector<ProductRecord> in = {rec("A", "https://d/1"), rec("B", "https://d/2"), rec("C", "https://d/1"),
                                     rec("D", "https://d/3"), rec("E", "https://d/2")};
    auto out = dedupe(in, {Field::product_url});
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].product_name, "A");
    EXPECT_EQ(out[1].product_name, "B");
    EXPECT_EQ(out[2].product_name, "D");
    EXPECT_EQ(dedupe(out, {Field::product_url}), out);
    EXPECT_EQ(dedupe(in, {Field::product_name}).size(), 5u);
    EXPECT_THROW(dedupe(in, {}), std::invalid_argument);
}

TEST(Dedupe, CompositeKeyTreatsAbsentAsValue) {
    auto a = rec("A", "https://d/1");
    auto b = a;
    b.brand = "X";
    auto c = a;
    EXPECT_EQ(dedupe({a, b, c}, {Field::product_url, Field::brand}).size(), 2u);
}

TEST(Normalize, Examples) {
    auto r = rec("  Blue \t Dream\n", " https://d/1 ");
    r.category = " FLOWER ";
    r.brand = "   ";
    r.thc_pct = 101;
    r.price_discount_cents = -5;
    CleanPolicy p;
    auto n = normalize(r, p);
    EXPECT_EQ(n.product_name, "Blue Dream");
    EXPECT_EQ(n.category, "flower");
    EXPECT_EQ(n.product_url, "https://d/1");
    EXPECT_FALSE(n.brand);
    EXPECT_EQ(n.thc_pct, 101);  // clamping is opt-in
    EXPECT_FALSE(n.price_discount_cents);
    p.clamp_percents = true;
    EXPECT_EQ(normalize(r, p).thc_pct, 100);
    p.lowercase_category = false;
    EXPECT_EQ(normalize(r, p).category, "FLOWER");
}

TEST(Normalize, IdempotentOnRandomRecords) {
    std::mt19937_64 rng(21);
    CleanPolicy p;
    p.clamp_percents = true;
    for (int i = 0; i < 500; ++i) {
        auto once = normalize(oracle::random_record(rng), p);
        ASSERT_EQ(normalize(once, p), once);
    }
}

TEST(CleanRecords, Pipeline) {
    std::vector<ProductRecord> in = {rec(" A ", "https://d/1"), rec("A", "https://d/1"), rec("", "https://d/2"),
                                     rec("B", "https://d/3")};
    auto res = clean_records(in, CleanPolicy{});
    ASSERT_EQ(res.records.size(), 2u);
    EXPECT_EQ(res.records[0].product_name, "A");
    EXPECT_EQ(res.records[1].product_name, "B");
    EXPECT_EQ(res.dropped.size(), 1u);
    EXPECT_EQ(res.duplicates_removed, 1u);
    EXPECT_TRUE(clean_records({}, CleanPolicy{}).records.empty());
}
