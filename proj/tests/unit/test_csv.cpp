#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include "oracles/oracles.hpp"
#include "parascrape/csv.hpp"

using namespace parascrape;

namespace {

// Straight transcription of RFC 4180 field rules, kept apart from the library.
std::string rfc4180(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<ProductRecord> sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ProductRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = oracle::random_record(rng);
        // Optional text never holds "" (an empty cell reads back as absent).
        for (auto* o : {&r.brand, &r.strain, &r.unit_weight, &r.description, &r.image_url}) {
            if (o->has_value() && (*o)->empty()) o->reset();
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST(Csv, SinglePairFile) {
    auto dir = oracle::scratch_dir("csv-pair");
    auto n = write_csv(std::vector<KeyValuePair>{{"thc", std::int64_t{2}}}, dir / "o.csv");
    EXPECT_EQ(oracle::slurp(dir / "o.csv"), "key,value\nthc,2\n");
    EXPECT_EQ(n, 16u);
}

TEST(Csv, EmptyInputIsHeaderOnly) {
    EXPECT_EQ(to_csv(std::vector<KeyValuePair>{}), "key,value\n");
    auto header = to_csv(std::vector<ProductRecord>{});
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 19);
    EXPECT_EQ(header.rfind("product_name,category,", 0), 0u);
}

TEST(Csv, QuotesAndCommasInKey) {
    EXPECT_EQ(to_csv(std::vector<KeyValuePair>{{"a,\"b\"", std::int64_t{1}}}), "key,value\n\"a,\"\"b\"\"\",1\n");
}

TEST(Csv, EncodeMatchesReference) {
    std::mt19937_64 rng(11);
    const std::string alphabet = "ab ,\"\r\n\t;x";
    for (int i = 0; i < 3000; ++i) {
        std::string s(rng() % 8, ' ');
        for (auto& c : s) c = alphabet[rng() % alphabet.size()];
        ASSERT_EQ(csv::encode_field(s), rfc4180(s)) << s;
        auto rows = csv::parse(csv::encode_row({s, "z"}));
        ASSERT_EQ(rows.size(), 1u);
        ASSERT_EQ(rows[0].cells, (std::vector<std::string>{s, "z"}));
    }
}

TEST(Csv, ParseErrorsCarryLine) {
    try {
        csv::parse("a,b\n1,\"open\n");
        FAIL();
    } catch (const RowError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(csv::parse("a,b\nx\"y,1\n"), RowError);
    EXPECT_THROW(csv::parse("a\n\"q\"z\n"), RowError);
    EXPECT_EQ(csv::parse("a,b\r\n1,2\r\n").size(), 2u);
}

TEST(Csv, ThreeRecordsRoundTrip) {
    auto dir = oracle::scratch_dir("csv-rt");
    std::vector<ProductRecord> recs = {oracle::product_page_record()};
    auto more = sample(2, 5);
    recs.insert(recs.end(), more.begin(), more.end());
    write_csv(recs, dir / "p.csv");
    EXPECT_EQ(read_products_csv(dir / "p.csv"), recs);
}

TEST(Csv, RandomRecordsRoundTripAndDeterminism) {
    auto recs = sample(500, 17);
    auto text = to_csv(recs);
    EXPECT_EQ(products_from_csv(text), recs);
    EXPECT_EQ(to_csv(products_from_csv(text)), text);
}

TEST(Csv, PairsReadBackAsText) {
    auto pairs = pairs_from_csv("key,value\na,1\n");
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], (KeyValuePair{"a", std::string("1")}));
}

TEST(Csv, HeaderOrderIsFree) {
    auto pairs = pairs_from_csv("value,key\n1,a\n");
    EXPECT_EQ(pairs[0].key, "a");
}

TEST(Csv, SchemaErrorsNameTheColumn) {
    auto text = to_csv(std::vector<ProductRecord>{oracle::product_page_record()});
    auto pos = text.find("product_url");
    auto broken = text.substr(0, pos) + "product_link" + text.substr(pos + 11);
    try {
        products_from_csv(broken);
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_TRUE(e.column() == "product_link" || e.column() == "product_url");
    }
    try {
        pairs_from_csv("key\na\n");
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.column(), "value");
    }
    EXPECT_THROW(pairs_from_csv("key,value,key\n"), SchemaError);
}

TEST(Csv, FieldCountMismatchIsRowError) {
    try {
        pairs_from_csv("key,value\na,1\nb\n");
        FAIL();
    } catch (const RowError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Csv, WriteErrorCarriesPath) {
    try {
        write_csv(std::vector<KeyValuePair>{}, "/nonexistent-dir/x.csv");
        FAIL();
    } catch (const IoError& e) {
        EXPECT_EQ(e.path(), "/nonexistent-dir/x.csv");
    }
    EXPECT_THROW(read_products_csv("/nonexistent-dir/x.csv"), IoError);
}

TEST(Csv, JsonMirrorIsTyped) {
    auto j = nlohmann::json::parse(to_json(std::vector<ProductRecord>{oracle::product_page_record()}));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j[0]["price_original_cents"], 3000);
    EXPECT_EQ(j[0]["thc_pct"], 24.5);
    EXPECT_EQ(j[0]["fulfillment"], "delivery;pickup");
    ProductRecord bare;
    auto k = nlohmann::json::parse(to_json(std::vector<ProductRecord>{bare}));
    EXPECT_TRUE(k[0]["brand"].is_null());
    auto p = nlohmann::json::parse(to_json(std::vector<KeyValuePair>{{"a", std::int64_t{2}}}));
    EXPECT_EQ(p[0]["value"], 2);
}
