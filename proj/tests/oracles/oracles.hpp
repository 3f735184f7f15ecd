#pragma once

// Independent reference implementations and hand-built tables used by the unit
// and acceptance tests. Nothing here calls into the code under test.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parascrape/record.hpp"

namespace oracle {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(PARASCRAPE_FIXTURE_DIR) / name; }

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("parascrape-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Single pass over the text, one counter per maximal run of word bytes.
inline std::map<std::string, std::int64_t> word_counts(const std::vector<std::string>& lines) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& line : lines) {
        std::string cur;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            unsigned char c = i < line.size() ? static_cast<unsigned char>(line[i]) : ' ';
            bool ascii_alnum = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
            if (ascii_alnum || c >= 0x80) {
                cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : static_cast<char>(c);
            } else if (!cur.empty()) {
                ++counts[cur];
                cur.clear();
            }
        }
    }
    return counts;
}

// Lines drawn from ASCII letters of both cases, digits, punctuation, tabs and
// a few multi-byte UTF-8 characters. No '\n'.
inline std::vector<std::string> random_corpus(std::mt19937_64& rng, std::size_t lines) {
    static const std::vector<std::string> pieces = {
        "a", "b", "c", "x", "y", "z", "A", "B", "Q", "0", "1", "7", "data", "Data", "MAP", "reduce",
        " ", " ", " ", "  ", "\t", ",", ".", "!", "-", "'", "\"", "#", "$", "%", "(", ")", "\r",
        "\xc3\xa9", "\xc3\xbc", "\xe6\xbc\xa2", "e\xcc\x81", "THC", "cbd", "_", "/", ":", ";"};
    std::uniform_int_distribution<std::size_t> len(0, 40);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::vector<std::string> out;
    out.reserve(lines);
    for (std::size_t l = 0; l < lines; ++l) {
        std::string s;
        std::size_t n = len(rng);
        for (std::size_t k = 0; k < n; ++k) s += pieces[pick(rng)];
        out.push_back(std::move(s));
    }
    return out;
}

struct PotencyRow {
    std::string description;
    std::optional<double> thc_pct;
    std::optional<double> cbd_pct;
    std::optional<double> thc_mg;
    std::optional<double> unit_weight;
};

// Read by hand: what a person would take each description to state.
inline const std::vector<PotencyRow>& potency_table() {
    static const std::vector<PotencyRow> rows = {
        {"Contains 24.5% THC and 0.8% CBD", 24.5, 0.8, {}, {}},
        {"THC: 18%", 18, {}, {}, {}},
        {"CBD: 12.5%, THC: 0.3%", 0.3, 12.5, {}, {}},
        {"THCA 10%", {}, {}, {}, {}},
        {"22% thc", 22, {}, {}, {}},
        {"Potency THC 19.2% CBD 1.1%", 19.2, 1.1, {}, {}},
        {"24.5% THC 0.8% CBD", 24.5, 0.8, {}, {}},
        {"20 % THC / 2 % CBD", 20, 2, {}, {}},
        {"No potency information.", {}, {}, {}, {}},
        {"THC: 100mg per package", {}, {}, 100, {}},
        {"1:1 CBD:THC tincture, 15% CBD", {}, 15, {}, {}},
        {"Total THC 27.3% | Total CBD <0.1%", 27.3, {}, {}, {}},
        {"THCA 25% and THC 0.5%", 0.5, {}, {}, {}},
        {"Delta-9 THC: 0.3%", 0.3, {}, {}, {}},
        {"High-CBD strain (CBD 14%, THC 0.6%)", 0.6, 14, {}, {}},
        {"Lab results: 31.25% THC", 31.25, {}, {}, {}},
        {"10mg THC per gummy, 100mg total", {}, {}, 10, {}},
        {"THC 5 % and CBD 5 %", 5, 5, {}, {}},
        {"Contains 0% THC, 20% CBD", 0, 20, {}, {}},
        {"Our bestselling hybrid. THC:21%", 21, {}, {}, {}},
        {"CBD-rich 2:1 blend, 8% CBD, 4% THC", 4, 8, {}, {}},
        {"thca: 28.4%; thc: 0.9%", 0.9, {}, {}, {}},
        {"Price $45 for 3.5g, THC 17.8%", 17.8, {}, {}, 3.5},
        {"8% CBD 4% THC", 4, 8, {}, {}},
        {"THC: 18% CBD 2% | Net weight 7g", 18, 2, {}, 7},
    };
    return rows;
}

inline parascrape::Timestamp fixed_time() { return parascrape::Timestamp{std::chrono::seconds{1714521600}}; }  // 2024-05-01

// The product page fixture, read off the HTML by hand.
inline const char* kProductPageUrl = "https://www.example-dispensaries.com/dispensary-info/sunset-wellness/p/blue-dream-3-5g";

inline parascrape::ProductRecord product_page_record() {
    parascrape::ProductRecord r;
    r.product_name = "Blue Dream";
    r.category = "Flower";
    r.brand = "Leaf Co";
    r.strain = "Blue Dream";
    r.strain_type = parascrape::StrainType::hybrid;
    r.thc_pct = 24.5;
    r.cbd_pct = 0.8;
    r.thc_mg = 857;
    r.price_original_cents = 3000;
    r.price_discount_cents = 2500;
    r.unit_weight = "3.5g";
    r.description =
        "Blue Dream balances full-body relaxation with gentle cerebral invigoration. Contains 24.5% THC and 0.8% "
        "CBD. Sweet berry aroma & a smooth finish.";
    r.image_url = "https://www.example-dispensaries.com/dispensary-info/images/products/blue-dream.jpg";
    r.product_url = kProductPageUrl;
    r.dispensary_name = "Sunset Wellness";
    r.dispensary_url = kProductPageUrl;
    r.rating = 4.7;
    r.review_count = 1204;
    r.fulfillment = {true, true};
    r.scraped_at = fixed_time();
    return r;
}

// Messy records: padded and repeated whitespace, mixed-case categories,
// out-of-range numbers, missing required fields and repeated URLs.
inline parascrape::ProductRecord random_record(std::mt19937_64& rng) {
    using namespace parascrape;
    auto coin = [&](int pct) { return std::uniform_int_distribution<int>(0, 99)(rng) < pct; };
    auto pick = [&](const std::vector<std::string>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const std::vector<std::string> names = {"Blue Dream", "  OG   Kush ", "Sour\tDiesel", "", "Wedding  Cake", " "};
    const std::vector<std::string> cats = {"Flower", "EDIBLES", " vapes ", "Pre-Rolls", "", "flower"};
    const std::vector<std::string> words = {"Leaf Co", " North  Farms", "x", "  ", "Lake\nEffect"};

    ProductRecord r;
    r.product_name = pick(names);
    r.category = pick(cats);
    if (coin(70)) r.brand = pick(words);
    if (coin(50)) r.strain = pick(words);
    r.strain_type = static_cast<StrainType>(std::uniform_int_distribution<int>(0, 3)(rng));
    if (coin(70)) r.thc_pct = coin(10) ? real(100.5, 130) : real(0, 35);
    if (coin(60)) r.cbd_pct = coin(10) ? real(-5, -0.1) : real(0, 20);
    if (coin(30)) r.thc_mg = real(0, 1000);
    if (coin(80)) r.price_original_cents = std::uniform_int_distribution<std::int64_t>(-500, 9000)(rng);
    if (coin(40)) r.price_discount_cents = std::uniform_int_distribution<std::int64_t>(0, 9500)(rng);
    if (coin(50)) r.unit_weight = pick({"3.5g", " 1 g", "7g"});
    if (coin(60)) r.description = pick({"Contains 20% THC.", "  spaced   out  ", "Line\r\nbreak", ""});
    if (coin(40)) r.image_url = "https://img.example/" + std::to_string(rng() % 50) + ".jpg";
    r.product_url = coin(5) ? "" : coin(5) ? "not a url" : "https://shop.example/p/" + std::to_string(rng() % 300);
    r.dispensary_name = pick({"Sunset Wellness", " Harbor  Greens"});
    r.dispensary_url = "https://shop.example/";
    if (coin(70)) r.rating = coin(10) ? real(5.1, 7) : real(0, 5);
    if (coin(60)) r.review_count = std::uniform_int_distribution<std::int64_t>(-3, 5000)(rng);
    r.fulfillment = {coin(50), coin(50)};
    r.scraped_at = fixed_time();
    return r;
}

}  // namespace oracle
