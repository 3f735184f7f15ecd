#include "parascrape/synthetic.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "parascrape/csv.hpp"
#include "parascrape/html.hpp"

namespace parascrape::synthetic {

namespace {

constexpr std::array<const char*, 24> kWords = {
    "data",    "scraping", "and",      "map",     "reduce",  "Leaf",   "flower", "edible",
    "THC",     "cbd",      "Dispensary", "menu",  "pickup",  "delivery", "price", "brand",
    "strain",  "hybrid",   "indica",   "sativa",  "gummies", "vape",   "pre-roll", "e-mail"};

constexpr std::array<const char*, 6> kSeparators = {" ", "  ", ", ", "; ", "! ", " - "};

constexpr std::array<const char*, 4> kCategories = {"Flower", "Edibles", "Vapes", "Concentrates"};
constexpr std::array<const char*, 6> kStrains = {"Blue Dream", "Sour Diesel", "OG Kush",
                                                 "Granddaddy Purple", "Jack Herer", "Wedding Cake"};
constexpr std::array<const char*, 3> kStrainTypes = {"Hybrid", "Sativa", "Indica"};
constexpr std::array<const char*, 4> kBrands = {"Leaf Co", "North Farms", "Canopy Labs", "Lake Effect"};
constexpr std::array<const char*, 10> kFiller = {
    "Smooth and balanced with notes of citrus.", "Lab tested for purity.", "Grown indoors in small batches.",
    "Best enjoyed in the evening.",              "Earthy aroma, sweet finish.", "Hand trimmed and slow cured.",
    "Packaged in a resealable jar.",             "Limited seasonal release.", "Pairs well with a quiet night.",
    "Consistent effects batch to batch."};

std::string fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

}  // namespace

std::vector<std::string> corpus_lines(std::size_t lines, std::uint64_t seed, std::size_t max_words) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> nwords(0, max_words);
    std::uniform_int_distribution<std::size_t> word(0, kWords.size() - 1);
    std::uniform_int_distribution<std::size_t> sep(0, kSeparators.size() - 1);
    std::uniform_int_distribution<int> upper(0, 3);
    std::vector<std::string> out;
    out.reserve(lines);
    for (std::size_t l = 0; l < lines; ++l) {
        std::string line;
        std::size_t n = nwords(rng);
        for (std::size_t w = 0; w < n; ++w) {
            if (w) line += kSeparators[sep(rng)];
            std::string token = kWords[word(rng)];
            if (upper(rng) == 0 && !token.empty()) token[0] = static_cast<char>(std::toupper(token[0]));
            line += token;
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::vector<ProductRecord> product_records(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> thc10(50, 320);   // tenths of a percent
    std::uniform_int_distribution<int> cbd10(0, 150);
    std::uniform_int_distribution<int> mg(5, 500);
    std::uniform_int_distribution<int> form(0, 5);
    std::uniform_int_distribution<std::size_t> filler(0, kFiller.size() - 1);
    std::uniform_int_distribution<int> nfill(2, 5);
    constexpr std::array<const char*, 4> kWeights = {"1", "3.5", "7", "14"};

    std::vector<ProductRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        ProductRecord r;
        r.product_name = std::string(kStrains[i % kStrains.size()]) + " #" + std::to_string(i);
        r.category = kCategories[i % kCategories.size()];
        r.product_url = "https://shop.example/products/" + std::to_string(i);
        r.dispensary_name = "Synthetic Dispensary";
        r.dispensary_url = "https://shop.example/";
        r.scraped_at = Timestamp{std::chrono::seconds{1700000000}};

        std::string d;
        int n = nfill(rng);
        for (int k = 0; k < n; ++k) d += std::string(kFiller[filler(rng)]) + " ";
        switch (form(rng)) {
            case 0: d += "Contains " + fixed1(thc10(rng) / 10.0) + "% THC and " + fixed1(cbd10(rng) / 10.0) + "% CBD."; break;
            case 1: d += "THC: " + fixed1(thc10(rng) / 10.0) + "%, CBD: " + fixed1(cbd10(rng) / 10.0) + "%."; break;
            case 2: d += "THC: " + std::to_string(mg(rng)) + "mg per package."; break;
            case 3: d += std::to_string(mg(rng)) + " mg THC per pack, " + fixed1(cbd10(rng) / 10.0) + "% CBD."; break;
            case 4: d += "THCA " + fixed1(thc10(rng) / 10.0) + "% by weight."; break;
            default: d += "No potency information."; break;
        }
        d += std::string(" Net weight ") + kWeights[i % kWeights.size()] + "g.";
        for (int k = 0; k < n; ++k) d += std::string(" ") + kFiller[filler(rng)];
        r.description = std::move(d);
        out.push_back(std::move(r));
    }
    return out;
}

std::string menu_page_html(std::size_t page, std::size_t products) {
    const std::string store = "store-" + std::to_string(page + 1);
    std::string h;
    h += "<!DOCTYPE html>\n<html>\n<head><title>" + store + " menu</title></head>\n<body>\n";
    h += "<header><h1 class=\"dispensary-name\">" + std::string(kBrands[page % kBrands.size()]) + " Dispensary " +
         std::to_string(page + 1) + "</h1></header>\n<main class=\"menu\">\n";
    for (std::size_t j = 0; j < products; ++j) {
        const std::size_t k = page * products + j;
        const int dollars = 20 + static_cast<int>((page * 7 + j * 3) % 40);
        const double thc = 15.0 + static_cast<double>((page * 3 + j * 5) % 150) / 10.0;
        const double cbd = static_cast<double>((page + j * 2) % 20) / 10.0;
        const std::string strain = kStrains[k % kStrains.size()];
        h += "  <div class=\"product-card\" data-sku=\"" + std::to_string(k) + "\">\n";
        h += "    <a class=\"product-link\" href=\"/dispensary/" + store + "/products/p-" + std::to_string(j + 1) +
             "\"><h2 class=\"product-name\">" + strain + " " + std::to_string(j + 1) + "</h2></a>\n";
        h += "    <img class=\"product-image\" src=\"/images/" + store + "-" + std::to_string(j + 1) + ".jpg\">\n";
        h += "    <span class=\"product-category\">" + std::string(kCategories[k % kCategories.size()]) + "</span>\n";
        h += "    <span class=\"product-brand\">" + std::string(kBrands[k % kBrands.size()]) + "</span>\n";
        h += "    <span class=\"strain-name\">" + strain + "</span>\n";
        h += "    <span class=\"strain-type\">" + std::string(kStrainTypes[k % kStrainTypes.size()]) + "</span>\n";
        h += "    <div class=\"cannabinoids\"><span class=\"thc\">THC " + fixed1(thc) + "%</span> <span class=\"cbd\">CBD " +
             fixed1(cbd) + "%</span></div>\n";
        h += "    <span class=\"price-original\">$" + std::to_string(dollars) + ".00</span>\n";
        if (j % 2 == 0) h += "    <span class=\"price-discount\">$" + std::to_string(dollars - 5) + ".00</span>\n";
        h += "    <span class=\"unit-weight\">3.5g</span>\n";
        h += "    <p class=\"product-description\">" +
             escape_html_text("Contains " + fixed1(thc) + "% THC & " + fixed1(cbd) + "% CBD. " +
                              kFiller[k % kFiller.size()]) +
             "</p>\n";
        h += "    <div class=\"rating\"><span class=\"rating-value\">" + fixed1(3.5 + static_cast<double>(k % 15) / 10.0) +
             "</span> <span class=\"review-count\">(" + std::to_string(10 + k * 3) + " reviews)</span></div>\n";
        h += std::string("    <div class=\"fulfillment\">") + (j % 2 == 0 ? "Delivery &amp; Pickup" : "Pickup") +
             "</div>\n";
        h += "  </div>\n";
    }
    h += "</main>\n</body>\n</html>\n";
    return h;
}

Site write_fixture_site(const std::filesystem::path& root, const SiteOptions& options) {
    std::filesystem::create_directories(root);
    Site site;
    site.root = root;
    nlohmann::ordered_json routes = nlohmann::ordered_json::object();
    for (std::size_t p = 0; p < options.pages; ++p) {
        const std::string store = "store-" + std::to_string(p + 1);
        const std::string path = "/dispensary/" + store + "/menu";
        const std::string file = store + ".html";
        write_file(root / file, menu_page_html(p, options.products_per_page));
        nlohmann::ordered_json route;
        route["file"] = file;
        route["latency_ms"] = options.latency_ms;
        route["fail_times"] = 0;
        route["status"] = options.missing_pages.count(p) ? 404 : 200;
        routes[path] = std::move(route);
        site.urls.push_back(options.origin + path);
    }
    nlohmann::ordered_json manifest;
    manifest["routes"] = std::move(routes);
    write_file(root / "manifest.json", manifest.dump(2) + "\n");
    return site;
}

}  // namespace parascrape::synthetic
