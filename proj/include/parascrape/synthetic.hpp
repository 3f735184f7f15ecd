#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "parascrape/csv.hpp"
#include "parascrape/record.hpp"

namespace parascrape::synthetic {

// Deterministic text corpus: `lines` lines of 0..max_words words drawn from a
// small vocabulary with mixed case and punctuation.
std::vector<std::string> corpus_lines(std::size_t lines, std::uint64_t seed, std::size_t max_words = 12);

// Product records with generated descriptions carrying THC/CBD/weight phrases.
std::vector<ProductRecord> product_records(std::size_t count, std::uint64_t seed);

struct SiteOptions {
    std::size_t pages = 20;
    std::size_t products_per_page = 2;
    std::int64_t latency_ms = 0;
    std::set<std::size_t> missing_pages;  // 0-based page indices answering 404
    std::string origin = "http://fixture.local";
};

struct Site {
    std::filesystem::path root;
    std::vector<std::string> urls;
};

// Writes menu pages and manifest.json under `root` for FixtureTransport.
Site write_fixture_site(const std::filesystem::path& root, const SiteOptions& options);

std::string menu_page_html(std::size_t page, std::size_t products);

}  // namespace parascrape::synthetic
