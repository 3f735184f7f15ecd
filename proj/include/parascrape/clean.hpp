#pragma once

#include <string>
#include <vector>

#include "parascrape/config.hpp"
#include "parascrape/record.hpp"

namespace parascrape {

struct DroppedRecord {
    ProductRecord record;
    std::vector<std::string> reasons;  // "missing:<field>", "range:<field>", "price:discount_gt_original", ...
};

struct FilterResult {
    std::vector<ProductRecord> kept;
    std::vector<DroppedRecord> dropped;
};

FilterResult filter_records(const std::vector<ProductRecord>& records, const CleanPolicy& policy);

// Stable, first record per key tuple wins. Throws std::invalid_argument on an
// empty key.
std::vector<ProductRecord> dedupe(const std::vector<ProductRecord>& records, const std::vector<Field>& key);

// Idempotent.
ProductRecord normalize(ProductRecord record, const CleanPolicy& policy);

struct CleanResult {
    std::vector<ProductRecord> records;
    std::vector<DroppedRecord> dropped;
    std::size_t duplicates_removed = 0;
};

// normalize -> filter -> dedupe
CleanResult clean_records(const std::vector<ProductRecord>& records, const CleanPolicy& policy);

}  // namespace parascrape
