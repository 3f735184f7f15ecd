#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "parascrape/csv.hpp"
#include "parascrape/record.hpp"

namespace parascrape {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChunkCount {
    std::size_t count = 1;
};
struct ChunkSize {
    std::size_t size = 1;
};
using ChunkPolicy = std::variant<ChunkCount, ChunkSize>;

enum class TransportKind { http, fixture_dir };

struct CleanPolicy {
    std::set<Field> required_fields{Field::product_name, Field::category, Field::product_url};
    std::vector<Field> dedup_key{Field::product_url};
    bool trim_collapse_ws = true;
    bool lowercase_category = true;
    bool clamp_percents = false;
    bool strip_currency = true;
};

struct PipelineConfig {
    std::size_t worker_count = 1;
    ChunkPolicy chunking = ChunkCount{1};
    double rate_limit_rps = 2.0;
    double rate_limit_capacity = 2.0;
    int retry_max = 2;
    std::int64_t retry_backoff_ms = 100;
    TransportKind transport = TransportKind::fixture_dir;
    std::filesystem::path fixture_root;
    std::filesystem::path input_path;
    std::filesystem::path output_path;
    OutputFormat format = OutputFormat::csv;
    bool allow_partial = false;
    CleanPolicy clean;
};

// Throws ConfigError when an invariant does not hold.
void validate(const PipelineConfig& config);

// Reads a JSON config document. Keys absent from the document keep the values
// already in `base`.
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});
PipelineConfig parse_config(std::string_view json_text, PipelineConfig base = {});

std::string to_json(const RunReport& report);
std::filesystem::path report_path_for(const std::filesystem::path& output);
void write_report(const RunReport& report, const std::filesystem::path& output);

}  // namespace parascrape
