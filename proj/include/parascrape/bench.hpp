#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace parascrape::bench {

enum class Workload { wordcount_synthetic, regex_synthetic, scrape_fixture };

std::string_view to_string(Workload w);
std::optional<Workload> parse_workload(std::string_view s);

struct BenchMatrix {
    std::vector<std::size_t> dataset_sizes;
    std::vector<std::size_t> worker_counts;
    std::size_t repetitions = 1;
    Workload workload = Workload::regex_synthetic;
};

struct BenchOptions {
    std::uint64_t seed = 42;
    std::int64_t scrape_latency_ms = 200;
    std::size_t chunk_count = 16;
    std::filesystem::path scratch_dir;  // fixture sites for scrape-fixture; temp dir when empty
};

struct BenchRow {
    Workload workload;
    std::size_t size = 0;
    std::size_t workers = 0;
    std::size_t rep = 0;
    std::optional<double> wall_seconds;  // absent when the cell errored
    std::optional<double> speedup_vs_1;  // median(workers=1) / median(this cell)
    std::string error;
};

// Throws std::invalid_argument for an empty or zero-valued matrix. A workers=1
// baseline is added for every size when missing.
void validate(const BenchMatrix& m);

std::vector<BenchRow> run_bench(const BenchMatrix& matrix, const BenchOptions& options = {});

double median(std::vector<double> xs);

// Median speedup for (size, workers) read back from the rows.
std::optional<double> speedup_for(const std::vector<BenchRow>& rows, std::size_t size, std::size_t workers);

// Columns: workload,size,workers,rep,wall_seconds,speedup_vs_1
std::string to_csv(const std::vector<BenchRow>& rows);

// Single timed runs, exposed for the acceptance suite.
double time_regex_job(std::size_t records, std::size_t workers, std::size_t chunks, std::uint64_t seed);
double time_wordcount_job(std::size_t lines, std::size_t workers, std::size_t chunks, std::uint64_t seed);

}  // namespace parascrape::bench
