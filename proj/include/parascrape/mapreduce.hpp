#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parascrape/config.hpp"
#include "parascrape/csv.hpp"
#include "parascrape/record.hpp"

namespace parascrape::mr {

// A contiguous slice of the job input. Views into the caller's item vector.
template <class T>
struct Chunk {
    std::size_t index = 0;
    std::span<const T> records;
};

template <class T>
using Mapper = std::function<std::vector<KeyValuePair>(const T&)>;
using Reducer = std::function<KeyValuePair(const std::string& key, const std::vector<Value>& values)>;

template <class T>
struct JobSpec {
    Mapper<T> mapper;
    Reducer reducer;
    std::optional<Reducer> combiner;  // per-chunk pre-aggregation, off by default
    PipelineConfig config;
};

struct PhaseResult {
    std::vector<KeyValuePair> pairs;
    std::vector<RunError> errors;
    std::vector<std::size_t> per_worker;  // tasks run by each worker
};

struct JobResult {
    std::vector<KeyValuePair> results;
    RunReport report;
    bool output_written = false;
};

// Sizes of chunks for n items. chunk_count=k gives min(k, n) chunks whose sizes
// differ by at most one, larger ones first.
std::vector<std::size_t> chunk_sizes(std::size_t n, const ChunkPolicy& policy);

template <class T>
std::vector<Chunk<T>> make_chunks(std::span<const T> items, const ChunkPolicy& policy) {
    std::vector<Chunk<T>> out;
    std::size_t offset = 0;
    for (std::size_t size : chunk_sizes(items.size(), policy)) {
        out.push_back({out.size(), items.subspan(offset, size)});
        offset += size;
    }
    return out;
}

template <class T>
std::vector<Chunk<T>> make_chunks(const std::vector<T>& items, const ChunkPolicy& policy) {
    return make_chunks(std::span<const T>(items), policy);
}

// Runs task(i) for i in [0, tasks) on `workers` threads. Task i belongs to
// worker i % workers. Returns the task count per worker.
std::vector<std::size_t> run_pool(std::size_t tasks, std::size_t workers, const std::function<void(std::size_t)>& task);

// Groups by exact key. Values keep emission order; groups ascend by key bytes.
std::vector<GroupedPairs> shuffle(std::vector<KeyValuePair> pairs);

std::vector<KeyValuePair> combine_chunk(std::vector<KeyValuePair> pairs, const Reducer& combiner);

// Output is concatenated in (chunk index, emission order). A mapper failure
// discards that chunk's pairs and records one error naming chunk and item.
template <class T>
PhaseResult run_map(const std::vector<Chunk<T>>& chunks, const Mapper<T>& mapper, std::size_t workers,
                    const Reducer* combiner = nullptr) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    struct Slot {
        std::vector<KeyValuePair> pairs;
        std::optional<RunError> error;
    };
    std::vector<Slot> slots(chunks.size());
    PhaseResult out;
    out.per_worker = run_pool(chunks.size(), workers, [&](std::size_t c) {
        const auto& chunk = chunks[c];
        Slot& slot = slots[c];
        std::size_t ordinal = 0;
        const std::string where = "chunk:" + std::to_string(chunk.index);
        try {
            for (; ordinal < chunk.records.size(); ++ordinal) {
                auto emitted = mapper(chunk.records[ordinal]);
                for (auto& kv : emitted) {
                    if (kv.key.empty()) throw std::runtime_error("mapper emitted an empty key");
                    slot.pairs.push_back(std::move(kv));
                }
            }
        } catch (const std::exception& e) {
            slot.pairs.clear();
            slot.error = RunError{where + "/item:" + std::to_string(ordinal), "map", e.what()};
            return;
        }
        if (combiner) {
            try {
                slot.pairs = combine_chunk(std::move(slot.pairs), *combiner);
            } catch (const std::exception& e) {
                slot.pairs.clear();
                slot.error = RunError{where, "combine", e.what()};
            }
        }
    });
    std::size_t total = 0;
    for (const auto& s : slots) total += s.pairs.size();
    out.pairs.reserve(total);
    for (auto& s : slots) {
        if (s.error) out.errors.push_back(std::move(*s.error));
        for (auto& kv : s.pairs) out.pairs.push_back(std::move(kv));
    }
    return out;
}

// One reducer call per group; output in group order. Failures are recorded
// per group key.
PhaseResult run_reduce(const std::vector<GroupedPairs>& groups, const Reducer& reducer, std::size_t workers);

template <class T>
JobResult execute(const JobSpec<T>& job, const std::vector<T>& items) {
    using steady = std::chrono::steady_clock;
    auto since = [](steady::time_point t) { return std::chrono::duration<double>(steady::now() - t).count(); };

    validate(job.config);
    if (!job.mapper || !job.reducer) throw std::invalid_argument("job needs a mapper and a reducer");
    const std::size_t workers = job.config.worker_count;

    JobResult res;
    auto& report = res.report;
    report.started_at = std::chrono::system_clock::now();
    report.items_in = items.size();
    const auto t0 = steady::now();

    auto t = steady::now();
    auto chunks = make_chunks(items, job.config.chunking);
    report.per_phase_seconds["chunk"] = since(t);

    t = steady::now();
    auto mapped = run_map(chunks, job.mapper, workers, job.combiner ? &*job.combiner : nullptr);
    report.per_phase_seconds["map"] = since(t);
    report.per_worker_items = mapped.per_worker;

    t = steady::now();
    auto groups = shuffle(std::move(mapped.pairs));
    report.per_phase_seconds["shuffle"] = since(t);

    t = steady::now();
    auto reduced = run_reduce(groups, job.reducer, workers);
    report.per_phase_seconds["reduce"] = since(t);

    report.errors = std::move(mapped.errors);
    for (auto& e : reduced.errors) report.errors.push_back(std::move(e));
    res.results = std::move(reduced.pairs);
    report.items_out = res.results.size();
    report.records_out = res.results.size();

    const auto& out_path = job.config.output_path;
    if (!out_path.empty() && (report.errors.empty() || job.config.allow_partial)) {
        t = steady::now();
        write_output(res.results, out_path, job.config.format);
        report.per_phase_seconds["write"] = since(t);
        res.output_written = true;
    }
    report.finished_at = std::chrono::system_clock::now();
    report.wall_seconds = since(t0);
    if (!out_path.empty()) write_report(report, out_path);
    return res;
}

}  // namespace parascrape::mr
