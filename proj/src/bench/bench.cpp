#include "parascrape/bench.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <map>
#include <stdexcept>

#include "parascrape/jobs.hpp"
#include "parascrape/mapreduce.hpp"
#include "parascrape/scrape.hpp"
#include "parascrape/synthetic.hpp"

namespace parascrape::bench {

std::string_view to_string(Workload w) {
    switch (w) {
        case Workload::wordcount_synthetic: return "wordcount-synthetic";
        case Workload::regex_synthetic: return "regex-synthetic";
        case Workload::scrape_fixture: return "scrape-fixture";
    }
    return "";
}

std::optional<Workload> parse_workload(std::string_view s) {
    if (s == "wordcount-synthetic") return Workload::wordcount_synthetic;
    if (s == "regex-synthetic") return Workload::regex_synthetic;
    if (s == "scrape-fixture") return Workload::scrape_fixture;
    return std::nullopt;
}

void validate(const BenchMatrix& m) {
    if (m.dataset_sizes.empty()) throw std::invalid_argument("bench needs at least one dataset size");
    if (m.worker_counts.empty()) throw std::invalid_argument("bench needs at least one worker count");
    if (m.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    for (auto s : m.dataset_sizes) {
        if (s < 1) throw std::invalid_argument("dataset sizes must be >= 1");
    }
    for (auto w : m.worker_counts) {
        if (w < 1) throw std::invalid_argument("worker counts must be >= 1");
    }
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of an empty list");
    std::sort(xs.begin(), xs.end());
    const auto n = xs.size();
    return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

namespace {

using steady = std::chrono::steady_clock;

double seconds_since(steady::time_point t) { return std::chrono::duration<double>(steady::now() - t).count(); }

PipelineConfig job_config(std::size_t workers, std::size_t chunks) {
    PipelineConfig c;
    c.worker_count = workers;
    c.chunking = ChunkCount{chunks};
    return c;
}

template <class T>
double time_job(const mr::JobSpec<T>& job, const std::vector<T>& items) {
    auto t0 = steady::now();
    auto res = mr::execute(job, items);
    double s = seconds_since(t0);
    if (!res.report.errors.empty()) throw std::runtime_error(res.report.errors.front().message);
    return s;
}

class Cell {
public:
    virtual ~Cell() = default;
    virtual double run(std::size_t workers) = 0;
};

class RegexCell final : public Cell {
public:
    RegexCell(std::size_t n, std::uint64_t seed, std::size_t chunks)
        : items_(synthetic::product_records(n, seed)), rules_(jobs::default_pattern_rules()), chunks_(chunks) {}
    double run(std::size_t workers) override {
        return time_job(jobs::extract_job(job_config(workers, chunks_), rules_), items_);
    }

private:
    std::vector<ProductRecord> items_;
    std::vector<jobs::PatternRule> rules_;
    std::size_t chunks_;
};

class WordCountCell final : public Cell {
public:
    WordCountCell(std::size_t n, std::uint64_t seed, std::size_t chunks)
        : items_(synthetic::corpus_lines(n, seed)), chunks_(chunks) {}
    double run(std::size_t workers) override {
        return time_job(jobs::wordcount_job(job_config(workers, chunks_)), items_);
    }

private:
    std::vector<std::string> items_;
    std::size_t chunks_;
};

class ScrapeCell final : public Cell {
public:
    ScrapeCell(std::size_t pages, const BenchOptions& opt) {
        auto base = opt.scratch_dir.empty() ? std::filesystem::temp_directory_path() / "parascrape-bench" : opt.scratch_dir;
        synthetic::SiteOptions so;
        so.pages = pages;
        so.latency_ms = opt.scrape_latency_ms;
        site_ = synthetic::write_fixture_site(base / ("site-" + std::to_string(pages)), so);
    }
    double run(std::size_t workers) override {
        SteadyClock clock;
        FixtureTransport transport(site_.root, clock);
        // Politeness limits are for live hosts; the bench measures the pool.
        RateLimiter limiter(1e9, 1e9, clock);
        FetchDeps deps{transport, limiter, clock, RetryPolicy{0, 0}};
        auto extractor = template_extractor(default_page_template(), Timestamp{});
        auto t0 = steady::now();
        auto res = scrape_parallel(site_.urls, extractor, deps, workers);
        double s = seconds_since(t0);
        if (!res.report.errors.empty()) throw std::runtime_error(res.report.errors.front().message);
        return s;
    }

private:
    synthetic::Site site_;
};

}  // namespace

double time_regex_job(std::size_t records, std::size_t workers, std::size_t chunks, std::uint64_t seed) {
    RegexCell cell(records, seed, chunks);
    return cell.run(workers);
}

double time_wordcount_job(std::size_t lines, std::size_t workers, std::size_t chunks, std::uint64_t seed) {
    WordCountCell cell(lines, seed, chunks);
    return cell.run(workers);
}

std::vector<BenchRow> run_bench(const BenchMatrix& matrix, const BenchOptions& options) {
    validate(matrix);
    std::vector<std::size_t> workers = matrix.worker_counts;
    if (std::find(workers.begin(), workers.end(), 1) == workers.end()) workers.insert(workers.begin(), 1);

    std::vector<BenchRow> rows;
    for (std::size_t size : matrix.dataset_sizes) {
        std::unique_ptr<Cell> cell;
        std::string setup_error;
        try {
            switch (matrix.workload) {
                case Workload::regex_synthetic: cell = std::make_unique<RegexCell>(size, options.seed, options.chunk_count); break;
                case Workload::wordcount_synthetic:
                    cell = std::make_unique<WordCountCell>(size, options.seed, options.chunk_count);
                    break;
                case Workload::scrape_fixture: cell = std::make_unique<ScrapeCell>(size, options); break;
            }
        } catch (const std::exception& e) {
            setup_error = e.what();
        }

        std::map<std::size_t, std::vector<double>> times;
        const std::size_t first_row = rows.size();
        for (std::size_t w : workers) {
            for (std::size_t rep = 1; rep <= matrix.repetitions; ++rep) {
                BenchRow row{matrix.workload, size, w, rep, std::nullopt, std::nullopt, setup_error};
                if (cell) {
                    try {
                        row.wall_seconds = cell->run(w);
                        times[w].push_back(*row.wall_seconds);
                    } catch (const std::exception& e) {
                        row.error = e.what();
                    }
                }
                rows.push_back(std::move(row));
            }
        }
        const bool has_base = times.count(1) && !times[1].empty();
        const double base = has_base ? median(times[1]) : 0.0;
        for (std::size_t i = first_row; i < rows.size(); ++i) {
            auto& row = rows[i];
            auto it = times.find(row.workers);
            if (!row.wall_seconds || !has_base || it == times.end() || it->second.empty()) continue;
            double m = median(it->second);
            row.speedup_vs_1 = row.workers == 1 ? 1.0 : (m > 0 ? base / m : 0.0);
        }
    }
    return rows;
}

std::optional<double> speedup_for(const std::vector<BenchRow>& rows, std::size_t size, std::size_t workers) {
    for (const auto& r : rows) {
        if (r.size == size && r.workers == workers && r.speedup_vs_1) return r.speedup_vs_1;
    }
    return std::nullopt;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::string out = "workload,size,workers,rep,wall_seconds,speedup_vs_1\n";
    char buf[64];
    for (const auto& r : rows) {
        out += std::string(to_string(r.workload)) + "," + std::to_string(r.size) + "," + std::to_string(r.workers) +
               "," + std::to_string(r.rep) + ",";
        if (r.wall_seconds) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.wall_seconds);
            out += buf;
        } else {
            out += "error";
        }
        out += ",";
        if (r.speedup_vs_1) {
            std::snprintf(buf, sizeof buf, "%.4f", *r.speedup_vs_1);
            out += buf;
        } else {
            out += "error";
        }
        out += "\n";
    }
    return out;
}

}  // namespace parascrape::bench
