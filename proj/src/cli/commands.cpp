#include "parascrape/cli.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "parascrape/bench.hpp"
#include "parascrape/clean.hpp"
#include "parascrape/config.hpp"
#include "parascrape/csv.hpp"
#include "parascrape/extract.hpp"
#include "parascrape/jobs.hpp"
#include "parascrape/mapreduce.hpp"
#include "parascrape/scrape.hpp"
#include "parascrape/selector.hpp"
#include "parascrape/url.hpp"

namespace parascrape::cli {

namespace {

// Raised for bad input or configuration; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string config_path;
    std::size_t workers = 1;
    std::size_t chunks = 1;
    std::size_t chunk_size = 1;
    std::string transport;
    std::string format;
    std::string output;
    bool allow_partial = false;
    double rps = 0;

    CLI::Option* workers_opt = nullptr;
    CLI::Option* chunks_opt = nullptr;
    CLI::Option* chunk_size_opt = nullptr;
    CLI::Option* transport_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    CLI::Option* output_opt = nullptr;
    CLI::Option* rps_opt = nullptr;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_workers = true) {
    app->add_option("--config", f.config_path, "JSON config file; flags override its values");
    if (with_workers) f.workers_opt = app->add_option("--workers", f.workers, "worker count")->check(CLI::PositiveNumber);
    f.chunks_opt = app->add_option("--chunks", f.chunks, "number of input chunks")->check(CLI::PositiveNumber);
    f.chunk_size_opt =
        app->add_option("--chunk-size", f.chunk_size, "items per chunk")->check(CLI::PositiveNumber)->excludes(f.chunks_opt);
    f.transport_opt = app->add_option("--transport", f.transport, "http | fixture:<dir>");
    f.format_opt = app->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    f.output_opt = app->add_option("-o,--output", f.output, "output path");
    app->add_flag("--allow-partial", f.allow_partial, "write output even when some items failed");
    f.rps_opt = app->add_option("--rate-limit-rps", f.rps, "requests per second per host")->check(CLI::PositiveNumber);
}

PipelineConfig resolve_config(const CommonFlags& f) {
    PipelineConfig c;
    c.transport = TransportKind::http;
    if (!f.config_path.empty()) c = load_config(f.config_path, c);
    if (f.workers_opt && f.workers_opt->count()) c.worker_count = f.workers;
    if (f.chunks_opt->count()) c.chunking = ChunkCount{f.chunks};
    if (f.chunk_size_opt->count()) c.chunking = ChunkSize{f.chunk_size};
    if (f.transport_opt->count()) {
        if (f.transport == "http") {
            c.transport = TransportKind::http;
        } else if (f.transport.rfind("fixture:", 0) == 0 && f.transport.size() > 8) {
            c.transport = TransportKind::fixture_dir;
            c.fixture_root = f.transport.substr(8);
        } else {
            throw InputError("--transport must be 'http' or 'fixture:<dir>'");
        }
    }
    if (f.format_opt->count()) c.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (f.output_opt->count()) c.output_path = f.output;
    if (f.allow_partial) c.allow_partial = true;
    if (f.rps_opt->count()) {
        c.rate_limit_rps = f.rps;
        c.rate_limit_capacity = std::max(1.0, f.rps);
    }
    validate(c);
    return c;
}

std::unique_ptr<Transport> make_transport(const PipelineConfig& c, Clock& clock) {
    if (c.transport == TransportKind::http) return std::make_unique<HttpTransport>();
    if (c.fixture_root.empty()) throw InputError("fixture transport needs a directory");
    if (!std::filesystem::is_directory(c.fixture_root)) {
        throw InputError("fixture directory not found: " + c.fixture_root.string());
    }
    return std::make_unique<FixtureTransport>(c.fixture_root, clock);
}

Timestamp run_timestamp(const std::string& now_flag) {
    if (now_flag.empty()) return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    auto t = parse_timestamp(now_flag);
    if (!t) throw InputError("--now must look like 2024-01-31T12:00:00Z");
    return *t;
}

void emit(const std::string& text, const std::filesystem::path& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

// discover -------------------------------------------------------------------

struct DiscoverArgs {
    CommonFlags common;
    std::string input;
    std::string base_url;
    std::string selector{kDefaultCardSelector};
};

int cmd_discover(const DiscoverArgs& a, std::ostream& out, std::ostream& err) {
    auto config = resolve_config(a.common);
    auto selector = parse_selector(a.selector);

    std::string page;
    std::string base = a.base_url;
    if (url::is_absolute(a.input)) {
        SteadyClock clock;
        auto transport = make_transport(config, clock);
        RateLimiter limiter(config.rate_limit_rps, config.rate_limit_capacity, clock);
        FetchDeps deps{*transport, limiter, clock, RetryPolicy{config.retry_max, config.retry_backoff_ms}};
        auto res = fetch(a.input, deps);
        if (!res.ok()) throw InputError("cannot fetch listing: " + res.describe());
        page = std::move(*res.body);
        if (base.empty()) base = a.input;
    } else {
        page = read_file(a.input);
    }

    auto urls = extract_dispensary_urls(parse_html(page), base, selector);
    if (urls.empty()) err << "warning: no dispensary links matched " << a.selector << "\n";
    std::string text;
    for (const auto& u : urls) text += u + "\n";
    emit(text, config.output_path, out);
    err << "discovered " << urls.size() << " dispensary URLs\n";
    return kOk;
}

// scrape ---------------------------------------------------------------------

struct ScrapeArgs {
    CommonFlags common;
    std::string urls_path;
    std::string rules_path;
    std::string now;
};

int cmd_scrape(const ScrapeArgs& a, std::ostream& out, std::ostream& err) {
    auto config = resolve_config(a.common);
    auto urls = parse_url_list(read_file(a.urls_path));
    if (urls.empty()) throw InputError("no URLs in " + a.urls_path);
    auto tmpl = a.rules_path.empty() ? default_page_template() : load_page_template(a.rules_path);
    const auto now = run_timestamp(a.now);

    SteadyClock clock;
    auto transport = make_transport(config, clock);
    RateLimiter limiter(config.rate_limit_rps, config.rate_limit_capacity, clock);
    FetchDeps deps{*transport, limiter, clock, RetryPolicy{config.retry_max, config.retry_backoff_ms}};

    auto res = scrape_parallel(urls, template_extractor(std::move(tmpl), now), deps, config.worker_count);
    auto& report = res.report;

    const auto t0 = std::chrono::steady_clock::now();
    auto cleaned = clean_records(res.records, config.clean);
    report.per_phase_seconds["clean"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& d : cleaned.dropped) {
        std::string why;
        for (const auto& r : d.reasons) why += (why.empty() ? "" : ",") + r;
        report.errors.push_back({d.record.product_url, "clean", why});
    }
    report.records_out = cleaned.records.size();

    if (config.format == OutputFormat::json) {
        emit(to_json(cleaned.records), config.output_path, out);
    } else {
        emit(to_csv(cleaned.records), config.output_path, out);
    }
    if (!config.output_path.empty()) write_report(report, config.output_path);

    err << "scraped " << report.items_out << "/" << report.items_in << " pages, " << cleaned.records.size()
        << " records (" << cleaned.dropped.size() << " dropped, " << cleaned.duplicates_removed
        << " duplicates) in " << format_decimal(report.wall_seconds) << " s\n";
    for (const auto& e : report.errors) {
        if (e.phase != "clean") err << "  " << e.phase << " " << e.item_id << ": " << e.message << "\n";
    }
    return cleaned.records.empty() ? kNothingProduced : kOk;
}

// mapreduce ------------------------------------------------------------------

struct MapReduceArgs {
    CommonFlags common;
    std::string job;
    std::string input;
    std::string patterns;
    bool combiner = false;
};

template <class T>
int finish_job(const mr::JobResult& res, const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    const auto& report = res.report;
    std::size_t shown = 0;
    for (const auto& e : report.errors) {
        if (shown++ == 10) {
            err << "  ... " << report.errors.size() - 10 << " more\n";
            break;
        }
        err << "  " << e.phase << " " << e.item_id << ": " << e.message << "\n";
    }
    if (config.output_path.empty() && (report.errors.empty() || config.allow_partial)) {
        out << (config.format == OutputFormat::json ? to_json(res.results) : to_csv(res.results));
    }
    err << "mapreduce: " << report.items_in << " items, " << res.results.size() << " keys, " << report.errors.size()
        << " errors in " << format_decimal(report.wall_seconds) << " s\n";
    if (!report.errors.empty() && !config.allow_partial) {
        err << "output not written: " << report.errors.size() << " items failed (use --allow-partial)\n";
        return kNothingProduced;
    }
    return res.results.empty() ? kNothingProduced : kOk;
}

int cmd_mapreduce(const MapReduceArgs& a, std::ostream& out, std::ostream& err) {
    auto config = resolve_config(a.common);
    if (a.job == "wordcount") {
        auto lines = jobs::split_lines(read_file(a.input));
        auto res = mr::execute(jobs::wordcount_job(config, a.combiner), lines);
        return finish_job<std::string>(res, config, out, err);
    }
    auto rules = a.patterns.empty() ? jobs::default_pattern_rules() : jobs::load_pattern_rules(a.patterns);
    auto records = read_products_csv(a.input);
    auto res = mr::execute(jobs::extract_job(config, std::move(rules)), records);
    return finish_job<ProductRecord>(res, config, out, err);
}

// bench ----------------------------------------------------------------------

struct BenchArgs {
    std::string workload = "regex-synthetic";
    std::vector<std::size_t> sizes{10000};
    std::vector<std::size_t> workers{1, 2};
    std::size_t reps = 3;
    std::int64_t latency_ms = 200;
    std::uint64_t seed = 42;
    std::size_t chunks = 16;
    std::string scratch;
    std::string output;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    auto workload = bench::parse_workload(a.workload);
    if (!workload) throw InputError("unknown workload '" + a.workload + "'");
    bench::BenchMatrix m{a.sizes, a.workers, a.reps, *workload};
    bench::validate(m);
    bench::BenchOptions opt;
    opt.seed = a.seed;
    opt.scrape_latency_ms = a.latency_ms;
    opt.chunk_count = a.chunks;
    opt.scratch_dir = a.scratch;

    auto rows = bench::run_bench(m, opt);
    emit(bench::to_csv(rows), a.output, out);
    for (const auto& r : rows) {
        if (!r.error.empty()) err << "cell size=" << r.size << " workers=" << r.workers << " failed: " << r.error << "\n";
    }
    for (auto size : a.sizes) {
        for (const auto& r : rows) {
            if (r.size == size && r.rep == 1 && r.speedup_vs_1) {
                err << bench::to_string(*workload) << " size=" << size << " workers=" << r.workers
                    << " speedup=" << format_decimal(*r.speedup_vs_1) << "\n";
            }
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parallel dispensary menu scraping and MapReduce processing", "parascrape"};
    app.require_subcommand(1);

    DiscoverArgs discover;
    auto* d = app.add_subcommand("discover", "list dispensary menu URLs from a state listing page");
    d->add_option("input", discover.input, "listing URL or local HTML file")->required();
    d->add_option("--base-url", discover.base_url, "base for relative links (defaults to the input URL)");
    d->add_option("--selector", discover.selector, "card link selector");
    add_common(d, discover.common, false);

    ScrapeArgs scrape;
    auto* s = app.add_subcommand("scrape", "fetch menu pages and write product records");
    s->add_option("urls", scrape.urls_path, "file with one URL per line")->required();
    s->add_option("--rules", scrape.rules_path, "extraction rule file (JSON)");
    s->add_option("--now", scrape.now, "scraped_at timestamp for every record (ISO-8601, UTC)");
    add_common(s, scrape.common);

    MapReduceArgs mapreduce;
    auto* m = app.add_subcommand("mapreduce", "run a builtin MapReduce job");
    m->add_option("job", mapreduce.job, "wordcount | extract")->required()->check(CLI::IsMember({"wordcount", "extract"}));
    m->add_option("input", mapreduce.input, "text corpus (wordcount) or products CSV (extract)")->required();
    m->add_option("--patterns", mapreduce.patterns, "pattern rule file for extract (JSON)");
    m->add_flag("--combiner", mapreduce.combiner, "pre-aggregate each chunk (wordcount)");
    add_common(m, mapreduce.common);

    BenchArgs bench_args;
    auto* b = app.add_subcommand("bench", "time a workload across dataset sizes and worker counts");
    b->add_option("--workload", bench_args.workload, "wordcount-synthetic | regex-synthetic | scrape-fixture");
    b->add_option("--sizes", bench_args.sizes, "dataset sizes (records, lines or pages)")->delimiter(',');
    b->add_option("--workers", bench_args.workers, "worker counts")->delimiter(',');
    b->add_option("--reps", bench_args.reps, "repetitions per cell");
    b->add_option("--latency-ms", bench_args.latency_ms, "injected page latency for scrape-fixture");
    b->add_option("--seed", bench_args.seed, "synthetic data seed");
    b->add_option("--chunks", bench_args.chunks, "chunks per MapReduce job");
    b->add_option("--scratch", bench_args.scratch, "directory for generated fixture sites");
    b->add_option("-o,--output", bench_args.output, "bench table path (stdout when absent)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (d->parsed()) return cmd_discover(discover, out, err);
        if (s->parsed()) return cmd_scrape(scrape, out, err);
        if (m->parsed()) return cmd_mapreduce(mapreduce, out, err);
        return cmd_bench(bench_args, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
    } catch (const RowError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const RuleError& e) {
        err << "rule error: " << e.what() << "\n";
    } catch (const jobs::PatternError& e) {
        err << "pattern error: " << e.what() << "\n";
    } catch (const SelectorError& e) {
        err << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return kInputError;
}

}  // namespace parascrape::cli
