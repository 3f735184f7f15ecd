#include "parascrape/config.hpp"

#include <chrono>
#include <cstdio>

#include <json.hpp>

namespace parascrape {

using nlohmann::json;

void validate(const PipelineConfig& c) {
    if (c.worker_count < 1) throw ConfigError("worker_count must be >= 1");
    if (auto* n = std::get_if<ChunkCount>(&c.chunking); n && n->count < 1) {
        throw ConfigError("chunk_count must be >= 1");
    }
    if (auto* s = std::get_if<ChunkSize>(&c.chunking); s && s->size < 1) {
        throw ConfigError("chunk_size must be >= 1");
    }
    if (!(c.rate_limit_rps > 0.0)) throw ConfigError("rate_limit_rps must be > 0");
    if (!(c.rate_limit_capacity >= 1.0)) throw ConfigError("rate_limit_capacity must be >= 1");
    if (c.retry_max < 0) throw ConfigError("retry_max must be >= 0");
    if (c.retry_backoff_ms < 0) throw ConfigError("retry_backoff_ms must be >= 0");
    if (c.clean.dedup_key.empty()) throw ConfigError("clean.dedup_key must not be empty");
}

namespace {

Field field_or_throw(const std::string& name) {
    auto f = field_from_name(name);
    if (!f) throw ConfigError("unknown field '" + name + "'");
    return *f;
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text, PipelineConfig c) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    if (j.contains("workers")) c.worker_count = get_as<std::size_t>(j, "workers");
    if (j.contains("chunks") && j.contains("chunk_size")) {
        throw ConfigError("chunks and chunk_size are mutually exclusive");
    }
    if (j.contains("chunks")) c.chunking = ChunkCount{get_as<std::size_t>(j, "chunks")};
    if (j.contains("chunk_size")) c.chunking = ChunkSize{get_as<std::size_t>(j, "chunk_size")};
    if (j.contains("rate_limit_rps")) c.rate_limit_rps = get_as<double>(j, "rate_limit_rps");
    if (j.contains("rate_limit_capacity")) c.rate_limit_capacity = get_as<double>(j, "rate_limit_capacity");
    if (j.contains("retry_max")) c.retry_max = get_as<int>(j, "retry_max");
    if (j.contains("retry_backoff_ms")) c.retry_backoff_ms = get_as<std::int64_t>(j, "retry_backoff_ms");
    if (j.contains("transport")) {
        auto t = get_as<std::string>(j, "transport");
        if (t == "http") {
            c.transport = TransportKind::http;
        } else if (t.rfind("fixture:", 0) == 0) {
            c.transport = TransportKind::fixture_dir;
            c.fixture_root = t.substr(8);
        } else {
            throw ConfigError("transport must be 'http' or 'fixture:<dir>'");
        }
    }
    if (j.contains("input")) c.input_path = get_as<std::string>(j, "input");
    if (j.contains("output")) c.output_path = get_as<std::string>(j, "output");
    if (j.contains("format")) {
        auto f = get_as<std::string>(j, "format");
        if (f == "csv") {
            c.format = OutputFormat::csv;
        } else if (f == "json") {
            c.format = OutputFormat::json;
        } else {
            throw ConfigError("format must be 'csv' or 'json'");
        }
    }
    if (j.contains("allow_partial")) c.allow_partial = get_as<bool>(j, "allow_partial");

    if (j.contains("clean")) {
        const auto& cl = j.at("clean");
        if (!cl.is_object()) throw ConfigError("clean must be an object");
        if (cl.contains("required_fields")) {
            c.clean.required_fields.clear();
            for (const auto& f : get_as<std::vector<std::string>>(cl, "required_fields")) {
                c.clean.required_fields.insert(field_or_throw(f));
            }
        }
        if (cl.contains("dedup_key")) {
            c.clean.dedup_key.clear();
            for (const auto& f : get_as<std::vector<std::string>>(cl, "dedup_key")) {
                c.clean.dedup_key.push_back(field_or_throw(f));
            }
        }
        if (cl.contains("normalizations")) {
            const auto& n = cl.at("normalizations");
            if (n.contains("trim_collapse_ws")) c.clean.trim_collapse_ws = get_as<bool>(n, "trim_collapse_ws");
            if (n.contains("lowercase_category")) c.clean.lowercase_category = get_as<bool>(n, "lowercase_category");
            if (n.contains("clamp_percents")) c.clean.clamp_percents = get_as<bool>(n, "clamp_percents");
            if (n.contains("strip_currency")) c.clean.strip_currency = get_as<bool>(n, "strip_currency");
        }
    }
    validate(c);
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text, std::move(base));
}

namespace {

std::string iso_millis(std::chrono::system_clock::time_point t) {
    using namespace std::chrono;
    auto secs = floor<seconds>(t);
    auto ms = duration_cast<milliseconds>(t - secs).count();
    auto base = format_timestamp(Timestamp{secs.time_since_epoch()});
    char frac[8];
    std::snprintf(frac, sizeof frac, ".%03lld", static_cast<long long>(ms));
    return base.substr(0, 19) + frac + "Z";
}

}  // namespace

std::string to_json(const RunReport& r) {
    nlohmann::ordered_json o;
    o["started_at"] = iso_millis(r.started_at);
    o["finished_at"] = iso_millis(r.finished_at);
    o["wall_seconds"] = r.wall_seconds;
    o["items_in"] = r.items_in;
    o["items_out"] = r.items_out;
    o["records_out"] = r.records_out;
    auto errors = nlohmann::ordered_json::array();
    for (const auto& e : r.errors) {
        errors.push_back({{"item_id", e.item_id}, {"phase", e.phase}, {"message", e.message}});
    }
    o["errors"] = std::move(errors);
    nlohmann::ordered_json phases = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.per_phase_seconds) phases[k] = v;
    o["per_phase_seconds"] = std::move(phases);
    o["per_worker_items"] = r.per_worker_items;
    return o.dump(2) + "\n";
}

std::filesystem::path report_path_for(const std::filesystem::path& output) {
    return std::filesystem::path(output.string() + ".report.json");
}

void write_report(const RunReport& report, const std::filesystem::path& output) {
    write_file(report_path_for(output), to_json(report));
}

}  // namespace parascrape
