#include "parascrape/jobs.hpp"

#include <cmath>
#include <map>
#include <memory>

#include <json.hpp>

#include "parascrape/csv.hpp"

namespace parascrape::jobs {

std::string_view to_string(Unit u) {
    switch (u) {
        case Unit::percent: return "percent";
        case Unit::milligrams: return "milligrams";
        case Unit::grams: return "grams";
        case Unit::none: return "none";
    }
    return "none";
}

namespace {

Unit unit_from_string(const std::string& s) {
    if (s == "percent") return Unit::percent;
    if (s == "milligrams") return Unit::milligrams;
    if (s == "grams") return Unit::grams;
    if (s == "none") return Unit::none;
    throw PatternError("unknown unit '" + s + "'");
}

}  // namespace

PatternRule::PatternRule(std::string field, std::string pattern, Unit unit)
    : field_(std::move(field)), pattern_(std::move(pattern)), unit_(unit) {
    if (field_.empty()) throw PatternError("pattern rule needs a field name");
    try {
        regex_ = boost::regex(pattern_, boost::regex::perl | boost::regex::icase);
    } catch (const boost::regex_error& e) {
        throw PatternError("pattern for " + field_ + " does not compile: " + e.what());
    }
    if (regex_.mark_count() != 1) {
        throw PatternError("pattern for " + field_ + " must have exactly one capture group, has " +
                           std::to_string(regex_.mark_count()));
    }
}

std::optional<double> PatternRule::first_match(std::string_view text) const {
    boost::match_results<std::string_view::const_iterator> m;
    if (!boost::regex_search(text.begin(), text.end(), m, regex_)) return std::nullopt;
    if (!m[1].matched) return std::nullopt;
    return parse_decimal(m[1].str());
}

std::vector<PatternRule> default_pattern_rules() {
    const std::string num = R"((\d+(?:\.\d+)?))";
    const std::string bare = R"(\d+(?:\.\d+)?)";
    // "24.5% THC 0.8% CBD": in a number-first chain the label-first rule would
    // read the next number, so the chain shape is tried first.
    auto chain = [&](const std::string& label, const std::string& next) {
        return num + R"(\s*%\s*)" + label + R"(\b\s*:?\s*)" + bare + R"(\s*%\s*)" + next + R"(\b)";
    };
    auto label_first = [&](const std::string& label) { return R"(\b)" + label + R"(\b\s*:?\s*)" + num + R"(\s*%)"; };
    auto number_first = [&](const std::string& label) { return num + R"(\s*%\s*)" + label + R"(\b)"; };
    return {
        PatternRule("thc_pct", chain("THC", "CBD"), Unit::percent),
        PatternRule("thc_pct", label_first("THC"), Unit::percent),
        PatternRule("thc_pct", number_first("THC"), Unit::percent),
        PatternRule("cbd_pct", chain("CBD", "THC"), Unit::percent),
        PatternRule("cbd_pct", label_first("CBD"), Unit::percent),
        PatternRule("cbd_pct", number_first("CBD"), Unit::percent),
        PatternRule("thc_mg", R"(\bTHC\s*:?\s*)" + num + R"(\s*mg\b)", Unit::milligrams),
        PatternRule("thc_mg", num + R"(\s*mg\s+(?:of\s+)?THC\b)", Unit::milligrams),
        PatternRule("unit_weight", num + R"(\s*g\b)", Unit::grams),
    };
}

std::vector<PatternRule> parse_pattern_rules(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PatternError(std::string("pattern file is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw PatternError("pattern file must be a JSON array");
    std::vector<PatternRule> rules;
    for (const auto& r : j) {
        if (!r.is_object() || !r.contains("field") || !r.contains("pattern")) {
            throw PatternError("each pattern rule needs field and pattern");
        }
        rules.emplace_back(r["field"].get<std::string>(), r["pattern"].get<std::string>(),
                           unit_from_string(r.value("unit", std::string("none"))));
    }
    return rules;
}

std::vector<PatternRule> load_pattern_rules(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw PatternError(e.what());
    }
    return parse_pattern_rules(text);
}

std::vector<KeyValuePair> wordcount_mapper(std::string_view line) {
    std::vector<KeyValuePair> out;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) out.push_back({std::move(word), std::int64_t{1}});
        word.clear();
    };
    for (char ch : line) {
        auto c = static_cast<unsigned char>(ch);
        if (c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')) {
            word.push_back(ch);
        } else if (c >= 'A' && c <= 'Z') {
            word.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

KeyValuePair wordcount_reducer(const std::string& key, const std::vector<Value>& values) {
    if (values.empty()) throw std::invalid_argument("no values for key " + key);
    std::int64_t isum = 0;
    double dsum = 0;
    bool integral = true;
    for (const auto& v : values) {
        if (auto i = std::get_if<std::int64_t>(&v)) {
            isum += *i;
            dsum += static_cast<double>(*i);
            continue;
        }
        if (auto s = std::get_if<std::string>(&v)) {
            if (auto i = parse_integer(*s)) {
                isum += *i;
                dsum += static_cast<double>(*i);
                continue;
            }
        }
        auto d = as_number(v);
        if (!d) throw std::invalid_argument("non-numeric value '" + parascrape::to_string(v) + "' for key " + key);
        integral = false;
        dsum += *d;
    }
    if (integral) return {key, isum};
    return {key, dsum};
}

std::vector<KeyValuePair> regex_extract_mapper(const ProductRecord& record, const std::vector<PatternRule>& rules) {
    std::vector<KeyValuePair> out;
    if (!record.description || record.description->empty()) return out;
    std::vector<const std::string*> done;
    for (const auto& rule : rules) {
        bool already = false;
        for (const auto* f : done) already = already || *f == rule.field();
        if (already) continue;
        if (auto v = rule.first_match(*record.description)) {
            out.push_back({record.product_url + "|" + rule.field(), *v});
            done.push_back(&rule.field());
        }
    }
    return out;
}

KeyValuePair first_value_reducer(const std::string& key, const std::vector<Value>& values) {
    if (values.empty()) throw std::invalid_argument("no values for key " + key);
    return {key, values.front()};
}

mr::JobSpec<std::string> wordcount_job(PipelineConfig config, bool use_combiner) {
    mr::JobSpec<std::string> job;
    job.mapper = [](const std::string& line) { return wordcount_mapper(line); };
    job.reducer = wordcount_reducer;
    if (use_combiner) job.combiner = mr::Reducer(wordcount_reducer);
    job.config = std::move(config);
    return job;
}

mr::JobSpec<ProductRecord> extract_job(PipelineConfig config, std::vector<PatternRule> rules) {
    mr::JobSpec<ProductRecord> job;
    auto shared = std::make_shared<const std::vector<PatternRule>>(std::move(rules));
    job.mapper = [shared](const ProductRecord& r) { return regex_extract_mapper(r, *shared); };
    job.reducer = first_value_reducer;
    job.config = std::move(config);
    return job;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t i = 0;
    while (i < text.size()) {
        auto nl = text.find('\n', i);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(i, nl - i);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        i = nl + 1;
    }
    return lines;
}

}  // namespace parascrape::jobs
