#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/regex.hpp>

#include "parascrape/config.hpp"
#include "parascrape/mapreduce.hpp"
#include "parascrape/record.hpp"

namespace parascrape::jobs {

enum class Unit { percent, milligrams, grams, none };

std::string_view to_string(Unit u);

class PatternError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A case-insensitive Perl-syntax pattern with exactly one capture group
// holding a number.
class PatternRule {
public:
    // Throws PatternError when the pattern does not compile or does not have
    // exactly one capture group.
    PatternRule(std::string field, std::string pattern, Unit unit);

    const std::string& field() const { return field_; }
    const std::string& pattern() const { return pattern_; }
    Unit unit() const { return unit_; }
    const boost::regex& regex() const { return regex_; }

    // Number captured by the first match, if any.
    std::optional<double> first_match(std::string_view text) const;

private:
    std::string field_;
    std::string pattern_;
    Unit unit_;
    boost::regex regex_;
};

// Rules for the same field are tried in list order; the first that matches wins.
std::vector<PatternRule> default_pattern_rules();
std::vector<PatternRule> parse_pattern_rules(std::string_view json_text);
std::vector<PatternRule> load_pattern_rules(const std::filesystem::path& path);

// Lowercased ASCII letters and digits form words; every other ASCII byte
// separates. Bytes >= 0x80 stay inside words.
std::vector<KeyValuePair> wordcount_mapper(std::string_view line);
KeyValuePair wordcount_reducer(const std::string& key, const std::vector<Value>& values);

// Emits ("<product_url>|<field>", number) per field whose rule matches the
// description.
std::vector<KeyValuePair> regex_extract_mapper(const ProductRecord& record, const std::vector<PatternRule>& rules);
KeyValuePair first_value_reducer(const std::string& key, const std::vector<Value>& values);

mr::JobSpec<std::string> wordcount_job(PipelineConfig config, bool use_combiner = false);
mr::JobSpec<ProductRecord> extract_job(PipelineConfig config, std::vector<PatternRule> rules);

// One item per input line; a trailing newline does not add an empty line.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace parascrape::jobs
