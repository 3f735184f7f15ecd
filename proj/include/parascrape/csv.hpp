#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parascrape/record.hpp"

namespace parascrape {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& cause)
        : std::runtime_error(path.string() + ": " + cause), path_(path) {}
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string column, const std::string& what)
        : std::runtime_error(what), column_(std::move(column)) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

class RowError : public std::runtime_error {
public:
    RowError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class OutputFormat { csv, json };

namespace csv {

// RFC 4180 field encoding: quoted only when the field holds a comma, quote,
// CR or LF.
std::string encode_field(std::string_view field);
std::string encode_row(const std::vector<std::string>& cells);

struct Row {
    std::size_t line = 0;  // 1-based line where the row starts
    std::vector<std::string> cells;
};

// Splits a CSV document into rows. Accepts LF or CRLF. Throws RowError on an
// unterminated quote or a stray quote inside an unquoted field.
std::vector<Row> parse(std::string_view text);

}  // namespace csv

std::string to_csv(const std::vector<ProductRecord>& records);
std::string to_csv(const std::vector<KeyValuePair>& pairs);
std::string to_json(const std::vector<ProductRecord>& records);
std::string to_json(const std::vector<KeyValuePair>& pairs);

std::vector<ProductRecord> products_from_csv(std::string_view text);
std::vector<KeyValuePair> pairs_from_csv(std::string_view text);

// Writes the document and returns the number of bytes written. Throws IoError.
std::size_t write_csv(const std::vector<ProductRecord>& records, const std::filesystem::path& path);
std::size_t write_csv(const std::vector<KeyValuePair>& pairs, const std::filesystem::path& path);
std::size_t write_output(const std::vector<ProductRecord>& records, const std::filesystem::path& path,
                         OutputFormat format);
std::size_t write_output(const std::vector<KeyValuePair>& pairs, const std::filesystem::path& path,
                         OutputFormat format);

std::vector<ProductRecord> read_products_csv(const std::filesystem::path& path);
std::vector<KeyValuePair> read_pairs_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
std::size_t write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace parascrape
