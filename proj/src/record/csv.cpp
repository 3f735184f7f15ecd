#include "parascrape/csv.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace parascrape {

namespace csv {

std::string encode_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string encode_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += encode_field(cells[i]);
    }
    out.push_back('\n');
    return out;
}

std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        Row row;
        row.line = line;
        std::string cell;
        bool row_done = false;
        while (!row_done) {
            cell.clear();
            if (i < n && text[i] == '"') {
                ++i;
                bool closed = false;
                while (i < n) {
                    char c = text[i];
                    if (c == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            cell.push_back('"');
                            i += 2;
                            continue;
                        }
                        ++i;
                        closed = true;
                        break;
                    }
                    if (c == '\n') ++line;
                    cell.push_back(c);
                    ++i;
                }
                if (!closed) throw RowError(row.line, "unterminated quoted field");
                if (i < n && text[i] != ',' && text[i] != '\n' && !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
                    throw RowError(line, "unexpected character after closing quote");
                }
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n') {
                    if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') break;
                    if (text[i] == '"') throw RowError(line, "quote inside unquoted field");
                    cell.push_back(text[i]);
                    ++i;
                }
            }
            row.cells.push_back(cell);
            if (i >= n) {
                row_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r') ++i;
                ++i;  // '\n'
                ++line;
                row_done = true;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace csv

namespace {

std::string header_row(const std::vector<std::string_view>& names) {
    std::vector<std::string> cells(names.begin(), names.end());
    return csv::encode_row(cells);
}

const std::vector<std::string_view>& product_header() {
    static const std::vector<std::string_view> h(kProductFieldNames.begin(), kProductFieldNames.end());
    return h;
}

const std::vector<std::string_view>& pair_header() {
    static const std::vector<std::string_view> h{"key", "value"};
    return h;
}

// Maps header columns to schema positions; every schema column must appear
// exactly once.
std::vector<std::size_t> bind_header(const csv::Row& header, const std::vector<std::string_view>& schema) {
    std::vector<std::size_t> column_of(schema.size(), SIZE_MAX);
    for (std::size_t c = 0; c < header.cells.size(); ++c) {
        const auto& name = header.cells[c];
        std::size_t idx = SIZE_MAX;
        for (std::size_t s = 0; s < schema.size(); ++s) {
            if (schema[s] == name) idx = s;
        }
        if (idx == SIZE_MAX) throw SchemaError(name, "unknown column '" + name + "'");
        if (column_of[idx] != SIZE_MAX) throw SchemaError(name, "duplicate column '" + name + "'");
        column_of[idx] = c;
    }
    for (std::size_t s = 0; s < schema.size(); ++s) {
        if (column_of[s] == SIZE_MAX) {
            throw SchemaError(std::string(schema[s]), "missing column '" + std::string(schema[s]) + "'");
        }
    }
    return column_of;
}

struct Table {
    std::vector<std::size_t> column_of;
    std::vector<csv::Row> rows;  // data rows only
};

Table parse_table(std::string_view text, const std::vector<std::string_view>& schema) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw SchemaError(std::string(schema.front()), "missing header row");
    Table t;
    t.column_of = bind_header(rows.front(), schema);
    const auto width = rows.front().cells.size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].cells.size() != width) {
            throw RowError(rows[r].line, "expected " + std::to_string(width) + " fields, found " +
                                             std::to_string(rows[r].cells.size()));
        }
        t.rows.push_back(std::move(rows[r]));
    }
    return t;
}

nlohmann::ordered_json value_json(const Value& v) {
    if (auto i = std::get_if<std::int64_t>(&v)) return *i;
    if (auto d = std::get_if<double>(&v)) return *d;
    return std::get<std::string>(v);
}

template <class T>
nlohmann::ordered_json opt_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

std::string to_csv(const std::vector<ProductRecord>& records) {
    std::string out = header_row(product_header());
    for (const auto& r : records) out += csv::encode_row(to_cells(r));
    return out;
}

std::string to_csv(const std::vector<KeyValuePair>& pairs) {
    std::string out = header_row(pair_header());
    for (const auto& p : pairs) out += csv::encode_row({p.key, to_string(p.value)});
    return out;
}

std::string to_json(const std::vector<ProductRecord>& records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json o;
        o["product_name"] = r.product_name;
        o["category"] = r.category;
        o["brand"] = opt_json(r.brand);
        o["strain"] = opt_json(r.strain);
        o["strain_type"] = std::string(to_string(r.strain_type));
        o["thc_pct"] = opt_json(r.thc_pct);
        o["cbd_pct"] = opt_json(r.cbd_pct);
        o["thc_mg"] = opt_json(r.thc_mg);
        o["price_original_cents"] = opt_json(r.price_original_cents);
        o["price_discount_cents"] = opt_json(r.price_discount_cents);
        o["unit_weight"] = opt_json(r.unit_weight);
        o["description"] = opt_json(r.description);
        o["image_url"] = opt_json(r.image_url);
        o["product_url"] = r.product_url;
        o["dispensary_name"] = r.dispensary_name;
        o["dispensary_url"] = r.dispensary_url;
        o["rating"] = opt_json(r.rating);
        o["review_count"] = opt_json(r.review_count);
        o["fulfillment"] = to_string(r.fulfillment);
        o["scraped_at"] = format_timestamp(r.scraped_at);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string to_json(const std::vector<KeyValuePair>& pairs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
        nlohmann::ordered_json o;
        o["key"] = p.key;
        o["value"] = value_json(p.value);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::vector<ProductRecord> products_from_csv(std::string_view text) {
    auto table = parse_table(text, product_header());
    std::vector<ProductRecord> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ProductRecord r;
        for (std::size_t f = 0; f < kProductFieldCount; ++f) {
            try {
                set_field_from_cell(r, static_cast<Field>(f), row.cells[table.column_of[f]]);
            } catch (const std::invalid_argument& e) {
                throw RowError(row.line, e.what());
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<KeyValuePair> pairs_from_csv(std::string_view text) {
    auto table = parse_table(text, pair_header());
    std::vector<KeyValuePair> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto& key = row.cells[table.column_of[0]];
        if (key.empty()) throw RowError(row.line, "empty key");
        out.push_back({key, row.cells[table.column_of[1]]});
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return ss.str();
}

std::size_t write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, std::strerror(errno));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError(path, "write failed");
    return bytes.size();
}

std::size_t write_csv(const std::vector<ProductRecord>& records, const std::filesystem::path& path) {
    return write_file(path, to_csv(records));
}

std::size_t write_csv(const std::vector<KeyValuePair>& pairs, const std::filesystem::path& path) {
    return write_file(path, to_csv(pairs));
}

std::size_t write_output(const std::vector<ProductRecord>& records, const std::filesystem::path& path,
                         OutputFormat format) {
    return write_file(path, format == OutputFormat::json ? to_json(records) : to_csv(records));
}

std::size_t write_output(const std::vector<KeyValuePair>& pairs, const std::filesystem::path& path,
                         OutputFormat format) {
    return write_file(path, format == OutputFormat::json ? to_json(pairs) : to_csv(pairs));
}

std::vector<ProductRecord> read_products_csv(const std::filesystem::path& path) {
    return products_from_csv(read_file(path));
}

std::vector<KeyValuePair> read_pairs_csv(const std::filesystem::path& path) {
    return pairs_from_csv(read_file(path));
}

}  // namespace parascrape
