#include "oscerr/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "oscerr/error.hpp"

namespace oscerr {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& field) { return field.empty() || field == "?"; }

std::optional<double> parse_number(const std::string& field) {
    if (field.empty()) return std::nullopt;
    const char* begin = field.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + field.size()) return std::nullopt;
    return v;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == delimiter) {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

// Numeric-aware label ordering: numeric when every label parses as a
// number (value first, spelling as tiebreak), lexicographic otherwise.
void sort_labels(std::vector<std::string>& labels) {
    bool all_numeric = std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
        return parse_number(s).has_value();
    });
    if (all_numeric) {
        std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
            double va = *parse_number(a), vb = *parse_number(b);
            if (va != vb) return va < vb;
            return a < b;
        });
    } else {
        std::sort(labels.begin(), labels.end());
    }
}

struct RawTable {
    std::vector<std::vector<std::string>> rows;  // post header/blank skip
    std::vector<int> line_numbers;               // 1-based file lines
};

RawTable read_rows(std::istream& source, const DatasetSchema& schema) {
    RawTable table;
    std::string line;
    int line_no = 0;
    bool header_pending = schema.has_header;
    size_t expected_fields = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto fields = split_line(line, schema.delimiter);
        if (table.rows.empty()) {
            expected_fields = fields.size();
        } else if (fields.size() != expected_fields) {
            raise(Status::parse_error,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(expected_fields) + " fields, got " +
                      std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (table.rows.empty()) raise(Status::empty_input, "dataset contains no data rows");
    size_t columns = table.rows.front().size();
    if (schema.label_column < 0 || static_cast<size_t>(schema.label_column) >= columns)
        raise(Status::invalid_argument,
              "label_column " + std::to_string(schema.label_column) +
                  " out of range for " + std::to_string(columns) + " columns");
    for (int c : schema.ignore_columns)
        if (c < 0 || static_cast<size_t>(c) >= columns)
            raise(Status::invalid_argument,
                  "ignore_columns entry " + std::to_string(c) + " out of range");
    for (int c : schema.nominal_columns)
        if (c < 0 || static_cast<size_t>(c) >= columns)
            raise(Status::invalid_argument,
                  "nominal_columns entry " + std::to_string(c) + " out of range");
    return table;
}

NominalEncoding fit_nominal(const RawTable& table, const DatasetSchema& schema) {
    NominalEncoding enc;
    for (int c : schema.nominal_columns) {
        if (c == schema.label_column || schema.ignore_columns.count(c)) continue;
        std::set<std::string> distinct;
        for (const auto& row : table.rows) distinct.insert(row[static_cast<size_t>(c)]);
        enc.values_by_column[c] =
            std::vector<std::string>(distinct.begin(), distinct.end());
    }
    return enc;
}

IngestResult build_dataset(const RawTable& table, const DatasetSchema& schema,
                           const CategoryCodec& codec, const NominalEncoding& nominal) {
    NumericDataset data;
    data.rows.reserve(table.rows.size());
    data.labels.reserve(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& raw = table.rows[r];
        int line_no = table.line_numbers[r];
        std::vector<double> row;
        row.reserve(raw.size());
        for (size_t c = 0; c < raw.size(); ++c) {
            int col = static_cast<int>(c);
            if (col == schema.label_column || schema.ignore_columns.count(col)) continue;
            const std::string& field = raw[c];
            if (is_missing(field))
                raise(Status::parse_error, "line " + std::to_string(line_no) +
                                               ": missing value in column " +
                                               std::to_string(col));
            if (nominal.values_by_column.count(col)) {
                row.push_back(nominal.encode(col, field));
            } else if (auto v = parse_number(field)) {
                row.push_back(*v);
            } else {
                raise(Status::parse_error, "line " + std::to_string(line_no) +
                                               ": non-numeric value '" + field +
                                               "' in column " + std::to_string(col));
            }
        }
        const std::string& label = raw[static_cast<size_t>(schema.label_column)];
        if (is_missing(label))
            raise(Status::parse_error,
                  "line " + std::to_string(line_no) + ": missing label");
        auto idx = codec.index_of(label);
        if (!idx)
            raise(Status::unknown_label, "line " + std::to_string(line_no) +
                                             ": label '" + label +
                                             "' not present in the category codec");
        data.rows.push_back(std::move(row));
        data.labels.push_back(*idx);
    }
    data.n = static_cast<int>(data.rows.front().size());
    if (data.n == 0) raise(Status::empty_input, "no feature columns remain after drops");
    IngestResult result;
    result.data = std::move(data);
    result.codec = codec;
    result.nominal = nominal;
    return result;
}

}  // namespace

DatasetSchema DatasetSchema::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        raise(Status::parse_error, std::string("schema JSON: ") + e.what());
    }
    DatasetSchema schema;
    try {
        if (!j.contains("label_column"))
            raise(Status::parse_error, "schema JSON: missing \"label_column\"");
        schema.label_column = j.at("label_column").get<int>();
        if (j.contains("delimiter")) {
            auto d = j.at("delimiter").get<std::string>();
            if (d.size() != 1)
                raise(Status::parse_error, "schema JSON: delimiter must be one character");
            schema.delimiter = d[0];
        }
        if (j.contains("has_header")) schema.has_header = j.at("has_header").get<bool>();
        if (j.contains("ignore_columns"))
            for (int c : j.at("ignore_columns")) schema.ignore_columns.insert(c);
        if (j.contains("nominal_columns"))
            for (int c : j.at("nominal_columns")) schema.nominal_columns.insert(c);
    } catch (const nlohmann::json::exception& e) {
        raise(Status::parse_error, std::string("schema JSON: ") + e.what());
    }
    schema.validate();
    return schema;
}

DatasetSchema DatasetSchema::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Status::io_error, "cannot open schema file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string DatasetSchema::to_json() const {
    nlohmann::json j;
    j["delimiter"] = std::string(1, delimiter);
    j["has_header"] = has_header;
    j["label_column"] = label_column;
    j["ignore_columns"] = ignore_columns;
    j["nominal_columns"] = nominal_columns;
    return j.dump(2);
}

void DatasetSchema::validate() const {
    if (label_column < 0)
        raise(Status::invalid_argument, "label_column must be non-negative");
    if (ignore_columns.count(label_column))
        raise(Status::invalid_argument, "label_column may not be ignored");
}

CategoryCodec CategoryCodec::from_labels(std::vector<std::string> distinct_labels) {
    std::set<std::string> seen(distinct_labels.begin(), distinct_labels.end());
    if (seen.size() != distinct_labels.size())
        raise(Status::invalid_argument, "category labels must be distinct");
    if (distinct_labels.size() < 2)
        raise(Status::invalid_argument,
              "classification needs at least two categories, got " +
                  std::to_string(distinct_labels.size()));
    sort_labels(distinct_labels);
    CategoryCodec codec;
    codec.labels = std::move(distinct_labels);
    size_t c = codec.labels.size();
    codec.output_values.resize(c);
    for (size_t k = 0; k < c; ++k)
        codec.output_values[k] = static_cast<double>(k) / static_cast<double>(c - 1);
    codec.gap = 1.0 / static_cast<double>(c - 1);
    return codec;
}

CategoryCodec CategoryCodec::unchecked(std::vector<std::string> labels,
                                       std::vector<double> output_values, double gap) {
    CategoryCodec codec;
    codec.labels = std::move(labels);
    codec.output_values = std::move(output_values);
    codec.gap = gap;
    return codec;
}

std::optional<int> CategoryCodec::index_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return std::nullopt;
}

double NominalEncoding::encode(int raw_column, const std::string& value) const {
    auto it = values_by_column.find(raw_column);
    if (it == values_by_column.end())
        raise(Status::invalid_argument,
              "column " + std::to_string(raw_column) + " has no nominal encoding");
    const auto& values = it->second;
    auto pos = std::lower_bound(values.begin(), values.end(), value);
    if (pos == values.end() || *pos != value)
        raise(Status::unknown_label, "nominal value '" + value +
                                         "' in column " + std::to_string(raw_column) +
                                         " was not seen when the encoding was fitted");
    size_t k = static_cast<size_t>(pos - values.begin());
    if (values.size() == 1) return 0.0;
    return static_cast<double>(k) / static_cast<double>(values.size() - 1);
}

Normalizer fit_normalizer(const NumericDataset& data) {
    if (data.rows.empty()) raise(Status::empty_input, "fit_normalizer: empty dataset");
    Normalizer norm;
    norm.min_max.resize(static_cast<size_t>(data.n));
    for (int j = 0; j < data.n; ++j) {
        double lo = data.rows[0][static_cast<size_t>(j)];
        double hi = lo;
        for (const auto& row : data.rows) {
            lo = std::min(lo, row[static_cast<size_t>(j)]);
            hi = std::max(hi, row[static_cast<size_t>(j)]);
        }
        norm.min_max[static_cast<size_t>(j)] = {lo, hi};
    }
    return norm;
}

NumericDataset normalize(const NumericDataset& data, const Normalizer& norm) {
    if (data.n != norm.columns())
        raise(Status::dimension_mismatch,
              "normalize: dataset has " + std::to_string(data.n) +
                  " variables, normalizer has " + std::to_string(norm.columns()));
    NumericDataset out;
    out.labels = data.labels;
    out.n = data.n;
    out.rows.reserve(data.rows.size());
    for (const auto& row : data.rows) {
        std::vector<double> mapped(row.size());
        for (size_t j = 0; j < row.size(); ++j) {
            auto [lo, hi] = norm.min_max[j];
            mapped[j] = lo == hi ? 0.0 : (row[j] - lo) / (hi - lo);
        }
        out.rows.push_back(std::move(mapped));
    }
    return out;
}

IngestResult load_dataset(std::istream& source, const DatasetSchema& schema) {
    schema.validate();
    RawTable table = read_rows(source, schema);
    NominalEncoding nominal = fit_nominal(table, schema);
    std::set<std::string> distinct;
    for (const auto& row : table.rows)
        distinct.insert(row[static_cast<size_t>(schema.label_column)]);
    CategoryCodec codec = CategoryCodec::from_labels(
        std::vector<std::string>(distinct.begin(), distinct.end()));
    return build_dataset(table, schema, codec, nominal);
}

IngestResult load_dataset(std::istream& source, const DatasetSchema& schema,
                          const CategoryCodec& codec, const NominalEncoding& nominal) {
    schema.validate();
    RawTable table = read_rows(source, schema);
    return build_dataset(table, schema, codec, nominal);
}

IngestResult load_dataset_file(const std::string& path, const DatasetSchema& schema) {
    std::ifstream in(path);
    if (!in) raise(Status::io_error, "cannot open dataset file: " + path);
    return load_dataset(in, schema);
}

IngestResult load_dataset_file(const std::string& path, const DatasetSchema& schema,
                               const CategoryCodec& codec, const NominalEncoding& nominal) {
    std::ifstream in(path);
    if (!in) raise(Status::io_error, "cannot open dataset file: " + path);
    return load_dataset(in, schema, codec, nominal);
}

const char* status_name(Status s) noexcept {
    switch (s) {
        case Status::ok: return "ok";
        case Status::io_error: return "io-error";
        case Status::parse_error: return "parse-error";
        case Status::invalid_argument: return "invalid-argument";
        case Status::dimension_mismatch: return "dimension-mismatch";
        case Status::empty_input: return "empty-input";
        case Status::unknown_label: return "unknown-label";
        case Status::format_error: return "format-error";
        case Status::trace_mismatch: return "trace-mismatch";
        case Status::internal_error: return "internal-error";
    }
    return "unknown";
}

}  // namespace oscerr
