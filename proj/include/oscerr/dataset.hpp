#pragma once

// Delimited-text ingestion: schema-driven parsing, nominal-column encoding,
// category codec construction and min-max normalization.

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oscerr {

// Column indices always refer to the raw file's columns, before any drop.
struct DatasetSchema {
    char delimiter = ',';
    bool has_header = false;
    int label_column = 0;
    std::set<int> ignore_columns;
    std::set<int> nominal_columns;

    // Parses a JSON schema document. Required key: "label_column".
    // Optional: "delimiter" (single character), "has_header",
    // "ignore_columns", "nominal_columns".
    static DatasetSchema from_json(const std::string& text);
    static DatasetSchema from_file(const std::string& path);
    std::string to_json() const;

    void validate() const;
};

// Bijection between original label strings, category indices and the
// discrete output values on [0, 1]. Output values are k/(C-1) in label
// order, so the spacing between adjacent values is gap == 1/(C-1).
struct CategoryCodec {
    std::vector<std::string> labels;       // sorted distinct label strings
    std::vector<double> output_values;     // k/(C-1)
    double gap = 0.0;                      // 1/(C-1)

    // Builds the codec from distinct labels. Sorting is numeric-aware when
    // every label parses as a number, lexicographic otherwise. Rejects
    // fewer than two categories.
    static CategoryCodec from_labels(std::vector<std::string> distinct_labels);

    // Constructs without validation; used by test fixtures and the demo
    // trace, where a single category with an arbitrary target is needed.
    static CategoryCodec unchecked(std::vector<std::string> labels,
                                   std::vector<double> output_values,
                                   double gap);

    std::optional<int> index_of(const std::string& label) const;
    int category_count() const { return static_cast<int>(labels.size()); }
};

// Fitted nominal-column dictionaries: for each raw column index the sorted
// distinct values seen at fit time, encoded evenly spaced over [0, 1].
struct NominalEncoding {
    std::map<int, std::vector<std::string>> values_by_column;

    bool empty() const { return values_by_column.empty(); }
    // Encoded value of v in raw column; throws unknown_label if v was not
    // seen when the encoding was fitted.
    double encode(int raw_column, const std::string& value) const;
};

struct NumericDataset {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // category index per row
    int n = 0;                // number of feature variables

    size_t row_count() const { return rows.size(); }
};

// Per-column (min, max) pairs fitted on training data.
struct Normalizer {
    std::vector<std::pair<double, double>> min_max;

    int columns() const { return static_cast<int>(min_max.size()); }
};

// Per-column min/max over all rows. Throws on an empty dataset.
Normalizer fit_normalizer(const NumericDataset& data);

// Maps each value v to (v - min)/(max - min). Constant columns map to 0.
// Values outside the fitted range are not clamped.
NumericDataset normalize(const NumericDataset& data, const Normalizer& norm);

struct IngestResult {
    NumericDataset data;
    CategoryCodec codec;
    NominalEncoding nominal;
};

// Parses delimited text into numeric form: drops ignored columns, encodes
// nominal columns, and builds the codec from the sorted distinct labels.
// Rows with missing values (empty fields or "?") are rejected.
IngestResult load_dataset(std::istream& source, const DatasetSchema& schema);
IngestResult load_dataset_file(const std::string& path, const DatasetSchema& schema);

// Variant for test/evaluation files: labels must resolve through the given
// codec and nominal columns are encoded with the previously fitted
// dictionaries. Unseen labels or nominal values are errors.
IngestResult load_dataset(std::istream& source, const DatasetSchema& schema,
                          const CategoryCodec& codec, const NominalEncoding& nominal);
IngestResult load_dataset_file(const std::string& path, const DatasetSchema& schema,
                               const CategoryCodec& codec, const NominalEncoding& nominal);

}  // namespace oscerr
