#include "oscerr/waveshape.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "oscerr/core.hpp"
#include "oscerr/error.hpp"
#include "oscerr/trainer.hpp"

namespace oscerr {

std::vector<double> column_average(const NumericDataset& data) {
    if (data.rows.empty()) raise(Status::empty_input, "column_average: empty dataset");
    std::vector<double> avg(static_cast<size_t>(data.n), 0.0);
    for (const auto& row : data.rows)
        for (size_t j = 0; j < avg.size(); ++j) avg[j] += row[j];
    for (double& v : avg) v /= static_cast<double>(data.rows.size());
    return avg;
}

ShapeVector difference_shape(std::span<const double> row) {
    if (row.size() < 2)
        raise(Status::invalid_argument,
              "difference_shape: need at least two variables, got " +
                  std::to_string(row.size()));
    ShapeVector shape;
    shape.diffs.resize(row.size() - 1);
    for (size_t k = 0; k + 1 < row.size(); ++k) shape.diffs[k] = row[k + 1] - row[k];
    return shape;
}

double average_desired_output(const NumericDataset& data, const CategoryCodec& codec) {
    if (data.rows.empty())
        raise(Status::empty_input, "average_desired_output: empty dataset");
    double sum = 0.0;
    for (int label : data.labels)
        sum += codec.output_values[static_cast<size_t>(label)];
    return sum / static_cast<double>(data.labels.size());
}

namespace {

std::string join(const std::vector<double>& values) {
    std::ostringstream out;
    char buf[64];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.4g", values[i]);
        if (i) out << ", ";
        out << buf;
    }
    return out.str();
}

}  // namespace

std::string waveshape_comparison(const NumericDataset& data, const CategoryCodec& codec) {
    std::vector<double> global = column_average(data);
    double global_aggregate = aggregate_output(global);
    auto prototypes = build_prototypes(data, codec);

    // Residuals against each row's desired output: the global average row
    // predicts one value for everything; per-category prototypes predict
    // their own category's aggregate.
    std::vector<double> proto_aggregates(prototypes.size());
    for (const auto& [c, proto] : prototypes)
        proto_aggregates[static_cast<size_t>(c)] = aggregate_output(proto);
    double global_residual = 0.0, category_residual = 0.0;
    for (int label : data.labels) {
        double o = codec.output_values[static_cast<size_t>(label)];
        global_residual += std::abs(global_aggregate - o);
        category_residual += std::abs(proto_aggregates[static_cast<size_t>(label)] - o);
    }
    global_residual /= static_cast<double>(data.labels.size());
    category_residual /= static_cast<double>(data.labels.size());

    std::ostringstream out;
    char buf[128];
    out << "wave-shape comparison: whole-dataset averaging vs per-category averaging\n";
    out << "rows: " << data.rows.size() << "  variables: " << data.n
        << "  categories: " << codec.category_count() << "\n\n";
    std::snprintf(buf, sizeof buf, "%.6g", global_aggregate);
    out << "global average row aggregate: " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.6g", average_desired_output(data, codec));
    out << "average desired output:       " << buf << '\n';
    if (data.n >= 2)
        out << "global average row shape:     " << join(difference_shape(global).diffs)
            << '\n';
    out << '\n';
    for (const auto& [c, proto] : prototypes) {
        double o = codec.output_values[static_cast<size_t>(c)];
        std::snprintf(buf, sizeof buf, "aggregate %.6g  target %g  |residual| %.6g",
                      proto_aggregates[static_cast<size_t>(c)], o,
                      std::abs(proto_aggregates[static_cast<size_t>(c)] - o));
        out << "category '" << codec.labels[static_cast<size_t>(c)] << "': " << buf << '\n';
        if (data.n >= 2)
            out << "  shape: " << join(difference_shape(proto).diffs) << '\n';
    }
    out << '\n';
    std::snprintf(buf, sizeof buf, "%.6g", global_residual);
    out << "mean |aggregate - desired| with the global average row:   " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.6g", category_residual);
    out << "mean |aggregate - desired| with per-category prototypes:  " << buf << '\n';
    return out.str();
}

}  // namespace oscerr
