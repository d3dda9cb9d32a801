#include "oscerr/core.hpp"

#include <algorithm>

#include "oscerr/error.hpp"

namespace oscerr {

std::vector<double> transpose_row(std::span<const double> row,
                                  std::span<const double> layer, double o) {
    if (row.size() != layer.size())
        raise(Status::dimension_mismatch,
              "transpose_row: row has " + std::to_string(row.size()) +
                  " variables, layer has " + std::to_string(layer.size()));
    std::vector<double> out(row.size());
    for (size_t j = 0; j < row.size(); ++j) out[j] = rule_step(row[j], layer[j], o);
    return out;
}

void transpose_row_inplace(std::span<double> row, std::span<const double> layer,
                           double o) {
    if (row.size() != layer.size())
        raise(Status::dimension_mismatch,
              "transpose_row: row has " + std::to_string(row.size()) +
                  " variables, layer has " + std::to_string(layer.size()));
    for (size_t j = 0; j < row.size(); ++j) row[j] = rule_step(row[j], layer[j], o);
}

CorrectionLayer absolute_error(std::span<const double> row, double o) {
    CorrectionLayer ec(row.size());
    for (size_t j = 0; j < row.size(); ++j) ec[j] = std::abs(o - row[j]);
    return ec;
}

double aggregate_output(std::span<const double> row) {
    if (row.empty()) raise(Status::empty_input, "aggregate_output: empty row");
    std::vector<double> sorted(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double v : sorted) sum += v;
    return sum / static_cast<double>(sorted.size());
}

}  // namespace oscerr
