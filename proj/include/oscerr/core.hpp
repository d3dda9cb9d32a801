#pragma once

// Arithmetic kernel of the classifier: the per-variable add/subtract rule,
// absolute error vectors, row transposition through a correction layer and
// the final output aggregation.

#include <span>
#include <vector>

namespace oscerr {

// One stored transposition layer: an averaged error-correction value per
// variable. Entries are absolute values, so always >= 0.
using CorrectionLayer = std::vector<double>;

// Row states through a layer stack. states[0] is the input row, states[i]
// the row after layer i; final_output is the mean of the last state.
struct ForwardTrace {
    std::vector<std::vector<double>> states;
    double final_output = 0.0;
};

// Moves x by ec toward the target output o: adds when x <= o, subtracts
// when x > o. The comparison is exact; it is part of the model's semantics.
inline double rule_step(double x, double ec, double o) noexcept {
    return x <= o ? x + ec : x - ec;
}

// Element-wise rule_step over a row. Throws on length mismatch.
std::vector<double> transpose_row(std::span<const double> row,
                                  std::span<const double> layer, double o);

// In-place variant used by the trainer's cached row states.
void transpose_row_inplace(std::span<double> row,
                           std::span<const double> layer, double o);

// Per-variable |o - row[j]|.
CorrectionLayer absolute_error(std::span<const double> row, double o);

// Arithmetic mean of a row. Summation runs over a sorted copy so the result
// is invariant under permutation of the inputs. Throws on an empty row.
double aggregate_output(std::span<const double> row);

}  // namespace oscerr
