#pragma once

// Whole-dataset shape descriptors: column averaging over every row
// regardless of category, and consecutive-difference vectors. Kept as a
// comparison against per-category averaging, which they motivated.

#include <span>
#include <string>
#include <vector>

#include "oscerr/dataset.hpp"

namespace oscerr {

struct ShapeVector {
    std::vector<double> diffs;  // length == source row length - 1
};

// Entry j: mean of variable j over all rows, ignoring category.
std::vector<double> column_average(const NumericDataset& data);

// diffs[k] == row[k+1] - row[k]. Requires at least two entries.
ShapeVector difference_shape(std::span<const double> row);

// Mean of the desired output values over all rows.
double average_desired_output(const NumericDataset& data, const CategoryCodec& codec);

// Text report comparing the whole-dataset average row against per-category
// prototypes as predictors of the desired outputs. Numbers only, no verdict.
std::string waveshape_comparison(const NumericDataset& data, const CategoryCodec& codec);

}  // namespace oscerr
