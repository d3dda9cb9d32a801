#pragma once

// Layer-stack construction: category prototypes, iterative transposition of
// the cached per-category rows, and the cross-category averaging that turns
// per-category corrections into stored layers.

#include <string>
#include <utility>
#include <vector>

#include "oscerr/core.hpp"
#include "oscerr/dataset.hpp"

namespace oscerr {

struct TrainConfig {
    int max_layers = 10;
    bool plateau_enabled = true;
    // Relative total-error improvement below which training stops. The
    // default is near-exact stagnation, so iteration counts are normally
    // pinned via max_layers.
    double plateau_threshold = 1e-9;
    // Single-category training is degenerate for classification; only test
    // fixtures and the demo trace enable it.
    bool allow_single_category = false;
};

struct TrainMeta {
    int iterations = 0;  // stored layers
    double final_total_error = 0.0;
    std::vector<double> error_history;  // one entry per stored layer
    // Per-layer, per-category correction sets, kept for inspection.
    std::vector<std::vector<CorrectionLayer>> correction_sets;
    std::string stop_reason;  // "max-layers" | "zero-error" | "plateau"
};

struct ClassifierModel {
    std::vector<CorrectionLayer> layers;
    CategoryCodec codec;
    Normalizer normalizer;
    NominalEncoding nominal;
    int n = 0;
    TrainMeta meta;

    int layer_count() const { return static_cast<int>(layers.size()); }
};

// Mutable state threaded through the training iterations: the transposed
// prototype row per category plus the running history.
struct TrainingState {
    std::vector<std::vector<double>> current_rows;  // index = category
    std::vector<double> error_history;
    std::vector<std::vector<CorrectionLayer>> correction_sets;
};

// One averaged row per category: entry j is the mean of variable j over the
// category's rows. Errors if any category has no rows.
std::vector<std::pair<int, std::vector<double>>> build_prototypes(
    const NumericDataset& data, const CategoryCodec& codec);

// Sum of every entry over all per-category correction sets.
double total_error(const std::vector<CorrectionLayer>& per_category);

// One training step: transposes each category's cached row through
// prev_layer with that category's target output, measures the new
// per-category corrections, and returns their cross-category average.
// Appends to the state's history.
CorrectionLayer train_iteration(TrainingState& state,
                                const CorrectionLayer& prev_layer,
                                const CategoryCodec& codec);

// Builds the full layer stack from normalized data. The first stored layer
// is the averaged absolute error of the raw prototypes; later layers come
// from train_iteration. Stops at max_layers, on exact zero error, or on the
// plateau criterion. The returned model has no normalizer attached.
ClassifierModel train(const NumericDataset& data, const CategoryCodec& codec,
                      const TrainConfig& config);

// Convenience pipeline over raw ingested data: fits the normalizer,
// normalizes, trains, and attaches normalizer and nominal encodings.
ClassifierModel train_pipeline(const IngestResult& ingest, const TrainConfig& config);

}  // namespace oscerr
