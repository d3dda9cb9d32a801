#pragma once

// Benchmark metrics: signed average output error, correct-classification
// counts under an error margin, the best-margin sweep, a nearest-prototype
// sanity baseline, and report rendering.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oscerr/inference.hpp"

namespace oscerr {

struct EvaluationReport {
    std::string dataset;
    std::string mode;  // "oracle" | "hypothesis"
    double average_error = 0.0;  // signed; NaN when not applicable
    int best_margin_pct = 0;
    long correct = 0;
    long total = 0;
    double percent_correct = 0.0;
    double baseline_percent_correct = 0.0;  // NaN when not computed
    double runtime_seconds = 0.0;
};

// Mean over rows of (oracle final output - true output value); signed.
double average_error(const ClassifierModel& model, const NumericDataset& data);

// Rows classified correctly under the given mode and margin: the chosen
// category must equal the true one and the final output must lie within
// the margin band around the chosen category's output value.
std::pair<long, long> accuracy_at_margin(const ClassifierModel& model,
                                         const NumericDataset& data, int margin_pct,
                                         EvalMode mode);

struct SweepResult {
    int best_margin_pct = 0;
    long correct = 0;
    long total = 0;
};

// Sweeps integer margins 0..49 and returns the smallest margin achieving
// the maximal correct count.
SweepResult margin_sweep(const ClassifierModel& model, const NumericDataset& data,
                         EvalMode mode);

// Percent of test rows whose nearest category prototype (Euclidean) carries
// the true label; ties break to the lowest category index.
double nearest_prototype_baseline(const NumericDataset& train, const NumericDataset& test,
                                  const CategoryCodec& codec);

// Aligned text table in benchmark column order, with a trailing summary of
// hypothesis mode against the baseline when both are present.
std::string render_report(std::span<const EvaluationReport> reports);

// Machine-readable form: one CSV row per report, numeric fields printed so
// they parse back to the identical values.
std::string render_report_csv(std::span<const EvaluationReport> reports);
std::vector<EvaluationReport> parse_report_csv(const std::string& text);

}  // namespace oscerr
