#pragma once

// Running rows through a trained layer stack, in the two documented modes:
// oracle scoring (the rule is driven by the true label's output value) and
// hypothesis classification (every candidate output is tried, the smallest
// residual wins).

#include <span>
#include <vector>

#include "oscerr/core.hpp"
#include "oscerr/trainer.hpp"

namespace oscerr {

enum class EvalMode { oracle, hypothesis };

const char* mode_name(EvalMode mode) noexcept;

struct Prediction {
    int category = -1;
    double final_output = 0.0;
    double residual = 0.0;  // |final_output - chosen category's output value|
    EvalMode mode = EvalMode::oracle;
    std::vector<double> hypothesis_residuals;  // hypothesis mode only
};

// Applies each stored layer in order with the given target output, then
// aggregates the final state. The row must already be normalized.
ForwardTrace forward(std::span<const double> row, const ClassifierModel& model, double o);

// Runs the row under every category's output value and picks the smallest
// residual; ties break to the lowest category index.
Prediction classify_hypothesis(std::span<const double> row, const ClassifierModel& model);

// Runs the row with the true category's output value driving the rule.
Prediction score_oracle(std::span<const double> row, const ClassifierModel& model,
                        int true_category);

// True iff |x - o_c| <= gap * margin_pct / 100.
bool within_margin(double x, double o_c, double gap, int margin_pct);

}  // namespace oscerr
