#include "oscerr/inference.hpp"

#include <cmath>

#include "oscerr/error.hpp"

namespace oscerr {

const char* mode_name(EvalMode mode) noexcept {
    return mode == EvalMode::oracle ? "oracle" : "hypothesis";
}

ForwardTrace forward(std::span<const double> row, const ClassifierModel& model, double o) {
    if (static_cast<int>(row.size()) != model.n)
        raise(Status::dimension_mismatch,
              "forward: row has " + std::to_string(row.size()) +
                  " variables, model expects " + std::to_string(model.n));
    ForwardTrace trace;
    trace.states.reserve(model.layers.size() + 1);
    trace.states.emplace_back(row.begin(), row.end());
    for (const auto& layer : model.layers)
        trace.states.push_back(transpose_row(trace.states.back(), layer, o));
    trace.final_output = aggregate_output(trace.states.back());
    return trace;
}

Prediction classify_hypothesis(std::span<const double> row, const ClassifierModel& model) {
    Prediction pred;
    pred.mode = EvalMode::hypothesis;
    pred.hypothesis_residuals.reserve(model.codec.output_values.size());
    for (size_t c = 0; c < model.codec.output_values.size(); ++c) {
        double o = model.codec.output_values[c];
        ForwardTrace trace = forward(row, model, o);
        double residual = std::abs(trace.final_output - o);
        pred.hypothesis_residuals.push_back(residual);
        if (pred.category < 0 || residual < pred.residual) {
            pred.category = static_cast<int>(c);
            pred.final_output = trace.final_output;
            pred.residual = residual;
        }
    }
    return pred;
}

Prediction score_oracle(std::span<const double> row, const ClassifierModel& model,
                        int true_category) {
    if (true_category < 0 || true_category >= model.codec.category_count())
        raise(Status::invalid_argument,
              "score_oracle: category index " + std::to_string(true_category) +
                  " out of range");
    double o = model.codec.output_values[static_cast<size_t>(true_category)];
    ForwardTrace trace = forward(row, model, o);
    Prediction pred;
    pred.mode = EvalMode::oracle;
    pred.category = true_category;
    pred.final_output = trace.final_output;
    pred.residual = std::abs(trace.final_output - o);
    return pred;
}

bool within_margin(double x, double o_c, double gap, int margin_pct) {
    if (gap <= 0.0) raise(Status::invalid_argument, "within_margin: gap must be positive");
    if (margin_pct < 0 || margin_pct > 49)
        raise(Status::invalid_argument, "within_margin: margin_pct must be in 0..49");
    return std::abs(x - o_c) <= gap * margin_pct / 100.0;
}

}  // namespace oscerr
