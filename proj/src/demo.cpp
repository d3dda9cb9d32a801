#include "oscerr/demo.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "oscerr/inference.hpp"
#include "oscerr/trainer.hpp"

namespace oscerr {

namespace {

std::string join(const std::vector<double>& values) {
    std::ostringstream out;
    char buf[32];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g", values[i]);
        if (i) out << ", ";
        out << buf;
    }
    return out.str();
}

}  // namespace

TraceResult run_demo_trace() {
    const std::vector<double> input = {3, 8, 5, 10, 2};
    const double target = 4;

    NumericDataset data;
    data.rows = {input};
    data.labels = {0};
    data.n = 5;
    CategoryCodec codec = CategoryCodec::unchecked({"group"}, {target}, 0.0);

    TrainConfig config;
    config.max_layers = 10;
    config.plateau_enabled = true;
    config.allow_single_category = true;
    ClassifierModel model = train(data, codec, config);

    ForwardTrace trace = forward(input, model, target);

    std::ostringstream out;
    out << "demo trace: one category, five variables\n";
    out << "Averaged input row: " << join(input) << '\n';
    out << "Output category value: " << target << "\n\n";
    for (size_t i = 0; i < model.layers.size(); ++i) {
        const auto& corrections = model.meta.correction_sets[i].front();
        out << "Absolute error = " << join(corrections) << '\n';
        out << "stored layer " << i + 1 << " = " << join(model.layers[i]) << '\n';
        out << "transposed row after layer " << i + 1 << ": " << join(trace.states[i + 1])
            << "\n\n";
    }
    out << "total error history: " << join(model.meta.error_history) << '\n';
    out << "final output value: " << trace.final_output << '\n';

    const std::vector<CorrectionLayer> expected_layers = {{1, 4, 1, 6, 2},
                                                          {0, 0, 0, 0, 0}};
    const std::vector<double> expected_history = {14, 0};
    const std::vector<double> expected_row = {4, 4, 4, 4, 4};
    bool ok = model.layers == expected_layers &&
              model.meta.error_history == expected_history &&
              trace.states.back() == expected_row && trace.final_output == target &&
              model.meta.stop_reason == "zero-error";
    out << (ok ? "trace matches the expected values exactly\n"
               : "trace DOES NOT match the expected values\n");

    TraceResult result;
    result.text = out.str();
    result.matches_expected = ok;
    return result;
}

}  // namespace oscerr
