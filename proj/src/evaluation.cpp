#include "oscerr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "oscerr/error.hpp"
#include "oscerr/trainer.hpp"

namespace oscerr {

namespace {

// Per-row outcome shared by accuracy_at_margin and margin_sweep: whether the
// chosen category was the true one, plus the values the margin rule needs.
struct RowOutcome {
    bool category_correct = false;
    double final_output = 0.0;
    double chosen_output_value = 0.0;
};

std::vector<RowOutcome> evaluate_rows(const ClassifierModel& model,
                                      const NumericDataset& data, EvalMode mode) {
    std::vector<RowOutcome> outcomes;
    outcomes.reserve(data.rows.size());
    for (size_t r = 0; r < data.rows.size(); ++r) {
        RowOutcome out;
        if (mode == EvalMode::oracle) {
            Prediction pred = score_oracle(data.rows[r], model, data.labels[r]);
            out.category_correct = true;
            out.final_output = pred.final_output;
            out.chosen_output_value =
                model.codec.output_values[static_cast<size_t>(data.labels[r])];
        } else {
            Prediction pred = classify_hypothesis(data.rows[r], model);
            out.category_correct = pred.category == data.labels[r];
            out.final_output = pred.final_output;
            out.chosen_output_value =
                model.codec.output_values[static_cast<size_t>(pred.category)];
        }
        outcomes.push_back(out);
    }
    return outcomes;
}

long count_correct(const std::vector<RowOutcome>& outcomes, double gap, int margin_pct) {
    long correct = 0;
    for (const auto& out : outcomes)
        if (out.category_correct &&
            within_margin(out.final_output, out.chosen_output_value, gap, margin_pct))
            ++correct;
    return correct;
}

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string exact_field(double v) {
    if (std::isnan(v)) return "nan";
    return format_double("%.17g", v);
}

}  // namespace

double average_error(const ClassifierModel& model, const NumericDataset& data) {
    if (data.rows.empty()) raise(Status::empty_input, "average_error: empty dataset");
    double sum = 0.0;
    for (size_t r = 0; r < data.rows.size(); ++r) {
        double o = model.codec.output_values[static_cast<size_t>(data.labels[r])];
        Prediction pred = score_oracle(data.rows[r], model, data.labels[r]);
        sum += pred.final_output - o;
    }
    return sum / static_cast<double>(data.rows.size());
}

std::pair<long, long> accuracy_at_margin(const ClassifierModel& model,
                                         const NumericDataset& data, int margin_pct,
                                         EvalMode mode) {
    auto outcomes = evaluate_rows(model, data, mode);
    long correct = count_correct(outcomes, model.codec.gap, margin_pct);
    return {correct, static_cast<long>(outcomes.size())};
}

SweepResult margin_sweep(const ClassifierModel& model, const NumericDataset& data,
                         EvalMode mode) {
    auto outcomes = evaluate_rows(model, data, mode);
    SweepResult result;
    result.total = static_cast<long>(outcomes.size());
    for (int m = 0; m <= 49; ++m) {
        long correct = count_correct(outcomes, model.codec.gap, m);
        if (m == 0 || correct > result.correct) {
            result.correct = correct;
            result.best_margin_pct = m;
        }
    }
    return result;
}

double nearest_prototype_baseline(const NumericDataset& train, const NumericDataset& test,
                                  const CategoryCodec& codec) {
    if (train.n != test.n)
        raise(Status::dimension_mismatch,
              "baseline: train has " + std::to_string(train.n) + " variables, test has " +
                  std::to_string(test.n));
    if (test.rows.empty()) raise(Status::empty_input, "baseline: empty test data");
    auto prototypes = build_prototypes(train, codec);
    long correct = 0;
    for (size_t r = 0; r < test.rows.size(); ++r) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const auto& [c, proto] : prototypes) {
            double dist = 0.0;
            for (size_t j = 0; j < proto.size(); ++j) {
                double d = test.rows[r][j] - proto[j];
                dist += d * d;
            }
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        if (best == test.labels[r]) ++correct;
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(test.rows.size());
}

std::string render_report(std::span<const EvaluationReport> reports) {
    const std::vector<std::string> headers = {
        "Dataset", "Mode", "Average Error", "Best % Error Margin",
        "Correctly Classified", "% Correct", "Baseline %", "Time (s)"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : reports) {
        std::vector<std::string> row;
        row.push_back(r.dataset);
        row.push_back(r.mode);
        row.push_back(std::isnan(r.average_error) ? "-"
                                                  : format_double("%.4f", r.average_error));
        row.push_back(std::to_string(r.best_margin_pct) + "%");
        row.push_back(std::to_string(r.correct) + " from " + std::to_string(r.total));
        row.push_back(format_double("%.1f%%", r.percent_correct));
        row.push_back(std::isnan(r.baseline_percent_correct)
                          ? "-"
                          : format_double("%.1f%%", r.baseline_percent_correct));
        row.push_back(format_double("%.3f", r.runtime_seconds));
        cells.push_back(std::move(row));
    }
    std::vector<size_t> widths;
    for (const auto& h : headers) widths.push_back(h.size());
    for (const auto& row : cells)
        for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << row[i];
            if (i + 1 < row.size())
                out << std::string(widths[i] - row[i].size() + 2, ' ');
        }
        out << '\n';
    };
    emit_row(headers);
    for (const auto& row : cells) emit_row(row);

    // Summary of the honest-inference record: how often hypothesis mode beat
    // the nearest-prototype baseline.
    long beat = 0, compared = 0;
    for (const auto& r : reports) {
        if (r.mode == "hypothesis" && !std::isnan(r.baseline_percent_correct)) {
            ++compared;
            if (r.percent_correct > r.baseline_percent_correct) ++beat;
        }
    }
    if (compared > 0) {
        out << "note: hypothesis mode beat the nearest-prototype baseline on " << beat
            << " of " << compared << " datasets";
        if (2 * beat < compared)
            out << " (below half; see the per-dataset rows above)";
        out << '\n';
    }
    return out.str();
}

// The machine-readable form carries the evaluation results only; wall-clock
// timing stays in the rendered table so that re-evaluating the same model
// reproduces this output byte for byte.
std::string render_report_csv(std::span<const EvaluationReport> reports) {
    std::ostringstream out;
    out << "dataset,mode,average_error,best_margin_pct,correct,total,percent_correct,"
           "baseline_percent_correct\n";
    for (const auto& r : reports) {
        out << r.dataset << ',' << r.mode << ',' << exact_field(r.average_error) << ','
            << r.best_margin_pct << ',' << r.correct << ',' << r.total << ','
            << exact_field(r.percent_correct) << ','
            << exact_field(r.baseline_percent_correct) << '\n';
    }
    return out.str();
}

std::vector<EvaluationReport> parse_report_csv(const std::string& text) {
    std::vector<EvaluationReport> reports;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 8)
            raise(Status::parse_error, "report CSV: expected 8 fields, got " +
                                           std::to_string(fields.size()));
        EvaluationReport r;
        r.dataset = fields[0];
        r.mode = fields[1];
        r.average_error = std::strtod(fields[2].c_str(), nullptr);
        r.best_margin_pct = std::stoi(fields[3]);
        r.correct = std::stol(fields[4]);
        r.total = std::stol(fields[5]);
        r.percent_correct = std::strtod(fields[6].c_str(), nullptr);
        r.baseline_percent_correct = std::strtod(fields[7].c_str(), nullptr);
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace oscerr
