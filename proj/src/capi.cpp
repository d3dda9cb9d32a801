#include "oscerr.h"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "oscerr/demo.hpp"
#include "oscerr/error.hpp"
#include "oscerr/evaluation.hpp"
#include "oscerr/inference.hpp"
#include "oscerr/model_io.hpp"
#include "oscerr/trainer.hpp"
#include "oscerr/waveshape.hpp"

// Opaque handle definitions. A dataset keeps its raw (un-normalized)
// numeric form; evaluation normalizes against the model it is given.
struct osc_dataset {
    oscerr::IngestResult ingest;
};

struct osc_model {
    oscerr::ClassifierModel model;
};

struct osc_report_builder {
    std::vector<oscerr::EvaluationReport> reports;
};

namespace {

thread_local std::string g_last_error;

osc_status to_c_status(oscerr::Status s) {
    return static_cast<osc_status>(static_cast<int>(s));
}

osc_status fail(osc_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
osc_status guarded(Fn&& fn) {
    try {
        fn();
        return OSC_OK;
    } catch (const oscerr::Error& e) {
        return fail(to_c_status(e.status()), e.what());
    } catch (const std::exception& e) {
        return fail(OSC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OSC_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

oscerr::NumericDataset normalized_for(const osc_model* model, const osc_dataset* data) {
    if (model->model.normalizer.columns() == 0) return data->ingest.data;
    return oscerr::normalize(data->ingest.data, model->model.normalizer);
}

}  // namespace

extern "C" {

const char* osc_version(void) { return "1.0.0"; }

const char* osc_status_name(osc_status status) {
    return oscerr::status_name(static_cast<oscerr::Status>(static_cast<int>(status)));
}

const char* osc_last_error(void) { return g_last_error.c_str(); }

void osc_string_free(char* text) { delete[] text; }

osc_status osc_dataset_load(const char* data_path, const char* schema_path,
                            osc_dataset** out) {
    if (!data_path || !schema_path || !out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_dataset_load: null argument");
    return guarded([&] {
        auto schema = oscerr::DatasetSchema::from_file(schema_path);
        auto handle = new osc_dataset{oscerr::load_dataset_file(data_path, schema)};
        *out = handle;
    });
}

osc_status osc_dataset_load_for_model(const char* data_path, const char* schema_path,
                                      const osc_model* model, osc_dataset** out) {
    if (!data_path || !schema_path || !model || !out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_dataset_load_for_model: null argument");
    return guarded([&] {
        auto schema = oscerr::DatasetSchema::from_file(schema_path);
        auto handle = new osc_dataset{oscerr::load_dataset_file(
            data_path, schema, model->model.codec, model->model.nominal)};
        *out = handle;
    });
}

void osc_dataset_free(osc_dataset* dataset) { delete dataset; }

long osc_dataset_rows(const osc_dataset* dataset) {
    return dataset ? static_cast<long>(dataset->ingest.data.row_count()) : 0;
}

int osc_dataset_variables(const osc_dataset* dataset) {
    return dataset ? dataset->ingest.data.n : 0;
}

int osc_dataset_categories(const osc_dataset* dataset) {
    return dataset ? dataset->ingest.codec.category_count() : 0;
}

void osc_train_options_init(osc_train_options* options) {
    if (!options) return;
    oscerr::TrainConfig defaults;
    options->max_layers = defaults.max_layers;
    options->plateau_enabled = defaults.plateau_enabled ? 1 : 0;
    options->plateau_threshold = defaults.plateau_threshold;
}

osc_status osc_train(const osc_dataset* dataset, const osc_train_options* options,
                     osc_model** out) {
    if (!dataset || !out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_train: null argument");
    return guarded([&] {
        oscerr::TrainConfig config;
        if (options) {
            config.max_layers = options->max_layers;
            config.plateau_enabled = options->plateau_enabled != 0;
            config.plateau_threshold = options->plateau_threshold;
        }
        auto handle = new osc_model{oscerr::train_pipeline(dataset->ingest, config)};
        *out = handle;
    });
}

void osc_model_free(osc_model* model) { delete model; }

int osc_model_layer_count(const osc_model* model) {
    return model ? model->model.layer_count() : 0;
}

int osc_model_variable_count(const osc_model* model) { return model ? model->model.n : 0; }

int osc_model_category_count(const osc_model* model) {
    return model ? model->model.codec.category_count() : 0;
}

const char* osc_model_category_label(const osc_model* model, int index) {
    if (!model || index < 0 || index >= model->model.codec.category_count()) return nullptr;
    return model->model.codec.labels[static_cast<size_t>(index)].c_str();
}

double osc_model_category_output(const osc_model* model, int index) {
    if (!model || index < 0 || index >= model->model.codec.category_count())
        return std::numeric_limits<double>::quiet_NaN();
    return model->model.codec.output_values[static_cast<size_t>(index)];
}

double osc_model_final_error(const osc_model* model) {
    return model ? model->model.meta.final_total_error
                 : std::numeric_limits<double>::quiet_NaN();
}

const char* osc_model_stop_reason(const osc_model* model) {
    return model ? model->model.meta.stop_reason.c_str() : nullptr;
}

int osc_model_error_history(const osc_model* model, double* buffer, int capacity) {
    if (!model) return 0;
    const auto& history = model->model.meta.error_history;
    if (buffer) {
        int count = std::min<int>(capacity, static_cast<int>(history.size()));
        for (int i = 0; i < count; ++i) buffer[i] = history[static_cast<size_t>(i)];
    }
    return static_cast<int>(history.size());
}

osc_status osc_model_save(const osc_model* model, const char* path) {
    if (!model || !path)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_model_save: null argument");
    return guarded([&] { oscerr::save_model(model->model, path); });
}

osc_status osc_model_load(const char* path, osc_model** out) {
    if (!path || !out) return fail(OSC_ERR_INVALID_ARGUMENT, "osc_model_load: null argument");
    return guarded([&] { *out = new osc_model{oscerr::load_model(path)}; });
}

osc_status osc_model_serialize(const osc_model* model, char** text_out) {
    if (!model || !text_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_model_serialize: null argument");
    return guarded([&] { *text_out = copy_string(oscerr::serialize_model(model->model)); });
}

osc_status osc_classify(const osc_model* model, const double* row, int n,
                        int* category_out, double* residual_out) {
    if (!model || !row || !category_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_classify: null argument");
    return guarded([&] {
        oscerr::NumericDataset single;
        single.rows.emplace_back(row, row + n);
        single.labels.push_back(0);
        single.n = n;
        oscerr::NumericDataset normalized =
            model->model.normalizer.columns() == 0
                ? single
                : oscerr::normalize(single, model->model.normalizer);
        auto pred = oscerr::classify_hypothesis(normalized.rows.front(), model->model);
        *category_out = pred.category;
        if (residual_out) *residual_out = pred.residual;
    });
}

osc_status osc_evaluate(const osc_model* model, const osc_dataset* eval_data,
                        const osc_dataset* baseline_train, osc_mode mode,
                        osc_eval_report* out) {
    if (!model || !eval_data || !out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_evaluate: null argument");
    return guarded([&] {
        auto start = std::chrono::steady_clock::now();
        oscerr::NumericDataset data = normalized_for(model, eval_data);
        oscerr::EvalMode m = mode == OSC_MODE_ORACLE ? oscerr::EvalMode::oracle
                                                     : oscerr::EvalMode::hypothesis;
        auto sweep = oscerr::margin_sweep(model->model, data, m);
        out->best_margin_pct = sweep.best_margin_pct;
        out->correct = sweep.correct;
        out->total = sweep.total;
        out->percent_correct =
            sweep.total > 0
                ? 100.0 * static_cast<double>(sweep.correct) / static_cast<double>(sweep.total)
                : 0.0;
        out->average_error = m == oscerr::EvalMode::oracle
                                 ? oscerr::average_error(model->model, data)
                                 : std::numeric_limits<double>::quiet_NaN();
        if (baseline_train) {
            oscerr::NumericDataset train = normalized_for(model, baseline_train);
            out->baseline_percent_correct =
                oscerr::nearest_prototype_baseline(train, data, model->model.codec);
        } else {
            out->baseline_percent_correct = std::numeric_limits<double>::quiet_NaN();
        }
        out->runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
}

osc_status osc_accuracy_at_margin(const osc_model* model, const osc_dataset* eval_data,
                                  int margin_pct, osc_mode mode, long* correct_out,
                                  long* total_out) {
    if (!model || !eval_data || !correct_out || !total_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_accuracy_at_margin: null argument");
    return guarded([&] {
        oscerr::NumericDataset data = normalized_for(model, eval_data);
        oscerr::EvalMode m = mode == OSC_MODE_ORACLE ? oscerr::EvalMode::oracle
                                                     : oscerr::EvalMode::hypothesis;
        auto [correct, total] = oscerr::accuracy_at_margin(model->model, data, margin_pct, m);
        *correct_out = correct;
        *total_out = total;
    });
}

osc_status osc_report_builder_new(osc_report_builder** out) {
    if (!out) return fail(OSC_ERR_INVALID_ARGUMENT, "osc_report_builder_new: null argument");
    *out = new osc_report_builder;
    return OSC_OK;
}

void osc_report_builder_free(osc_report_builder* builder) { delete builder; }

osc_status osc_report_builder_add(osc_report_builder* builder, const char* dataset,
                                  const char* mode, const osc_eval_report* report) {
    if (!builder || !dataset || !mode || !report)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_report_builder_add: null argument");
    oscerr::EvaluationReport r;
    r.dataset = dataset;
    r.mode = mode;
    r.average_error = report->average_error;
    r.best_margin_pct = report->best_margin_pct;
    r.correct = report->correct;
    r.total = report->total;
    r.percent_correct = report->percent_correct;
    r.baseline_percent_correct = report->baseline_percent_correct;
    r.runtime_seconds = report->runtime_seconds;
    builder->reports.push_back(std::move(r));
    return OSC_OK;
}

osc_status osc_report_render_text(const osc_report_builder* builder, char** text_out) {
    if (!builder || !text_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_report_render_text: null argument");
    return guarded([&] { *text_out = copy_string(oscerr::render_report(builder->reports)); });
}

osc_status osc_report_render_csv(const osc_report_builder* builder, char** text_out) {
    if (!builder || !text_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_report_render_csv: null argument");
    return guarded(
        [&] { *text_out = copy_string(oscerr::render_report_csv(builder->reports)); });
}

osc_status osc_demo_trace(char** text_out) {
    if (!text_out) return fail(OSC_ERR_INVALID_ARGUMENT, "osc_demo_trace: null argument");
    osc_status status = OSC_OK;
    osc_status run = guarded([&] {
        auto result = oscerr::run_demo_trace();
        *text_out = copy_string(result.text);
        if (!result.matches_expected) {
            g_last_error = "demo trace deviates from the expected values";
            status = OSC_ERR_TRACE_MISMATCH;
        }
    });
    return run != OSC_OK ? run : status;
}

osc_status osc_waveshape_report(const osc_dataset* dataset, char** text_out) {
    if (!dataset || !text_out)
        return fail(OSC_ERR_INVALID_ARGUMENT, "osc_waveshape_report: null argument");
    return guarded([&] {
        // Shape comparison runs on normalized data, as training would see it.
        auto norm = oscerr::fit_normalizer(dataset->ingest.data);
        auto normalized = oscerr::normalize(dataset->ingest.data, norm);
        *text_out =
            copy_string(oscerr::waveshape_comparison(normalized, dataset->ingest.codec));
    });
}

}  // extern "C"
