/*
 * oscerr — layered add/subtract error-correction classifier.
 *
 * C interface to the shared library. All objects are opaque handles owned
 * by the library; every fallible call returns an osc_status and leaves a
 * human-readable detail message in osc_last_error() (thread-local) on
 * failure. Strings returned through char** out-parameters are allocated by
 * the library and must be released with osc_string_free().
 */

#ifndef OSCERR_H
#define OSCERR_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define OSCERR_API __declspec(dllexport)
#else
#define OSCERR_API __attribute__((visibility("default")))
#endif

typedef enum osc_status {
    OSC_OK = 0,
    OSC_ERR_IO = 1,
    OSC_ERR_PARSE = 2,
    OSC_ERR_INVALID_ARGUMENT = 3,
    OSC_ERR_DIMENSION_MISMATCH = 4,
    OSC_ERR_EMPTY_INPUT = 5,
    OSC_ERR_UNKNOWN_LABEL = 6,
    OSC_ERR_FORMAT = 7,
    OSC_ERR_TRACE_MISMATCH = 8,
    OSC_ERR_INTERNAL = 9
} osc_status;

typedef enum osc_mode {
    OSC_MODE_ORACLE = 0,    /* the rule is driven by the true label's output value */
    OSC_MODE_HYPOTHESIS = 1 /* every candidate output is tried; smallest residual wins */
} osc_mode;

typedef struct osc_dataset osc_dataset;
typedef struct osc_model osc_model;
typedef struct osc_report_builder osc_report_builder;

typedef struct osc_train_options {
    int max_layers;           /* >= 1 */
    int plateau_enabled;      /* stop when total error stagnates */
    double plateau_threshold; /* relative improvement below which to stop */
} osc_train_options;

typedef struct osc_eval_report {
    double average_error; /* signed; NaN in hypothesis mode */
    int best_margin_pct;
    long correct;
    long total;
    double percent_correct;
    double baseline_percent_correct; /* NaN when no baseline data given */
    double runtime_seconds;
} osc_eval_report;

OSCERR_API const char* osc_version(void);
OSCERR_API const char* osc_status_name(osc_status status);
OSCERR_API const char* osc_last_error(void);
OSCERR_API void osc_string_free(char* text);

/* ---- datasets ----------------------------------------------------------
 * Delimited text plus a JSON schema file. Loading fits nominal-column
 * encodings and the category codec from the data; the _for_model variant
 * reuses the model's codec and encodings instead (for test files) and
 * fails on labels or nominal values the model has never seen.
 */
OSCERR_API osc_status osc_dataset_load(const char* data_path, const char* schema_path,
                                       osc_dataset** out);
OSCERR_API osc_status osc_dataset_load_for_model(const char* data_path,
                                                 const char* schema_path,
                                                 const osc_model* model,
                                                 osc_dataset** out);
OSCERR_API void osc_dataset_free(osc_dataset* dataset);
OSCERR_API long osc_dataset_rows(const osc_dataset* dataset);
OSCERR_API int osc_dataset_variables(const osc_dataset* dataset);
OSCERR_API int osc_dataset_categories(const osc_dataset* dataset);

/* ---- training ---------------------------------------------------------- */
OSCERR_API void osc_train_options_init(osc_train_options* options);
OSCERR_API osc_status osc_train(const osc_dataset* dataset,
                                const osc_train_options* options, osc_model** out);
OSCERR_API void osc_model_free(osc_model* model);
OSCERR_API int osc_model_layer_count(const osc_model* model);
OSCERR_API int osc_model_variable_count(const osc_model* model);
OSCERR_API int osc_model_category_count(const osc_model* model);
OSCERR_API const char* osc_model_category_label(const osc_model* model, int index);
OSCERR_API double osc_model_category_output(const osc_model* model, int index);
OSCERR_API double osc_model_final_error(const osc_model* model);
OSCERR_API const char* osc_model_stop_reason(const osc_model* model);
/* Copies up to capacity entries; returns the full history length. */
OSCERR_API int osc_model_error_history(const osc_model* model, double* buffer,
                                       int capacity);

/* ---- persistence --------------------------------------------------------
 * Versioned text format; reals are stored losslessly, so save/load is an
 * exact round trip and repeated saves of the same model are byte-identical.
 */
OSCERR_API osc_status osc_model_save(const osc_model* model, const char* path);
OSCERR_API osc_status osc_model_load(const char* path, osc_model** out);
OSCERR_API osc_status osc_model_serialize(const osc_model* model, char** text_out);

/* ---- inference -----------------------------------------------------------
 * row holds un-normalized numeric feature values (nominal columns already
 * encoded), length n == osc_model_variable_count(). Classification tries
 * every category (hypothesis mode); ties break to the lowest index.
 */
OSCERR_API osc_status osc_classify(const osc_model* model, const double* row, int n,
                                   int* category_out, double* residual_out);

/* ---- evaluation ----------------------------------------------------------
 * Margin sweep 0..49% plus the signed average output error (oracle mode).
 * baseline_train may equal eval_data (self-evaluation), be another dataset
 * (separate train/test), or be NULL to skip the nearest-prototype baseline.
 */
OSCERR_API osc_status osc_evaluate(const osc_model* model, const osc_dataset* eval_data,
                                   const osc_dataset* baseline_train, osc_mode mode,
                                   osc_eval_report* out);
OSCERR_API osc_status osc_accuracy_at_margin(const osc_model* model,
                                             const osc_dataset* eval_data,
                                             int margin_pct, osc_mode mode,
                                             long* correct_out, long* total_out);

/* ---- reports ------------------------------------------------------------ */
OSCERR_API osc_status osc_report_builder_new(osc_report_builder** out);
OSCERR_API void osc_report_builder_free(osc_report_builder* builder);
OSCERR_API osc_status osc_report_builder_add(osc_report_builder* builder,
                                             const char* dataset, const char* mode,
                                             const osc_eval_report* report);
OSCERR_API osc_status osc_report_render_text(const osc_report_builder* builder,
                                             char** text_out);
OSCERR_API osc_status osc_report_render_csv(const osc_report_builder* builder,
                                            char** text_out);

/* ---- extras -------------------------------------------------------------
 * osc_demo_trace runs the built-in single-category walkthrough and returns
 * its text; the status is OSC_ERR_TRACE_MISMATCH if any intermediate value
 * deviates from the expected ones. osc_waveshape_report renders the
 * whole-dataset vs per-category averaging comparison.
 */
OSCERR_API osc_status osc_demo_trace(char** text_out);
OSCERR_API osc_status osc_waveshape_report(const osc_dataset* dataset, char** text_out);

#ifdef __cplusplus
}
#endif

#endif /* OSCERR_H */
