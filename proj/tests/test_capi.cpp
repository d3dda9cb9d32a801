#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "oscerr.h"

// Exercises the shared library strictly through its C header.

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "oscerr-capi-test";
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }
};

const char* kSchema = R"({"label_column": 2})";
const char* kData =
    "0.125,0,A\n"
    "0.375,1,A\n"
    "0.5,2,B\n"
    "1,3,B\n";

struct Fixture {
    TempDir dir;
    std::string data_path, schema_path;
    Fixture() {
        data_path = dir.file("tiny.csv", kData);
        schema_path = dir.file("tiny.json", kSchema);
    }
};

}  // namespace

TEST_CASE("version and status names are available") {
    CHECK(std::strlen(osc_version()) > 0);
    CHECK(std::string(osc_status_name(OSC_OK)) == "ok");
    CHECK(std::string(osc_status_name(OSC_ERR_IO)) == "io-error");
}

TEST_CASE("null arguments are rejected with a message") {
    CHECK(osc_dataset_load(nullptr, nullptr, nullptr) == OSC_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(osc_last_error()) > 0);
    CHECK(osc_train(nullptr, nullptr, nullptr) == OSC_ERR_INVALID_ARGUMENT);
    CHECK(osc_model_load(nullptr, nullptr) == OSC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("missing files surface as io errors") {
    Fixture fx;
    osc_dataset* data = nullptr;
    CHECK(osc_dataset_load("no-such-file.csv", fx.schema_path.c_str(), &data) ==
          OSC_ERR_IO);
    CHECK(std::string(osc_last_error()).find("no-such-file.csv") != std::string::npos);
    osc_model* model = nullptr;
    CHECK(osc_model_load("no-such-model.json", &model) == OSC_ERR_IO);
}

TEST_CASE("full train/save/load/evaluate cycle") {
    Fixture fx;
    osc_dataset* data = nullptr;
    REQUIRE(osc_dataset_load(fx.data_path.c_str(), fx.schema_path.c_str(), &data) == OSC_OK);
    CHECK(osc_dataset_rows(data) == 4);
    CHECK(osc_dataset_variables(data) == 2);
    CHECK(osc_dataset_categories(data) == 2);

    osc_train_options options;
    osc_train_options_init(&options);
    CHECK(options.max_layers == 10);
    CHECK(options.plateau_enabled == 1);

    osc_model* model = nullptr;
    REQUIRE(osc_train(data, &options, &model) == OSC_OK);
    CHECK(osc_model_variable_count(model) == 2);
    CHECK(osc_model_category_count(model) == 2);
    CHECK(osc_model_layer_count(model) >= 1);
    CHECK(osc_model_layer_count(model) <= 10);
    CHECK(std::string(osc_model_category_label(model, 0)) == "A");
    CHECK(std::string(osc_model_category_label(model, 1)) == "B");
    CHECK(osc_model_category_label(model, 2) == nullptr);
    CHECK(osc_model_category_output(model, 0) == 0.0);
    CHECK(osc_model_category_output(model, 1) == 1.0);
    CHECK(std::strlen(osc_model_stop_reason(model)) > 0);

    int history_len = osc_model_error_history(model, nullptr, 0);
    CHECK(history_len == osc_model_layer_count(model));
    std::vector<double> history(static_cast<size_t>(history_len));
    osc_model_error_history(model, history.data(), history_len);
    CHECK(history.front() >= history.back());
    CHECK(osc_model_final_error(model) == history.back());

    // serialization is deterministic
    char* first = nullptr;
    char* second = nullptr;
    REQUIRE(osc_model_serialize(model, &first) == OSC_OK);
    REQUIRE(osc_model_serialize(model, &second) == OSC_OK);
    CHECK(std::strcmp(first, second) == 0);

    auto model_path = fx.dir.file("model.json", "");
    REQUIRE(osc_model_save(model, model_path.c_str()) == OSC_OK);
    osc_model* loaded = nullptr;
    REQUIRE(osc_model_load(model_path.c_str(), &loaded) == OSC_OK);
    char* reloaded = nullptr;
    REQUIRE(osc_model_serialize(loaded, &reloaded) == OSC_OK);
    CHECK(std::strcmp(first, reloaded) == 0);

    // classification takes raw feature rows
    int category = -1;
    double residual = std::nan("");
    double row_a[2] = {0.125, 0};
    REQUIRE(osc_classify(model, row_a, 2, &category, &residual) == OSC_OK);
    CHECK(category == 0);
    CHECK(residual >= 0.0);
    double row_b[2] = {1, 3};
    REQUIRE(osc_classify(model, row_b, 2, &category, &residual) == OSC_OK);
    CHECK(category == 1);
    double row_bad[3] = {1, 2, 3};
    CHECK(osc_classify(model, row_bad, 3, &category, &residual) ==
          OSC_ERR_DIMENSION_MISMATCH);

    // evaluation in both modes, self-baseline
    osc_eval_report oracle;
    REQUIRE(osc_evaluate(model, data, data, OSC_MODE_ORACLE, &oracle) == OSC_OK);
    CHECK(oracle.total == 4);
    CHECK(oracle.correct >= 0);
    CHECK(oracle.correct <= 4);
    CHECK(oracle.best_margin_pct >= 0);
    CHECK(oracle.best_margin_pct <= 49);
    CHECK(std::isfinite(oracle.average_error));
    CHECK(oracle.baseline_percent_correct >= 0.0);

    osc_eval_report hypothesis;
    REQUIRE(osc_evaluate(model, data, nullptr, OSC_MODE_HYPOTHESIS, &hypothesis) == OSC_OK);
    CHECK(hypothesis.total == 4);
    CHECK(std::isnan(hypothesis.average_error));
    CHECK(std::isnan(hypothesis.baseline_percent_correct));

    long correct = 0, total = 0;
    REQUIRE(osc_accuracy_at_margin(model, data, 49, OSC_MODE_ORACLE, &correct, &total) ==
            OSC_OK);
    CHECK(total == 4);
    CHECK(correct >= oracle.correct);  // 49 is the widest band
    CHECK(osc_accuracy_at_margin(model, data, 99, OSC_MODE_ORACLE, &correct, &total) ==
          OSC_ERR_INVALID_ARGUMENT);

    // report building
    osc_report_builder* builder = nullptr;
    REQUIRE(osc_report_builder_new(&builder) == OSC_OK);
    REQUIRE(osc_report_builder_add(builder, "tiny", "oracle", &oracle) == OSC_OK);
    REQUIRE(osc_report_builder_add(builder, "tiny", "hypothesis", &hypothesis) == OSC_OK);
    char* text = nullptr;
    REQUIRE(osc_report_render_text(builder, &text) == OSC_OK);
    CHECK(std::string(text).find("tiny") != std::string::npos);
    char* csv = nullptr;
    REQUIRE(osc_report_render_csv(builder, &csv) == OSC_OK);
    CHECK(std::string(csv).find("dataset,mode,") == 0);

    osc_string_free(text);
    osc_string_free(csv);
    osc_string_free(first);
    osc_string_free(second);
    osc_string_free(reloaded);
    osc_report_builder_free(builder);
    osc_model_free(loaded);
    osc_model_free(model);
    osc_dataset_free(data);
}

TEST_CASE("loading evaluation data against a model rejects unseen labels") {
    Fixture fx;
    osc_dataset* data = nullptr;
    REQUIRE(osc_dataset_load(fx.data_path.c_str(), fx.schema_path.c_str(), &data) == OSC_OK);
    osc_model* model = nullptr;
    REQUIRE(osc_train(data, nullptr, &model) == OSC_OK);

    auto ok_path = fx.dir.file("ok.csv", "0.2,1,B\n");
    osc_dataset* ok_data = nullptr;
    REQUIRE(osc_dataset_load_for_model(ok_path.c_str(), fx.schema_path.c_str(), model,
                                       &ok_data) == OSC_OK);
    CHECK(osc_dataset_rows(ok_data) == 1);

    auto bad_path = fx.dir.file("bad.csv", "0.2,1,C\n");
    osc_dataset* bad_data = nullptr;
    CHECK(osc_dataset_load_for_model(bad_path.c_str(), fx.schema_path.c_str(), model,
                                     &bad_data) == OSC_ERR_UNKNOWN_LABEL);

    osc_dataset_free(ok_data);
    osc_model_free(model);
    osc_dataset_free(data);
}

TEST_CASE("demo trace matches and waveshape renders") {
    char* text = nullptr;
    CHECK(osc_demo_trace(&text) == OSC_OK);
    REQUIRE(text != nullptr);
    CHECK(std::string(text).find("Absolute error = 1, 4, 1, 6, 2") != std::string::npos);
    CHECK(std::string(text).find("4, 4, 4, 4, 4") != std::string::npos);
    osc_string_free(text);

    Fixture fx;
    osc_dataset* data = nullptr;
    REQUIRE(osc_dataset_load(fx.data_path.c_str(), fx.schema_path.c_str(), &data) == OSC_OK);
    char* report = nullptr;
    CHECK(osc_waveshape_report(data, &report) == OSC_OK);
    CHECK(std::string(report).find("per-category") != std::string::npos);
    osc_string_free(report);
    osc_dataset_free(data);
}
