// Command-line front end: train, eval, bench, demo-trace and waveshape
// subcommands over the oscerr shared library's C interface.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "oscerr.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void die(const std::string& message) {
    std::cerr << "error: " << message << '\n';
    std::exit(1);
}

void check(osc_status status, const std::string& context) {
    if (status != OSC_OK)
        die(context + ": " + osc_status_name(status) + ": " + osc_last_error());
}

struct ScopedString {
    char* text = nullptr;
    ~ScopedString() { osc_string_free(text); }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string dataset_display_name(const std::string& path) {
    return fs::path(path).stem().string();
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in.read(buf.data(), static_cast<std::streamsize>(buf.size())) ||
           in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf.data(), static_cast<size_t>(in.gcount()));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

void write_text_file(const std::string& path, const std::string& text,
                     const std::string& what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die("cannot open " + what + " for writing: " + path);
    out << text;
    if (!out) die("write failed: " + path);
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
    std::string data, schema, out;
    int layers = 10;
    bool no_plateau = false;
    double plateau_threshold = 1e-9;
};

int cmd_train(const TrainArgs& args) {
    osc_dataset* dataset = nullptr;
    check(osc_dataset_load(args.data.c_str(), args.schema.c_str(), &dataset),
          "loading " + args.data);
    std::cout << "dataset: " << args.data << "  rows: " << osc_dataset_rows(dataset)
              << "  variables: " << osc_dataset_variables(dataset)
              << "  categories: " << osc_dataset_categories(dataset) << '\n';

    osc_train_options options;
    osc_train_options_init(&options);
    options.max_layers = args.layers;
    options.plateau_enabled = args.no_plateau ? 0 : 1;
    options.plateau_threshold = args.plateau_threshold;

    osc_model* model = nullptr;
    Timer timer;
    check(osc_train(dataset, &options, &model), "training");
    double elapsed = timer.seconds();

    int layer_count = osc_model_layer_count(model);
    std::vector<double> history(static_cast<size_t>(layer_count));
    osc_model_error_history(model, history.data(), layer_count);
    std::cout << "layer  total-error\n";
    for (int i = 0; i < layer_count; ++i)
        std::cout << std::left << std::setw(7) << i << std::setprecision(17)
                  << history[static_cast<size_t>(i)] << '\n';
    std::cout << "stopped: " << osc_model_stop_reason(model) << " (" << layer_count
              << " layers, " << std::setprecision(3) << std::fixed << elapsed << "s)\n";
    std::cout.unsetf(std::ios::fixed);

    check(osc_model_save(model, args.out.c_str()), "writing " + args.out);
    std::cout << "model written: " << args.out << '\n';

    osc_model_free(model);
    osc_dataset_free(dataset);
    return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
    std::string model, data, schema, test_data, mode = "both", report, name;
    std::optional<int> margin;
};

void add_eval_rows(osc_report_builder* builder, const std::string& name, osc_model* model,
                   osc_dataset* eval_data, osc_dataset* baseline_train,
                   const std::string& mode_selection, std::optional<int> fixed_margin,
                   double train_seconds) {
    std::vector<osc_mode> modes;
    if (mode_selection == "oracle" || mode_selection == "both")
        modes.push_back(OSC_MODE_ORACLE);
    if (mode_selection == "hypothesis" || mode_selection == "both")
        modes.push_back(OSC_MODE_HYPOTHESIS);
    for (osc_mode mode : modes) {
        osc_eval_report report;
        check(osc_evaluate(model, eval_data, baseline_train, mode, &report),
              "evaluating " + name);
        if (fixed_margin) {
            long correct = 0, total = 0;
            check(osc_accuracy_at_margin(model, eval_data, *fixed_margin, mode, &correct,
                                         &total),
                  "evaluating " + name);
            report.best_margin_pct = *fixed_margin;
            report.correct = correct;
            report.total = total;
            report.percent_correct =
                total > 0 ? 100.0 * static_cast<double>(correct) / static_cast<double>(total)
                          : 0.0;
        }
        if (mode == OSC_MODE_ORACLE) report.runtime_seconds += train_seconds;
        check(osc_report_builder_add(builder, name.c_str(),
                                     mode == OSC_MODE_ORACLE ? "oracle" : "hypothesis",
                                     &report),
              "report row");
    }
}

int cmd_eval(const EvalArgs& args) {
    osc_model* model = nullptr;
    check(osc_model_load(args.model.c_str(), &model), "loading " + args.model);

    osc_dataset* train_data = nullptr;
    check(osc_dataset_load_for_model(args.data.c_str(), args.schema.c_str(), model,
                                     &train_data),
          "loading " + args.data);
    osc_dataset* eval_data = train_data;
    if (!args.test_data.empty())
        check(osc_dataset_load_for_model(args.test_data.c_str(), args.schema.c_str(), model,
                                         &eval_data),
              "loading " + args.test_data);

    std::string name = !args.name.empty()
                           ? args.name
                           : dataset_display_name(args.test_data.empty() ? args.data
                                                                         : args.test_data);
    osc_report_builder* builder = nullptr;
    check(osc_report_builder_new(&builder), "report");
    add_eval_rows(builder, name, model, eval_data, train_data, args.mode, args.margin, 0.0);

    ScopedString text;
    check(osc_report_render_text(builder, &text.text), "report");
    std::cout << text.text;
    if (!args.report.empty()) {
        ScopedString csv;
        check(osc_report_render_csv(builder, &csv.text), "report");
        write_text_file(args.report, csv.text, "report file");
        std::cout << "machine-readable report written: " << args.report << '\n';
    }

    osc_report_builder_free(builder);
    if (eval_data != train_data) osc_dataset_free(eval_data);
    osc_dataset_free(train_data);
    osc_model_free(model);
    return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string suite = "datasets";
    std::string registry;
    std::string mode = "both";
    std::string report;
    bool strict = false;
};

struct RegistryEntry {
    std::string name;
    int table = 1;
    std::string train_file;
    std::string test_file;  // empty: evaluate on the train data
    std::string schema_file;
    int max_layers = 10;
    long expected_train_rows = -1;
    long expected_test_rows = -1;
    std::map<std::string, std::string> checksums;
    // Published oracle-mode results and the acceptable deviation.
    double published_average_error = 0.0;
    int published_margin_pct = 0;
    long published_correct = 0;
    long published_total = 0;
    long tol_misclassifications = 2;
    int tol_margin_pct = 10;
    double time_limit_seconds = 2.0;
};

std::vector<RegistryEntry> load_registry(const fs::path& path) {
    std::ifstream in(path);
    if (!in) die("cannot open registry: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        die("registry parse error: " + std::string(e.what()));
    }
    if (j.value("format", "") != "oscerr-dataset-registry")
        die("not a dataset registry: " + path.string());
    std::vector<RegistryEntry> entries;
    for (const auto& d : j.at("datasets")) {
        RegistryEntry e;
        e.name = d.at("name").get<std::string>();
        e.table = d.value("table", 1);
        e.train_file = d.at("train_file").get<std::string>();
        if (d.contains("test_file") && !d.at("test_file").is_null())
            e.test_file = d.at("test_file").get<std::string>();
        e.schema_file = d.at("schema_file").get<std::string>();
        e.max_layers = d.value("max_layers", 10);
        if (d.contains("expected_train_rows") && !d.at("expected_train_rows").is_null())
            e.expected_train_rows = d.at("expected_train_rows").get<long>();
        if (d.contains("expected_test_rows") && !d.at("expected_test_rows").is_null())
            e.expected_test_rows = d.at("expected_test_rows").get<long>();
        if (d.contains("checksums"))
            for (const auto& [file, sum] : d.at("checksums").items())
                if (!sum.is_null()) e.checksums[file] = sum.get<std::string>();
        if (d.contains("published")) {
            const auto& p = d.at("published");
            e.published_average_error = p.value("average_error", 0.0);
            e.published_margin_pct = p.value("best_margin_pct", 0);
            e.published_correct = p.value("correct", 0L);
            e.published_total = p.value("total", 0L);
        }
        if (d.contains("tolerance")) {
            const auto& t = d.at("tolerance");
            e.tol_misclassifications = t.value("misclassifications", 2L);
            e.tol_margin_pct = t.value("margin_pct", 10);
            e.time_limit_seconds = t.value("seconds", 2.0);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

int cmd_bench(const BenchArgs& args) {
    fs::path suite(args.suite);
    fs::path registry_path =
        args.registry.empty() ? suite / "registry.json" : fs::path(args.registry);
    auto entries = load_registry(registry_path);

    osc_report_builder* builder = nullptr;
    check(osc_report_builder_new(&builder), "report");
    std::vector<std::string> strict_failures;
    int evaluated = 0;

    for (const auto& entry : entries) {
        fs::path train_path = suite / entry.train_file;
        fs::path schema_path = suite / entry.schema_file;
        if (!fs::exists(train_path) ||
            (!entry.test_file.empty() && !fs::exists(suite / entry.test_file))) {
            std::cerr << "warning: " << entry.name
                      << ": dataset file missing, skipped (see scripts/fetch_datasets.py)\n";
            if (args.strict)
                strict_failures.push_back(entry.name + ": dataset file missing");
            continue;
        }
        bool integrity_ok = true;
        for (const auto& [file, expected] : entry.checksums) {
            std::string actual = sha256_file((suite / file).string());
            if (actual != expected) {
                std::cerr << "warning: " << entry.name << ": checksum mismatch for " << file
                          << "\n  expected " << expected << "\n  actual   " << actual << '\n';
                integrity_ok = false;
            }
        }
        if (!integrity_ok && args.strict) {
            strict_failures.push_back(entry.name + ": checksum mismatch");
            continue;
        }

        osc_dataset* train_data = nullptr;
        check(osc_dataset_load(train_path.string().c_str(), schema_path.string().c_str(),
                               &train_data),
              "loading " + entry.name);
        if (entry.expected_train_rows >= 0 &&
            osc_dataset_rows(train_data) != entry.expected_train_rows)
            std::cerr << "warning: " << entry.name << ": expected "
                      << entry.expected_train_rows << " train rows, found "
                      << osc_dataset_rows(train_data) << '\n';

        osc_train_options options;
        osc_train_options_init(&options);
        options.max_layers = entry.max_layers;
        options.plateau_enabled = 0;  // benchmark runs pin the iteration count

        Timer train_timer;
        osc_model* model = nullptr;
        check(osc_train(train_data, &options, &model), "training " + entry.name);
        double train_seconds = train_timer.seconds();

        osc_dataset* eval_data = train_data;
        if (!entry.test_file.empty()) {
            check(osc_dataset_load_for_model((suite / entry.test_file).string().c_str(),
                                             schema_path.string().c_str(), model, &eval_data),
                  "loading " + entry.name + " test data");
            if (entry.expected_test_rows >= 0 &&
                osc_dataset_rows(eval_data) != entry.expected_test_rows)
                std::cerr << "warning: " << entry.name << ": expected "
                          << entry.expected_test_rows << " test rows, found "
                          << osc_dataset_rows(eval_data) << '\n';
        }

        bool run_oracle = args.mode == "oracle" || args.mode == "both";
        bool run_hypothesis = args.mode == "hypothesis" || args.mode == "both";
        osc_eval_report oracle_report{};
        if (run_oracle) {
            check(osc_evaluate(model, eval_data, train_data, OSC_MODE_ORACLE,
                               &oracle_report),
                  "evaluating " + entry.name);
            oracle_report.runtime_seconds += train_seconds;
            check(osc_report_builder_add(builder, entry.name.c_str(), "oracle",
                                         &oracle_report),
                  "report row");
        }
        if (run_hypothesis) {
            osc_eval_report report;
            check(osc_evaluate(model, eval_data, train_data, OSC_MODE_HYPOTHESIS, &report),
                  "evaluating " + entry.name);
            check(osc_report_builder_add(builder, entry.name.c_str(), "hypothesis", &report),
                  "report row");
        }
        ++evaluated;

        if (args.strict && run_oracle) {
            long published_miscl = entry.published_total - entry.published_correct;
            long actual_miscl = oracle_report.total - oracle_report.correct;
            if (std::labs(actual_miscl - published_miscl) > entry.tol_misclassifications)
                strict_failures.push_back(
                    entry.name + ": " + std::to_string(actual_miscl) +
                    " misclassified vs published " + std::to_string(published_miscl) +
                    " (tolerance " + std::to_string(entry.tol_misclassifications) + ")");
            if (std::abs(oracle_report.best_margin_pct - entry.published_margin_pct) >
                entry.tol_margin_pct)
                strict_failures.push_back(
                    entry.name + ": best margin " +
                    std::to_string(oracle_report.best_margin_pct) + "% vs published " +
                    std::to_string(entry.published_margin_pct) + "%");
            if (oracle_report.runtime_seconds > entry.time_limit_seconds)
                strict_failures.push_back(entry.name + ": ran " +
                                          std::to_string(oracle_report.runtime_seconds) +
                                          "s, limit " +
                                          std::to_string(entry.time_limit_seconds) + "s");
        }

        if (eval_data != train_data) osc_dataset_free(eval_data);
        osc_dataset_free(train_data);
        osc_model_free(model);
    }

    ScopedString text;
    check(osc_report_render_text(builder, &text.text), "report");
    std::cout << text.text;
    if (evaluated == 0) std::cerr << "warning: no registered dataset was available\n";
    if (!args.report.empty()) {
        ScopedString csv;
        check(osc_report_render_csv(builder, &csv.text), "report");
        write_text_file(args.report, csv.text, "report file");
        std::cout << "machine-readable report written: " << args.report << '\n';
    }
    osc_report_builder_free(builder);

    if (args.strict && !strict_failures.empty()) {
        std::cerr << "strict checks failed:\n";
        for (const auto& f : strict_failures) std::cerr << "  " << f << '\n';
        return 1;
    }
    return 0;
}

// ---- demo-trace / waveshape --------------------------------------------------

int cmd_demo_trace() {
    ScopedString text;
    osc_status status = osc_demo_trace(&text.text);
    if (text.text) std::cout << text.text;
    if (status != OSC_OK) {
        std::cerr << "error: " << osc_status_name(status) << ": " << osc_last_error()
                  << '\n';
        return 1;
    }
    return 0;
}

int cmd_waveshape(const std::string& data, const std::string& schema) {
    osc_dataset* dataset = nullptr;
    check(osc_dataset_load(data.c_str(), schema.c_str(), &dataset), "loading " + data);
    ScopedString text;
    check(osc_waveshape_report(dataset, &text.text), "waveshape report");
    std::cout << text.text;
    osc_dataset_free(dataset);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscerr — layered add/subtract error-correction classifier"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(osc_version()));

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train a classifier and write a model file");
    train->add_option("--data", train_args.data, "training data file")->required();
    train->add_option("--schema", train_args.schema, "dataset schema (JSON)")->required();
    train->add_option("--layers", train_args.layers, "maximum number of layers")
        ->default_val(10);
    train->add_flag("--no-plateau", train_args.no_plateau,
                    "disable the error-plateau stopping criterion");
    train->add_option("--plateau-threshold", train_args.plateau_threshold,
                      "relative total-error improvement below which training stops")
        ->default_val(1e-9);
    train->add_option("--out", train_args.out, "output model file")->required();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a model file against a dataset");
    eval->add_option("--model", eval_args.model, "model file")->required();
    eval->add_option("--data", eval_args.data, "training data (baseline prototypes; "
                                               "evaluation data unless --test-data)")
        ->required();
    eval->add_option("--schema", eval_args.schema, "dataset schema (JSON)")->required();
    eval->add_option("--test-data", eval_args.test_data,
                     "separate evaluation data (same schema)");
    eval->add_option("--mode", eval_args.mode, "oracle | hypothesis | both")
        ->check(CLI::IsMember({"oracle", "hypothesis", "both"}))
        ->default_val("both");
    int margin_value = -1;
    eval->add_option("--margin", margin_value,
                     "report accuracy at this fixed margin instead of the sweep")
        ->check(CLI::Range(0, 49));
    eval->add_option("--report", eval_args.report, "write machine-readable CSV here");
    eval->add_option("--name", eval_args.name, "dataset name for the report");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run the registered benchmark suite");
    bench->add_option("suite", bench_args.suite, "suite directory")->default_val("datasets");
    bench->add_option("--registry", bench_args.registry,
                      "registry file (default: <suite>/registry.json)");
    bench->add_option("--mode", bench_args.mode, "oracle | hypothesis | both")
        ->check(CLI::IsMember({"oracle", "hypothesis", "both"}))
        ->default_val("both");
    bench->add_option("--report", bench_args.report, "write machine-readable CSV here");
    bench->add_flag("--strict", bench_args.strict,
                    "fail on missing datasets or out-of-tolerance results");

    auto* demo = app.add_subcommand("demo-trace",
                                    "run the built-in single-category walkthrough");

    std::string ws_data, ws_schema;
    auto* waveshape = app.add_subcommand(
        "waveshape", "compare whole-dataset vs per-category averaging");
    waveshape->add_option("--data", ws_data, "data file")->required();
    waveshape->add_option("--schema", ws_schema, "dataset schema (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    if (margin_value >= 0) eval_args.margin = margin_value;

    if (train->parsed()) return cmd_train(train_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (demo->parsed()) return cmd_demo_trace();
    if (waveshape->parsed()) return cmd_waveshape(ws_data, ws_schema);
    return 1;
}
