// Acceptance suite: one entry per release criterion, each printing a single
// PASS/FAIL line. Criteria needing benchmark datasets that are not present
// report SKIP (exit 77) and name the fetch script; everything else runs
// with its thresholds fixed below.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oscerr/demo.hpp"
#include "oscerr/evaluation.hpp"
#include "oscerr/inference.hpp"
#include "oscerr/model_io.hpp"
#include "oscerr/trainer.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using namespace oscerr;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kSkip = 77;

struct DatasetSpec {
    const char* name;
    const char* train_file;
    const char* test_file;  // nullptr: evaluate on the train data
    const char* schema_file;
    int max_layers;
    long published_correct;
    long published_total;
    int published_margin;
    long tol_misclassifications;
    double time_limit_seconds;
};

// Reference results and tolerances for the benchmark reproductions.
const DatasetSpec kTable1[] = {
    {"wine", "wine.csv", nullptr, "schemas/wine.json", 10, 178, 178, 25, 2, 2.0},
    {"iris", "iris.csv", nullptr, "schemas/iris.json", 10, 149, 150, 45, 2, 2.0},
    {"zoo", "zoo.csv", nullptr, "schemas/zoo.json", 10, 101, 101, 45, 2, 2.0},
    {"hayes-roth", "hayes-roth.csv", nullptr, "schemas/hayes-roth.json", 10, 131, 132, 25,
     2, 2.0},
    {"liver", "liver.csv", nullptr, "schemas/liver.json", 2, 345, 345, 35, 2, 2.0},
    {"abalone", "abalone.csv", nullptr, "schemas/abalone.json", 20, 3410, 4177, 49, 42,
     2.0},
};
const DatasetSpec kTable2[] = {
    {"um", "um_train.csv", "um_test.csv", "schemas/um.json", 10, 143, 145, 49, 2, 2.0},
    {"banknote", "banknote_train.csv", "banknote_test.csv", "schemas/banknote.json", 10,
     100, 100, 35, 2, 2.0},
    {"spect", "spect_train.csv", "spect_test.csv", "schemas/spect.json", 10, 187, 187, 35,
     2, 2.0},
    {"letters", "letters_train.csv", "letters_test.csv", "schemas/letters.json", 10, 3692,
     4000, 49, 2, 10.0},
};

fs::path g_datasets_dir = OSCERR_DATASETS_DIR;

int pass(const std::string& id, const std::string& detail) {
    std::cout << "[PASS] criterion " << id << ": " << detail << '\n';
    return kPass;
}

int fail(const std::string& id, const std::string& detail) {
    std::cout << "[FAIL] criterion " << id << ": " << detail << '\n';
    return kFail;
}

int skip(const std::string& id, const std::string& missing) {
    std::cout << "[SKIP] criterion " << id << ": " << missing
              << " not present - run scripts/fetch_datasets.py\n";
    return kSkip;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const DatasetSpec* find_spec(const std::string& name) {
    for (const auto& spec : kTable1)
        if (name == spec.name) return &spec;
    for (const auto& spec : kTable2)
        if (name == spec.name) return &spec;
    return nullptr;
}

// Missing file behind a criterion: empty when everything is available.
std::string missing_file(const DatasetSpec& spec) {
    if (!fs::exists(g_datasets_dir / spec.train_file))
        return (g_datasets_dir / spec.train_file).string();
    if (spec.test_file && !fs::exists(g_datasets_dir / spec.test_file))
        return (g_datasets_dir / spec.test_file).string();
    return "";
}

struct BenchmarkRun {
    ClassifierModel model;
    NumericDataset eval_data;    // normalized
    NumericDataset train_data;   // normalized
    SweepResult oracle_sweep;
    double oracle_average_error = 0.0;
    double seconds = 0.0;  // train + oracle evaluation
    CategoryCodec codec;
};

// Trains with the dataset's pinned iteration cap (no plateau, matching the
// published protocol) and evaluates in oracle mode.
BenchmarkRun run_benchmark(const DatasetSpec& spec) {
    auto schema = DatasetSchema::from_file((g_datasets_dir / spec.schema_file).string());
    auto train_ingest = load_dataset_file((g_datasets_dir / spec.train_file).string(), schema);

    auto start = std::chrono::steady_clock::now();
    TrainConfig config;
    config.max_layers = spec.max_layers;
    config.plateau_enabled = false;
    auto model = train_pipeline(train_ingest, config);

    BenchmarkRun run;
    run.train_data = normalize(train_ingest.data, model.normalizer);
    if (spec.test_file) {
        auto test_ingest =
            load_dataset_file((g_datasets_dir / spec.test_file).string(), schema,
                              train_ingest.codec, train_ingest.nominal);
        run.eval_data = normalize(test_ingest.data, model.normalizer);
    } else {
        run.eval_data = run.train_data;
    }
    run.oracle_sweep = margin_sweep(model, run.eval_data, EvalMode::oracle);
    run.oracle_average_error = average_error(model, run.eval_data);
    run.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    run.codec = train_ingest.codec;
    run.model = std::move(model);
    return run;
}

// ---- criterion 1: exact golden trace ---------------------------------------

int criterion_golden_trace() {
    const std::string id = "1 (golden trace)";
    auto trace = run_demo_trace();
    if (!trace.matches_expected)
        return fail(id, "trace deviates from the published values:\n" + trace.text);

    NumericDataset data;
    data.rows = {{3, 8, 5, 10, 2}};
    data.labels = {0};
    data.n = 5;
    auto codec = CategoryCodec::unchecked({"group"}, {4.0}, 0.0);
    TrainConfig config;
    config.max_layers = 10;
    config.allow_single_category = true;
    train(data, codec, config);  // warm-up
    auto start = std::chrono::steady_clock::now();
    auto model = train(data, codec, config);
    auto fwd = forward(data.rows[0], model, 4.0);
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    bool exact = model.layers == std::vector<CorrectionLayer>{{1, 4, 1, 6, 2},
                                                              {0, 0, 0, 0, 0}} &&
                 model.meta.error_history == std::vector<double>{14, 0} &&
                 fwd.states.back() == std::vector<double>{4, 4, 4, 4, 4} &&
                 fwd.final_output == 4.0;
    if (!exact) return fail(id, "layer stack or error history not exactly as published");
    if (ms >= 1.0) return fail(id, fmt("took %.3f ms (limit 1 ms)", ms));
    return pass(id, fmt("layers [1,4,1,6,2] -> [0,0,0,0,0], errors 14 -> 0, row "
                        "[4,4,4,4,4], %.4f ms",
                        ms));
}

// ---- criterion 2: byte-identical wine training ------------------------------

int criterion_determinism() {
    const std::string id = "2 (determinism)";
    const auto* wine = find_spec("wine");
    auto missing = missing_file(*wine);
    if (!missing.empty()) return skip(id, missing);

    auto schema = DatasetSchema::from_file((g_datasets_dir / wine->schema_file).string());
    auto ingest = load_dataset_file((g_datasets_dir / wine->train_file).string(), schema);
    TrainConfig config;
    config.max_layers = 10;
    config.plateau_enabled = false;

    auto tmp = fs::temp_directory_path();
    auto path_a = (tmp / "oscerr-acceptance-a.json").string();
    auto path_b = (tmp / "oscerr-acceptance-b.json").string();
    save_model(train_pipeline(ingest, config), path_a);
    save_model(train_pipeline(ingest, config), path_b);

    auto read = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string a = read(path_a), b = read(path_b);
    fs::remove(path_a);
    fs::remove(path_b);
    if (a.empty() || a != b) return fail(id, "two wine training runs differ");
    return pass(id, fmt("two full train+serialize runs byte-identical (%zu bytes)",
                        a.size()));
}

// ---- criterion 3: single-category collapse ----------------------------------

int criterion_single_category() {
    const std::string id = "3 (single-category collapse)";
    testutil::Rng rng(331);
    for (int trial = 0; trial < 200; ++trial) {
        NumericDataset data;
        data.n = rng.integer(1, 12);
        data.rows.push_back(rng.unit_row(data.n));
        data.labels.push_back(0);
        auto codec = CategoryCodec::unchecked({"only"}, {rng.unit()}, 0.0);
        TrainConfig config;
        config.max_layers = 10;
        config.allow_single_category = true;
        auto model = train(data, codec, config);
        if (model.layers.size() != 2 || model.meta.error_history.size() != 2 ||
            model.meta.error_history[1] != 0.0)
            return fail(id, fmt("trial %d: error not exactly 0 after one transposition",
                                trial));
    }
    return pass(id, "200 random prototypes/targets all reach error 0 in one step");
}

// ---- criteria 4/5: benchmark reproductions ----------------------------------

int criterion_benchmark(const std::string& id, const DatasetSpec& spec) {
    auto missing = missing_file(spec);
    if (!missing.empty()) return skip(id, missing);

    auto run = run_benchmark(spec);
    long published_miscl = spec.published_total - spec.published_correct;
    long actual_miscl = run.oracle_sweep.total - run.oracle_sweep.correct;
    std::string detail = fmt(
        "oracle %ld/%ld @ %d%% margin in %.3fs (published %ld/%ld @ %d%%), avg err %.4f",
        run.oracle_sweep.correct, run.oracle_sweep.total, run.oracle_sweep.best_margin_pct,
        run.seconds, spec.published_correct, spec.published_total, spec.published_margin,
        run.oracle_average_error);
    if (std::labs(actual_miscl - published_miscl) > spec.tol_misclassifications)
        return fail(id, detail + fmt(" - misclassifications off by more than %ld",
                                     spec.tol_misclassifications));
    if (std::abs(run.oracle_sweep.best_margin_pct - spec.published_margin) > 10)
        return fail(id, detail + " - best margin off by more than 10 points");
    if (run.seconds >= spec.time_limit_seconds)
        return fail(id, detail + fmt(" - over the %.0fs limit", spec.time_limit_seconds));
    return pass(id, detail);
}

// ---- criterion 6: average output error magnitude -----------------------------

int criterion_average_error(const std::string& id, const DatasetSpec& spec) {
    auto missing = missing_file(spec);
    if (!missing.empty()) return skip(id, missing);
    auto run = run_benchmark(spec);
    std::string detail = fmt("oracle average error %.6f", run.oracle_average_error);
    if (!(std::abs(run.oracle_average_error) <= 0.05))
        return fail(id, detail + " - magnitude above 0.05");
    return pass(id, detail);
}

// ---- criterion 7: the honest-inference record --------------------------------

int criterion_hypothesis_record() {
    const std::string id = "7 (hypothesis-mode record)";
    std::vector<EvaluationReport> reports;
    int available = 0, beat_baseline = 0;
    for (const auto& table : {std::span<const DatasetSpec>(kTable1),
                              std::span<const DatasetSpec>(kTable2)}) {
        for (const auto& spec : table) {
            if (!missing_file(spec).empty()) continue;
            ++available;
            auto run = run_benchmark(spec);
            double baseline =
                nearest_prototype_baseline(run.train_data, run.eval_data, run.codec);

            EvaluationReport oracle;
            oracle.dataset = spec.name;
            oracle.mode = "oracle";
            oracle.average_error = run.oracle_average_error;
            oracle.best_margin_pct = run.oracle_sweep.best_margin_pct;
            oracle.correct = run.oracle_sweep.correct;
            oracle.total = run.oracle_sweep.total;
            oracle.percent_correct = 100.0 * static_cast<double>(oracle.correct) /
                                     static_cast<double>(oracle.total);
            oracle.baseline_percent_correct = baseline;
            oracle.runtime_seconds = run.seconds;
            reports.push_back(oracle);

            auto hyp_sweep = margin_sweep(run.model, run.eval_data, EvalMode::hypothesis);
            EvaluationReport hyp;
            hyp.dataset = spec.name;
            hyp.mode = "hypothesis";
            hyp.average_error = std::numeric_limits<double>::quiet_NaN();
            hyp.best_margin_pct = hyp_sweep.best_margin_pct;
            hyp.correct = hyp_sweep.correct;
            hyp.total = hyp_sweep.total;
            hyp.percent_correct = 100.0 * static_cast<double>(hyp.correct) /
                                  static_cast<double>(hyp.total);
            hyp.baseline_percent_correct = baseline;
            reports.push_back(hyp);
            if (hyp.percent_correct > baseline) ++beat_baseline;
        }
    }
    if (available == 0) return skip(id, "every benchmark dataset");

    auto rendered = render_report(reports);
    std::cout << rendered;
    // every evaluated dataset must carry a hypothesis row
    for (const auto& r : reports)
        if (r.mode == "oracle") {
            bool found = false;
            for (const auto& h : reports)
                if (h.mode == "hypothesis" && h.dataset == r.dataset) found = true;
            if (!found) return fail(id, "missing hypothesis row for " + r.dataset);
        }
    bool at_least_half = 2 * beat_baseline >= available;
    bool documented = rendered.find("note: hypothesis mode beat the nearest-prototype "
                                    "baseline") != std::string::npos;
    if (!at_least_half && !documented)
        return fail(id, "hypothesis mode lost to the baseline without the report "
                        "documenting it");
    return pass(id, fmt("hypothesis mode reported for %d dataset(s); beat the baseline on "
                        "%d (%s)",
                        available, beat_baseline,
                        at_least_half ? "at least half" : "below half, documented above"));
}

// ---- criterion 8: margin arithmetic -------------------------------------------

int criterion_margin_arithmetic() {
    const std::string id = "8 (margin arithmetic)";
    double gap = 0.5;
    double w20 = gap * 20 / 100;
    double w15 = gap * 15 / 100;
    bool ok = w20 == 0.1 && w15 == 0.075;
    ok = ok && (0.5 - w20 == 0.4) && (0.5 + w20 == 0.6);
    ok = ok && (0.5 - w15 == 0.425) && (0.5 + w15 == 0.575);
    ok = ok && within_margin(0.45, 0.5, gap, 20) && !within_margin(0.39, 0.5, gap, 20);
    ok = ok && within_margin(0.4, 0.5, gap, 20) && within_margin(0.6, 0.5, gap, 20);
    ok = ok && within_margin(0.43, 0.5, gap, 15) && !within_margin(0.42, 0.5, gap, 15);
    ok = ok && within_margin(0.5, 0.5, gap, 0);
    if (!ok) return fail(id, "band arithmetic deviates from the published examples");
    return pass(id, "20% margin = 0.1 band 0.4-0.6; 15% margin = 0.075 band 0.425-0.575");
}

// ---- criterion 9: randomized property suites -----------------------------------

int criterion_properties() {
    const std::string id = "9 (property suites)";
    testutil::Rng rng(991);

    for (int i = 0; i < 1000; ++i) {  // correction values are never negative
        auto row = rng.unit_row(rng.integer(1, 8));
        for (double& v : row) v = v * 4 - 2;
        for (double ec : absolute_error(row, rng.unit() * 4 - 2))
            if (!(ec >= 0.0)) return fail(id, "negative correction value");
    }

    for (int i = 0; i < 1000; ++i) {  // a zero layer is the identity
        auto row = rng.unit_row(rng.integer(1, 8));
        if (transpose_row(row, CorrectionLayer(row.size(), 0.0), rng.unit()) != row)
            return fail(id, "zero-correction layer changed a row");
    }

    for (int trial = 0; trial < 1000; ++trial) {  // oracle sweep is monotone
        auto model = testutil::random_model(rng);
        NumericDataset data;
        data.n = model.n;
        int rows = rng.integer(1, 6);
        for (int r = 0; r < rows; ++r) {
            data.rows.push_back(rng.unit_row(model.n));
            data.labels.push_back(rng.integer(0, model.codec.category_count() - 1));
        }
        long previous = -1;
        for (int margin = 0; margin <= 49; ++margin) {
            auto [correct, total] = accuracy_at_margin(model, data, margin,
                                                       EvalMode::oracle);
            if (correct < previous) return fail(id, "margin sweep lost a correct row");
            previous = correct;
        }
    }

    for (int i = 0; i < 1000; ++i) {  // serialization round trip
        auto model = testutil::random_model(rng);
        if (!testutil::models_equal(model, deserialize_model(serialize_model(model))))
            return fail(id, "serialization round trip changed the model");
    }

    for (int i = 0; i < 1000; ++i) {  // aggregation ignores variable order
        auto row = rng.unit_row(rng.integer(1, 10));
        double reference = aggregate_output(row);
        auto shuffled = row;
        for (size_t k = shuffled.size(); k > 1; --k)
            std::swap(shuffled[k - 1], shuffled[rng.raw() % k]);
        if (aggregate_output(shuffled) != reference)
            return fail(id, "aggregate output depends on variable order");
    }

    return pass(id, "non-negativity, zero-layer identity, sweep monotonicity, "
                    "serialization round trip, aggregation symmetry: 1000 cases each");
}

int run_one(const std::string& key) {
    if (key == "c1") return criterion_golden_trace();
    if (key == "c2") return criterion_determinism();
    if (key == "c3") return criterion_single_category();
    if (key.rfind("c4-", 0) == 0 || key.rfind("c5-", 0) == 0) {
        const auto* spec = find_spec(key.substr(3));
        if (!spec) {
            std::cerr << "unknown dataset in criterion id: " << key << '\n';
            return kFail;
        }
        std::string table = key[1] == '4' ? "4 (benchmarks, self-evaluated)"
                                          : "5 (benchmarks, separate test sets)";
        return criterion_benchmark(table + " [" + spec->name + "]", *spec);
    }
    if (key.rfind("c6-", 0) == 0) {
        const auto* spec = find_spec(key.substr(3));
        if (!spec) {
            std::cerr << "unknown dataset in criterion id: " << key << '\n';
            return kFail;
        }
        return criterion_average_error(
            std::string("6 (average error magnitude) [") + spec->name + "]", *spec);
    }
    if (key == "c7") return criterion_hypothesis_record();
    if (key == "c8") return criterion_margin_arithmetic();
    if (key == "c9") return criterion_properties();
    std::cerr << "unknown criterion id: " << key << '\n';
    return kFail;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> keys;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--datasets" && i + 1 < argc) {
            g_datasets_dir = argv[++i];
        } else {
            keys.push_back(arg);
        }
    }
    if (keys.empty())
        keys = {"c1",      "c2",         "c3",      "c4-wine",    "c4-iris",
                "c4-zoo",  "c4-hayes-roth", "c4-liver", "c4-abalone", "c5-um",
                "c5-banknote", "c5-spect", "c5-letters", "c6-wine",    "c6-iris",
                "c6-zoo",  "c7",         "c8",      "c9"};

    bool any_fail = false;
    bool all_skipped = true;
    for (const auto& key : keys) {
        int code = run_one(key);
        if (code == kFail) any_fail = true;
        if (code != kSkip) all_skipped = false;
    }
    if (any_fail) return kFail;
    if (keys.size() == 1 && all_skipped) return kSkip;
    return kPass;
}
