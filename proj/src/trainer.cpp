#include "oscerr/trainer.hpp"

#include <algorithm>
#include <limits>

#include "oscerr/error.hpp"

namespace oscerr {

namespace {

// Element-wise mean over the per-category correction sets, in category order.
CorrectionLayer average_corrections(const std::vector<CorrectionLayer>& per_category) {
    size_t n = per_category.front().size();
    CorrectionLayer avg(n, 0.0);
    for (const auto& ec : per_category)
        for (size_t j = 0; j < n; ++j) avg[j] += ec[j];
    for (size_t j = 0; j < n; ++j) avg[j] /= static_cast<double>(per_category.size());
    return avg;
}

}  // namespace

std::vector<std::pair<int, std::vector<double>>> build_prototypes(
    const NumericDataset& data, const CategoryCodec& codec) {
    if (data.rows.empty()) raise(Status::empty_input, "build_prototypes: empty dataset");
    int categories = codec.category_count();
    std::vector<std::vector<double>> sums(
        static_cast<size_t>(categories),
        std::vector<double>(static_cast<size_t>(data.n), 0.0));
    std::vector<long> counts(static_cast<size_t>(categories), 0);
    for (size_t r = 0; r < data.rows.size(); ++r) {
        int c = data.labels[r];
        if (c < 0 || c >= categories)
            raise(Status::internal_error, "build_prototypes: label index out of range");
        auto& sum = sums[static_cast<size_t>(c)];
        for (size_t j = 0; j < sum.size(); ++j) sum[j] += data.rows[r][j];
        ++counts[static_cast<size_t>(c)];
    }
    std::vector<std::pair<int, std::vector<double>>> prototypes;
    prototypes.reserve(static_cast<size_t>(categories));
    for (int c = 0; c < categories; ++c) {
        if (counts[static_cast<size_t>(c)] == 0)
            raise(Status::empty_input, "category '" + codec.labels[static_cast<size_t>(c)] +
                                           "' has no rows");
        auto proto = sums[static_cast<size_t>(c)];
        for (double& v : proto) v /= static_cast<double>(counts[static_cast<size_t>(c)]);
        prototypes.emplace_back(c, std::move(proto));
    }
    return prototypes;
}

double total_error(const std::vector<CorrectionLayer>& per_category) {
    double sum = 0.0;
    for (const auto& ec : per_category)
        for (double v : ec) sum += v;
    return sum;
}

CorrectionLayer train_iteration(TrainingState& state, const CorrectionLayer& prev_layer,
                                const CategoryCodec& codec) {
    size_t categories = state.current_rows.size();
    std::vector<CorrectionLayer> corrections;
    corrections.reserve(categories);
    for (size_t c = 0; c < categories; ++c) {
        double o = codec.output_values[c];
        transpose_row_inplace(state.current_rows[c], prev_layer, o);
        corrections.push_back(absolute_error(state.current_rows[c], o));
    }
    CorrectionLayer layer = average_corrections(corrections);
    state.error_history.push_back(total_error(corrections));
    state.correction_sets.push_back(std::move(corrections));
    return layer;
}

ClassifierModel train(const NumericDataset& data, const CategoryCodec& codec,
                      const TrainConfig& config) {
    if (config.max_layers < 1)
        raise(Status::invalid_argument, "max_layers must be at least 1");
    if (codec.category_count() < 2 && !config.allow_single_category)
        raise(Status::invalid_argument, "training needs at least two categories");
    if (static_cast<int>(codec.output_values.size()) != codec.category_count())
        raise(Status::invalid_argument, "codec output values do not match its labels");

    auto prototypes = build_prototypes(data, codec);

    TrainingState state;
    state.current_rows.resize(prototypes.size());
    for (auto& [c, proto] : prototypes)
        state.current_rows[static_cast<size_t>(c)] = std::move(proto);

    ClassifierModel model;
    model.codec = codec;
    model.n = data.n;

    // First stored layer: averaged absolute error of the raw prototypes.
    std::vector<CorrectionLayer> corrections;
    corrections.reserve(state.current_rows.size());
    for (size_t c = 0; c < state.current_rows.size(); ++c)
        corrections.push_back(absolute_error(state.current_rows[c], codec.output_values[c]));
    model.layers.push_back(average_corrections(corrections));
    state.error_history.push_back(total_error(corrections));
    state.correction_sets.push_back(std::move(corrections));

    std::string stop_reason = "max-layers";
    while (model.layer_count() < config.max_layers) {
        if (state.error_history.back() == 0.0) {
            stop_reason = "zero-error";
            break;
        }
        model.layers.push_back(train_iteration(state, model.layers.back(), codec));
        size_t k = state.error_history.size() - 1;
        if (state.error_history[k] == 0.0) {
            stop_reason = "zero-error";
            break;
        }
        if (config.plateau_enabled) {
            double prev = state.error_history[k - 1];
            double cur = state.error_history[k];
            double denom = std::max(prev, std::numeric_limits<double>::min());
            if ((prev - cur) / denom < config.plateau_threshold) {
                stop_reason = "plateau";
                break;
            }
        }
    }

    model.meta.iterations = model.layer_count();
    model.meta.error_history = std::move(state.error_history);
    model.meta.final_total_error = model.meta.error_history.back();
    model.meta.correction_sets = std::move(state.correction_sets);
    model.meta.stop_reason = stop_reason;
    return model;
}

ClassifierModel train_pipeline(const IngestResult& ingest, const TrainConfig& config) {
    Normalizer norm = fit_normalizer(ingest.data);
    NumericDataset normalized = normalize(ingest.data, norm);
    ClassifierModel model = train(normalized, ingest.codec, config);
    model.normalizer = norm;
    model.nominal = ingest.nominal;
    return model;
}

}  // namespace oscerr
