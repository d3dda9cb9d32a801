#include "oscerr/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oscerr/error.hpp"

namespace oscerr {

namespace {

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "oscerr-model";

using json = nlohmann::json;

json hex_array(const std::vector<double>& values) {
    json a = json::array();
    for (double v : values) a.push_back(double_to_hex(v));
    return a;
}

std::vector<double> parse_hex_array(const json& a, const char* what) {
    if (!a.is_array()) raise(Status::format_error, std::string(what) + ": expected array");
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(hex_to_double(v.get<std::string>()));
    return out;
}

}  // namespace

std::string double_to_hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double hex_to_double(const std::string& text) {
    if (text.empty()) raise(Status::format_error, "empty real value");
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + text.size())
        raise(Status::format_error, "bad real value: '" + text + "'");
    return v;
}

std::string serialize_model(const ClassifierModel& model) {
    json j;
    j["format"] = kFormatName;
    j["version"] = kFormatVersion;
    j["variables"] = model.n;
    j["labels"] = model.codec.labels;
    j["output_values"] = hex_array(model.codec.output_values);
    j["gap"] = double_to_hex(model.codec.gap);

    json mins = json::array(), maxs = json::array();
    for (const auto& [lo, hi] : model.normalizer.min_max) {
        mins.push_back(double_to_hex(lo));
        maxs.push_back(double_to_hex(hi));
    }
    j["normalizer_min"] = mins;
    j["normalizer_max"] = maxs;

    json nominal = json::object();
    for (const auto& [col, values] : model.nominal.values_by_column)
        nominal[std::to_string(col)] = values;
    j["nominal"] = nominal;

    json layers = json::array();
    for (const auto& layer : model.layers) layers.push_back(hex_array(layer));
    j["layers"] = layers;

    j["iterations"] = model.meta.iterations;
    j["final_total_error"] = double_to_hex(model.meta.final_total_error);
    j["error_history"] = hex_array(model.meta.error_history);
    j["stop_reason"] = model.meta.stop_reason;
    json sets = json::array();
    for (const auto& per_category : model.meta.correction_sets) {
        json set = json::array();
        for (const auto& ec : per_category) set.push_back(hex_array(ec));
        sets.push_back(set);
    }
    j["correction_sets"] = sets;
    return j.dump(2) + "\n";
}

ClassifierModel deserialize_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(Status::format_error, std::string("model file: ") + e.what());
    }
    try {
        if (!j.contains("format") || j.at("format").get<std::string>() != kFormatName)
            raise(Status::format_error, "not a model file (bad format marker)");
        if (j.at("version").get<int>() != kFormatVersion)
            raise(Status::format_error,
                  "unsupported model format version " +
                      std::to_string(j.at("version").get<int>()));

        ClassifierModel model;
        model.n = j.at("variables").get<int>();
        model.codec.labels = j.at("labels").get<std::vector<std::string>>();
        model.codec.output_values = parse_hex_array(j.at("output_values"), "output_values");
        model.codec.gap = hex_to_double(j.at("gap").get<std::string>());
        if (model.codec.labels.size() != model.codec.output_values.size())
            raise(Status::format_error, "labels/output_values size mismatch");

        auto mins = parse_hex_array(j.at("normalizer_min"), "normalizer_min");
        auto maxs = parse_hex_array(j.at("normalizer_max"), "normalizer_max");
        if (mins.size() != maxs.size())
            raise(Status::format_error, "normalizer min/max size mismatch");
        if (!mins.empty() && mins.size() != static_cast<size_t>(model.n))
            raise(Status::format_error, "normalizer does not match variable count");
        for (size_t i = 0; i < mins.size(); ++i)
            model.normalizer.min_max.emplace_back(mins[i], maxs[i]);

        for (const auto& [key, values] : j.at("nominal").items())
            model.nominal.values_by_column[std::stoi(key)] =
                values.get<std::vector<std::string>>();

        for (const auto& layer : j.at("layers")) {
            auto ec = parse_hex_array(layer, "layer");
            if (ec.size() != static_cast<size_t>(model.n))
                raise(Status::format_error, "layer length does not match variable count");
            model.layers.push_back(std::move(ec));
        }
        if (model.layers.empty()) raise(Status::format_error, "model has no layers");

        model.meta.iterations = j.at("iterations").get<int>();
        model.meta.final_total_error =
            hex_to_double(j.at("final_total_error").get<std::string>());
        model.meta.error_history = parse_hex_array(j.at("error_history"), "error_history");
        model.meta.stop_reason = j.at("stop_reason").get<std::string>();
        for (const auto& set : j.at("correction_sets")) {
            std::vector<CorrectionLayer> per_category;
            for (const auto& ec : set)
                per_category.push_back(parse_hex_array(ec, "correction_sets"));
            model.meta.correction_sets.push_back(std::move(per_category));
        }
        return model;
    } catch (const json::exception& e) {
        raise(Status::format_error, std::string("model file: ") + e.what());
    }
}

void save_model(const ClassifierModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Status::io_error, "cannot open for writing: " + path);
    out << serialize_model(model);
    if (!out) raise(Status::io_error, "write failed: " + path);
}

ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Status::io_error, "cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

}  // namespace oscerr
