#pragma once

// Versioned, human-readable model persistence. Reals are stored as
// hexadecimal float text so that serialize/deserialize round-trips are
// lossless and repeated runs produce byte-identical files.

#include <string>

#include "oscerr/trainer.hpp"

namespace oscerr {

std::string double_to_hex(double v);
double hex_to_double(const std::string& text);

std::string serialize_model(const ClassifierModel& model);
ClassifierModel deserialize_model(const std::string& text);

void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

}  // namespace oscerr
