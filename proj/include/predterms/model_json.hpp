#pragma once

#include <string>

#include "predterms/model.hpp"

namespace predterms {

/// JSON document for a fitted model. Round trips losslessly: numbers are
/// written with enough digits to reproduce the exact double.
std::string save_model(const FittedModel& m);
FittedModel load_model(const std::string& json_text);

void save_model_file(const FittedModel& m, const std::string& path);
FittedModel load_model_file(const std::string& path);

}  // namespace predterms
