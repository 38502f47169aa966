#pragma once

#include <string>

#include "predterms/model.hpp"

namespace predterms {

/// Parse {"column": value, ...} into a case record for `m`. Numbers may be
/// quoted; booleans map to TRUE/FALSE; level values are checked against the
/// model's level sets. Unknown, missing, or malformed entries throw
/// DataError / ModelError with the offending column names.
CaseValues parse_case_json(const std::string& text, const FittedModel& m);

}  // namespace predterms
