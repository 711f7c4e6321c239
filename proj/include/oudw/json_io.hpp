#pragma once

#include <json.hpp>

#include "oudw/dw_test.hpp"
#include "oudw/estimators.hpp"
#include "oudw/harness.hpp"

namespace oudw {

/// JSON views of the public result types. Every document carries a
/// spec_version field so downstream consumers can detect schema drift.
nlohmann::json to_json(const EstimationResult& r);
nlohmann::json to_json(const TestOutcome& t);
nlohmann::json to_json(const ExperimentSummary& s);

}  // namespace oudw
