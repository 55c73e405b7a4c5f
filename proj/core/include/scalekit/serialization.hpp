#pragma once

#include <nlohmann/json_fwd.hpp>

#include "scalekit/maxent.hpp"
#include "scalekit/scale_algebra.hpp"

// JSON wire formats used by the CLI and the file interfaces. The field
// names are part of the contract and documented in docs/formats.md.

namespace scalekit {

using Json = nlohmann::json;

Json scale_expr_to_json(const ScaleExpr& expr);
ScaleExpr scale_expr_from_json(const Json& j);

Json observable_to_json(const ObservableMap& obs);
ObservableMap observable_from_json(const Json& j);

Json measurement_scale_to_json(const MeasurementScale& scale);
MeasurementScale measurement_scale_from_json(const Json& j);

Json transform_to_json(const Transform& t);
Transform transform_from_json(const Json& j);

Json interval_to_json(const Interval& iv);
Interval interval_from_json(const Json& j);

Json distribution_spec_to_json(const DistributionSpec& spec);
DistributionSpec distribution_spec_from_json(const Json& j);

Json grid_distribution_to_json(const GridDistribution& dist);
GridDistribution grid_distribution_from_json(const Json& j);

}  // namespace scalekit
