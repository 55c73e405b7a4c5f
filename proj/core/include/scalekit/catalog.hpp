#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scalekit/maxent.hpp"

namespace scalekit {

using ParamMap = std::map<std::string, double>;

struct ParamSpec {
    std::string name;
    std::string domain_text;
    std::optional<double> default_value;
};

/// One named distribution: a spec recipe over the scale algebra plus the
/// closed-form density it must reproduce, with the parameter conversion
/// between the conventional published form and the internal (lambda, scale)
/// pair documented in `note`.
struct CatalogEntry {
    std::string name;
    std::string family;  // base-scale tag: Linear, Log(1), LinLog(1), ...
    std::string closed_form_text;
    std::string note;
    std::vector<ParamSpec> params;
    std::vector<ParamMap> test_settings;  // at least 3 in-domain settings
    std::function<void(const ParamMap&)> validate;
    std::function<DistributionSpec(const ParamMap&)> build;
    std::function<double(const ParamMap&, double)> closed_density;  // unnormalized
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // UnknownDistribution
std::vector<std::string> catalog_names();

/// Builds the fully bound spec after validating the parameters.
DistributionSpec instantiate(const std::string& name, const ParamMap& params);

struct VerificationReport {
    double max_pointwise_relerr = 0.0;
    bool pass = false;
    std::size_t points_checked = 0;
    double percentile_lo = 0.0;
    double percentile_hi = 0.0;
};

/// Normalizes both the recipe density and the closed form and compares them
/// pointwise on the 1st-99th percentile range.
VerificationReport verify_entry(const std::string& name, const ParamMap& params,
                                double tolerance = 1e-8, const GridOptions& options = {});

struct ConvergenceReport {
    std::vector<double> l1_distances;
    bool monotone_decreasing = false;
};

/// L1 distances between the normalized `from` density along the parameter
/// trajectory and the fixed `to` density.
ConvergenceReport limit_check(const std::string& name_from, const std::string& name_to,
                              const std::vector<ParamMap>& trajectory, const ParamMap& to_params,
                              const GridOptions& options = {});

/// Log-log slope of the unnormalized density over [y_lo, y_hi], fitted on
/// log-spaced samples. Power-law tails report their exponent here.
double tail_slope(const std::string& name, const ParamMap& params, double y_lo, double y_hi,
                  std::size_t points = 64);

/// L1 distance between two tabulated densities evaluated from their specs on
/// the union of both grids.
double l1_distance(const DistributionSpec& a, const DistributionSpec& b,
                   const GridOptions& options = {});

}  // namespace scalekit
