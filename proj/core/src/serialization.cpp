#include "scalekit/serialization.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace scalekit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("malformed JSON: " + what); }

double number_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) bad(std::string("missing number '") + key + "'");
    return j[key].get<double>();
}

}  // namespace

Json scale_expr_to_json(const ScaleExpr& expr) {
    switch (expr.node_kind()) {
        case ScaleExpr::NodeKind::Linear:
            return Json("linear");
        case ScaleExpr::NodeKind::LogDeform:
            return Json{{"logdeform",
                         {{"c", expr.log_offset()}, {"inner", scale_expr_to_json(expr.inner())}}}};
        case ScaleExpr::NodeKind::LinearCombination: {
            Json terms = Json::array();
            for (const auto& [coef, inner] : expr.terms())
                terms.push_back({{"coef", coef}, {"inner", scale_expr_to_json(inner)}});
            return Json{{"lincomb", {{"terms", terms}}}};
        }
        case ScaleExpr::NodeKind::Power:
            return Json{{"power",
                         {{"exponent", expr.exponent()},
                          {"inner", scale_expr_to_json(expr.inner())}}}};
    }
    bad("unknown scale node");
}

ScaleExpr scale_expr_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "linear") return ScaleExpr::linear();
        bad("unknown scale atom '" + j.get<std::string>() + "'");
    }
    if (!j.is_object() || j.size() != 1) bad("scale node must be 'linear' or a one-key object");
    if (j.contains("logdeform")) {
        const Json& node = j["logdeform"];
        return ScaleExpr::log_deform(number_field(node, "c"),
                                     scale_expr_from_json(node.at("inner")));
    }
    if (j.contains("lincomb")) {
        const Json& node = j["lincomb"];
        if (!node.contains("terms") || !node["terms"].is_array()) bad("lincomb needs terms[]");
        std::vector<std::pair<double, ScaleExpr>> terms;
        for (const Json& term : node["terms"])
            terms.emplace_back(number_field(term, "coef"),
                               scale_expr_from_json(term.at("inner")));
        return ScaleExpr::linear_combination(std::move(terms));
    }
    if (j.contains("power")) {
        const Json& node = j["power"];
        return ScaleExpr::power(number_field(node, "exponent"),
                                scale_expr_from_json(node.at("inner")));
    }
    bad("unknown scale node type");
}

Json observable_to_json(const ObservableMap& obs) {
    switch (obs.kind()) {
        case ObservableMap::Kind::Identity:
            return Json("identity");
        case ObservableMap::Kind::AbsoluteValue:
            return Json("absolute_value");
        case ObservableMap::Kind::LogOfValue:
            return Json("log_of_value");
        case ObservableMap::Kind::SquaredDeviation:
            return Json{{"squared_deviation", {{"center", obs.center()}}}};
    }
    bad("unknown observable kind");
}

ObservableMap observable_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "identity") return ObservableMap::identity();
        if (s == "absolute_value") return ObservableMap::absolute_value();
        if (s == "log_of_value") return ObservableMap::log_of_value();
        bad("unknown observable '" + s + "'");
    }
    if (j.is_object() && j.contains("squared_deviation"))
        return ObservableMap::squared_deviation(number_field(j["squared_deviation"], "center"));
    bad("unknown observable");
}

Json measurement_scale_to_json(const MeasurementScale& scale) {
    return Json{{"base", scale_expr_to_json(scale.base())},
                {"beta", scale.beta()},
                {"mode", scale.mode() == MeasurementScale::Mode::AffineLimit
                             ? "affine_limit"
                             : "exponential_wrap"}};
}

MeasurementScale measurement_scale_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("base") || !j.contains("mode"))
        bad("measurement scale needs base and mode");
    ScaleExpr base = scale_expr_from_json(j.at("base"));
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "affine_limit") return MeasurementScale::affine_limit(std::move(base));
    if (mode == "exponential_wrap")
        return MeasurementScale::exponential_wrap(std::move(base), number_field(j, "beta"));
    bad("unknown scale mode '" + mode + "'");
}

Json transform_to_json(const Transform& t) {
    switch (t.kind()) {
        case Transform::Kind::Shift:
            return Json{{"shift", {{"delta", t.delta()}}}};
        case Transform::Kind::Affine:
            return Json{{"affine", {{"delta", t.delta()}, {"theta", t.theta()}}}};
        case Transform::Kind::PowerLaw:
            return Json{{"powerlaw", {{"c", t.coefficient()}, {"gamma", t.gamma()}}}};
    }
    bad("unknown transform kind");
}

Transform transform_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1) bad("transform must be a one-key object");
    if (j.contains("shift")) return Transform::shift(number_field(j["shift"], "delta"));
    if (j.contains("affine"))
        return Transform::affine(number_field(j["affine"], "delta"),
                                 number_field(j["affine"], "theta"));
    if (j.contains("powerlaw"))
        return Transform::power_law(number_field(j["powerlaw"], "c"),
                                    number_field(j["powerlaw"], "gamma"));
    bad("unknown transform type");
}

Json interval_to_json(const Interval& iv) {
    Json j;
    if (iv.lo_finite())
        j["lo"] = iv.lo;
    else
        j["lo"] = "-inf";
    if (iv.hi_finite())
        j["hi"] = iv.hi;
    else
        j["hi"] = "inf";
    return j;
}

Interval interval_from_json(const Json& j) {
    Interval iv;
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        bad("interval needs lo and hi");
    if (j["lo"].is_number())
        iv.lo = j["lo"].get<double>();
    else if (j["lo"].is_string() && j["lo"].get<std::string>() == "-inf")
        iv.lo = -std::numeric_limits<double>::infinity();
    else
        bad("interval lo must be a number or \"-inf\"");
    if (j["hi"].is_number())
        iv.hi = j["hi"].get<double>();
    else if (j["hi"].is_string() && j["hi"].get<std::string>() == "inf")
        iv.hi = std::numeric_limits<double>::infinity();
    else
        bad("interval hi must be a number or \"inf\"");
    return iv;
}

Json distribution_spec_to_json(const DistributionSpec& spec) {
    Json j{{"scale", measurement_scale_to_json(spec.scale)},
           {"observable", observable_to_json(spec.observable)},
           {"lambda", spec.lambda},
           {"support", interval_to_json(spec.support)}};
    switch (spec.measure) {
        case MeasureAdjustment::Unit:
            j["measure"] = "unit";
            break;
        case MeasureAdjustment::ScaleDerivative:
            j["measure"] = "scale_derivative";
            break;
        case MeasureAdjustment::ChangeOfVariable:
            j["measure"] =
                Json{{"change_of_variable", {{"g", scale_expr_to_json(*spec.change_map)}}}};
            break;
    }
    return j;
}

DistributionSpec distribution_spec_from_json(const Json& j) {
    if (!j.is_object()) bad("spec must be an object");
    MeasurementScale scale = measurement_scale_from_json(j.at("scale"));
    ObservableMap obs = observable_from_json(j.at("observable"));
    const double lambda = number_field(j, "lambda");
    Interval support = interval_from_json(j.at("support"));

    MeasureAdjustment measure = MeasureAdjustment::Unit;
    std::optional<ScaleExpr> change;
    if (j.contains("measure")) {
        const Json& m = j["measure"];
        if (m.is_string()) {
            const std::string s = m.get<std::string>();
            if (s == "unit")
                measure = MeasureAdjustment::Unit;
            else if (s == "scale_derivative")
                measure = MeasureAdjustment::ScaleDerivative;
            else
                bad("unknown measure '" + s + "'");
        } else if (m.is_object() && m.contains("change_of_variable")) {
            measure = MeasureAdjustment::ChangeOfVariable;
            change = scale_expr_from_json(m["change_of_variable"].at("g"));
        } else {
            bad("unknown measure");
        }
    }
    return DistributionSpec(std::move(scale), obs, lambda, support, measure, std::move(change));
}

Json grid_distribution_to_json(const GridDistribution& dist) {
    return Json{{"grid", dist.grid},
                {"density", dist.density},
                {"psi", dist.normalization_constant},
                {"quadrature_error", dist.quadrature_error}};
}

GridDistribution grid_distribution_from_json(const Json& j) {
    GridDistribution dist;
    if (!j.is_object() || !j.contains("grid") || !j.contains("density"))
        bad("grid distribution needs grid[] and density[]");
    dist.grid = j["grid"].get<std::vector<double>>();
    dist.density = j["density"].get<std::vector<double>>();
    if (dist.grid.size() != dist.density.size() || dist.grid.size() < 2)
        bad("grid and density must be matched arrays of length >= 2");
    if (!std::is_sorted(dist.grid.begin(), dist.grid.end()))
        bad("grid must be increasing");
    dist.normalization_constant = j.value("psi", 1.0);
    dist.quadrature_error = j.value("quadrature_error", 0.0);
    return dist;
}

}  // namespace scalekit
