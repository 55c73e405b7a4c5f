#include "scalekit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scalekit/quadrature.hpp"

namespace scalekit {

namespace {

double get(const ParamMap& params, const CatalogEntry& entry, const std::string& name) {
    if (auto it = params.find(name); it != params.end()) return it->second;
    for (const auto& p : entry.params)
        if (p.name == name && p.default_value) return *p.default_value;
    throw ParameterOutOfDomain(entry.name + ": missing parameter '" + name + "'");
}

void require(bool ok, const std::string& entry, const std::string& what) {
    if (!ok) throw ParameterOutOfDomain(entry + ": " + what);
}

void reject_unknown(const ParamMap& params, const CatalogEntry& entry) {
    for (const auto& [key, _] : params) {
        const bool known = std::any_of(entry.params.begin(), entry.params.end(),
                                       [&](const ParamSpec& p) { return p.name == key; });
        if (!known)
            throw ParameterOutOfDomain(entry.name + ": unknown parameter '" + key + "'");
    }
}

ScaleExpr lin() { return ScaleExpr::linear(); }
ScaleExpr log_y() { return ScaleExpr::log_deform(0.0, lin()); }
ScaleExpr log_log_y() { return ScaleExpr::log_deform(0.0, log_y()); }
ScaleExpr combo(std::vector<std::pair<double, ScaleExpr>> terms) {
    return ScaleExpr::linear_combination(std::move(terms));
}
ScaleExpr negated(ScaleExpr e) { return combo({{-1.0, std::move(e)}}); }
ScaleExpr affine_of_y(double shift, double coef) {
    // coef*y + shift with the shift encoded as log(exp(shift) + 0).
    if (shift == 0.0) return coef == 1.0 ? lin() : combo({{coef, lin()}});
    return combo({{coef, lin()}, {1.0, ScaleExpr::constant(shift)}});
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> entries;

    auto add = [&entries](CatalogEntry e) { entries.push_back(std::move(e)); };

    {
        CatalogEntry e;
        e.name = "exponential";
        e.family = "Linear";
        e.closed_form_text = "exp(-lambda*y)";
        e.note = "Gibbs/Boltzmann form; pure linear scaling of information, "
                 "affine-invariant limit of the exponential wrap.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}}, {{"lambda", 2.0}}, {{"lambda", 0.5}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(lin()),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::exp(-get(p, e, "lambda") * y);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "gauss";
        e.family = "Linear";
        e.closed_form_text = "exp(-lambda*(y-mu)^2)";
        e.note = "Normal distribution; linear scaling of squared deviations, "
                 "lambda = 1/(2 sigma^2).";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"mu", "any real", 0.0}};
        e.test_settings = {{{"lambda", 0.5}}, {{"lambda", 1.0}}, {{"lambda", 2.0}, {"mu", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(lin()),
                                    ObservableMap::squared_deviation(get(p, e, "mu")),
                                    get(p, e, "lambda"), Interval::whole_line());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double d = y - get(p, e, "mu");
            return std::exp(-get(p, e, "lambda") * d * d);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "gumbel";
        e.family = "Linear (exponential wrap)";
        e.closed_form_text =
            "exp(-beta*y - lambda*exp(-beta*y))   [orientation=1: exp(beta*y - lambda*exp(beta*y))]";
        e.note = "Extreme-value form on an exponential measurement scale with m = |T'|. "
                 "The wrap (exp(beta*w)-1)/beta is affine-equivalent to exp(beta*w), so the "
                 "internal multiplier is beta*lambda. orientation 0 decays to the right "
                 "(sample-maximum form); orientation 1 is the reflected variant.";
        e.params = {{"lambda", "lambda > 0", std::nullopt},
                    {"beta", "beta > 0", 1.0},
                    {"orientation", "0 or 1", 0.0}};
        e.test_settings = {{{"lambda", 1.0}, {"beta", 1.0}},
                           {{"lambda", 0.5}, {"beta", 1.0}},
                           {{"lambda", 2.0}, {"beta", 1.5}},
                           {{"lambda", 1.0}, {"beta", 1.0}, {"orientation", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "beta") > 0.0, e.name, "beta must be > 0");
            const double o = get(p, e, "orientation");
            require(o == 0.0 || o == 1.0, e.name, "orientation must be 0 or 1");
        };
        e.build = [e](const ParamMap& p) {
            const double beta = get(p, e, "beta");
            const bool table = get(p, e, "orientation") == 1.0;
            ScaleExpr base = table ? lin() : negated(lin());
            return DistributionSpec(MeasurementScale::exponential_wrap(std::move(base), beta),
                                    ObservableMap::identity(), beta * get(p, e, "lambda"),
                                    Interval::whole_line(), MeasureAdjustment::ScaleDerivative);
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double beta = get(p, e, "beta");
            const double lambda = get(p, e, "lambda");
            const double s = get(p, e, "orientation") == 1.0 ? 1.0 : -1.0;
            return std::exp(s * beta * y - lambda * std::exp(s * beta * y));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "rayleigh";
        e.family = "Linear";
        e.closed_form_text = "y*exp(-lambda*y^2)";
        e.note = "Squared-deviation observable with m = |T'| = 2y; equals gamma_gauss with "
                 "k = 2 and the frechet_weibull entry at beta = 2.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}}, {{"lambda", 0.5}}, {{"lambda", 3.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(lin()),
                                    ObservableMap::squared_deviation(0.0), get(p, e, "lambda"),
                                    Interval::positive(), MeasureAdjustment::ScaleDerivative);
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return y * std::exp(-get(p, e, "lambda") * y * y);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "log_normal";
        e.family = "Linear (log change of variable)";
        e.closed_form_text = "y^-1 * exp(-lambda*(log(y)-mu)^2)";
        e.note = "Gaussian dissipation on x = log(y) observed on the y scale; "
                 "m = |dx/dy| = 1/y.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"mu", "any real", 0.0}};
        e.test_settings = {{{"lambda", 0.5}}, {{"lambda", 1.0}}, {{"lambda", 2.0}, {"mu", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(lin()),
                                    ObservableMap::squared_deviation(get(p, e, "mu")),
                                    get(p, e, "lambda"), Interval::positive(),
                                    MeasureAdjustment::ChangeOfVariable, log_y());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double d = std::log(y) - get(p, e, "mu");
            return std::exp(-get(p, e, "lambda") * d * d) / y;
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "stretched_exponential";
        e.family = "Log(1)";
        e.closed_form_text = "exp(-lambda*y^beta)";
        e.note = "Exponential wrap of the log base scale: exp(beta*log y) = y^beta. "
                 "Internal multiplier beta*lambda; half-Gaussian at beta = 2.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"beta", "beta > 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}, {"beta", 1.0}},
                           {{"lambda", 1.0}, {"beta", 2.0}},
                           {{"lambda", 2.0}, {"beta", 0.5}},
                           {{"lambda", 1.0}, {"beta", 1.5}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "beta") > 0.0, e.name, "beta must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double beta = get(p, e, "beta");
            return DistributionSpec(MeasurementScale::exponential_wrap(log_y(), beta),
                                    ObservableMap::identity(), beta * get(p, e, "lambda"),
                                    Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::exp(-get(p, e, "lambda") * std::pow(y, get(p, e, "beta")));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "frechet_weibull";
        e.family = "Log(1)";
        e.closed_form_text = "y^(beta-1) * exp(-lambda*y^beta)";
        e.note = "Extreme-value family on the power scale with m = |T'|. beta > 0 is the "
                 "Weibull (minimum) orientation, beta < 0 the Frechet (maximum) orientation "
                 "with tail exponent beta - 1. Rayleigh at beta = 2.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"beta", "beta != 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}, {"beta", 2.0}},
                           {{"lambda", 2.0}, {"beta", 1.0}},
                           {{"lambda", 1.0}, {"beta", -2.0}},
                           {{"lambda", 0.5}, {"beta", -1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "beta") != 0.0, e.name, "beta must be nonzero");
        };
        e.build = [e](const ParamMap& p) {
            const double beta = get(p, e, "beta");
            ScaleExpr base = beta > 0.0 ? log_y() : negated(log_y());
            return DistributionSpec(
                MeasurementScale::exponential_wrap(std::move(base), std::fabs(beta)),
                ObservableMap::identity(), std::fabs(beta) * get(p, e, "lambda"),
                Interval::positive(), MeasureAdjustment::ScaleDerivative);
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double beta = get(p, e, "beta");
            return std::pow(y, beta - 1.0) *
                   std::exp(-get(p, e, "lambda") * std::pow(y, beta));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "pareto1";
        e.family = "Log(1)";
        e.closed_form_text = "y^-lambda on [ymin, inf)";
        e.note = "Pure logarithmic scaling in the affine limit; needs lambda > 1 and a "
                 "positive lower support bound to normalize.";
        e.params = {{"lambda", "lambda > 1", std::nullopt}, {"ymin", "ymin > 0", 1.0}};
        e.test_settings = {{{"lambda", 2.0}}, {{"lambda", 1.5}}, {{"lambda", 3.0}, {"ymin", 2.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 1.0, e.name, "lambda must be > 1");
            require(get(p, e, "ymin") > 0.0, e.name, "ymin must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(log_y()),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    {get(p, e, "ymin"), std::numeric_limits<double>::infinity()});
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(y, -get(p, e, "lambda"));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "log_frechet";
        e.family = "Log(2)";
        e.closed_form_text = "y^-1 * (log y)^(beta-1) * exp(-lambda*(log y)^beta)";
        e.note = "Frechet/Weibull family after y -> log y: m = |T'| = (log y)^(beta-1)/y. "
                 "beta < 0 gives the maximum (Frechet) orientation.";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"beta", "beta != 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}, {"beta", 2.0}},
                           {{"lambda", 2.0}, {"beta", 1.5}},
                           {{"lambda", 1.0}, {"beta", -1.0}},
                           {{"lambda", 1.0}, {"beta", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "beta") != 0.0, e.name, "beta must be nonzero");
        };
        e.build = [e](const ParamMap& p) {
            const double beta = get(p, e, "beta");
            ScaleExpr base = beta > 0.0 ? log_log_y() : negated(log_log_y());
            return DistributionSpec(
                MeasurementScale::exponential_wrap(std::move(base), std::fabs(beta)),
                ObservableMap::identity(), std::fabs(beta) * get(p, e, "lambda"),
                {1.0, std::numeric_limits<double>::infinity()},
                MeasureAdjustment::ScaleDerivative);
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double beta = get(p, e, "beta");
            const double t = std::log(y);
            return std::pow(t, beta - 1.0) * std::exp(-get(p, e, "lambda") * std::pow(t, beta)) /
                   y;
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "log2_stretched";
        e.family = "Log(2)";
        e.closed_form_text = "exp(-lambda*(log y)^beta)";
        e.note = "No established name: stretched exponential of the log observable. Requires "
                 "beta > 1 for an integrable upper tail on (1, inf).";
        e.params = {{"lambda", "lambda > 0", std::nullopt}, {"beta", "beta > 1", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}, {"beta", 2.0}},
                           {{"lambda", 2.0}, {"beta", 1.5}},
                           {{"lambda", 0.5}, {"beta", 3.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "beta") > 1.0, e.name, "beta must be > 1 for normalizability");
        };
        e.build = [e](const ParamMap& p) {
            const double beta = get(p, e, "beta");
            return DistributionSpec(MeasurementScale::exponential_wrap(log_log_y(), beta),
                                    ObservableMap::identity(), beta * get(p, e, "lambda"),
                                    {1.0, std::numeric_limits<double>::infinity()});
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::exp(-get(p, e, "lambda") * std::pow(std::log(y), get(p, e, "beta")));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "log_pareto1";
        e.family = "Log(2)";
        e.closed_form_text = "y^-1 * (log y)^-lambda on [ymin, inf), ymin > 1";
        e.note = "Pareto I after the change of variable x = log y, m = 1/y. "
                 "Needs lambda > 1 and ymin > 1 to normalize.";
        e.params = {{"lambda", "lambda > 1", std::nullopt},
                    {"ymin", "ymin > 1", std::exp(1.0)}};
        e.test_settings = {{{"lambda", 2.0}},
                           {{"lambda", 1.5}, {"ymin", 2.0}},
                           {{"lambda", 3.0}, {"ymin", 1.5}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 1.0, e.name, "lambda must be > 1");
            require(get(p, e, "ymin") > 1.0, e.name, "ymin must be > 1");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(log_y()),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    {get(p, e, "ymin"), std::numeric_limits<double>::infinity()},
                                    MeasureAdjustment::ChangeOfVariable, log_y());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(std::log(y), -get(p, e, "lambda")) / y;
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "log2_pareto";
        e.family = "Log(2)";
        e.closed_form_text = "(log y)^-lambda on [ymin, ymax]";
        e.note = "No established name: Pareto I with the log observable and unit measure. The "
                 "density decays slower than any power of y, so only bounded supports "
                 "normalize.";
        e.params = {{"lambda", "lambda > 0", std::nullopt},
                    {"ymin", "ymin > 1", 1.5},
                    {"ymax", "ymax > ymin", 20.0}};
        e.test_settings = {{{"lambda", 2.0}},
                           {{"lambda", 0.7}, {"ymin", std::exp(1.0)}, {"ymax", 10.0}},
                           {{"lambda", 1.0}, {"ymin", 2.0}, {"ymax", 100.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "ymin") > 1.0, e.name, "ymin must be > 1");
            require(get(p, e, "ymax") > get(p, e, "ymin"), e.name, "ymax must exceed ymin");
        };
        e.build = [e](const ParamMap& p) {
            return DistributionSpec(MeasurementScale::affine_limit(log_log_y()),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    {get(p, e, "ymin"), get(p, e, "ymax")});
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(std::log(y), -get(p, e, "lambda"));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "lomax";
        e.family = "LinLog(1)";
        e.closed_form_text = "(1 + y/alpha)^-k";
        e.note = "Pareto type II: linear-log scale log(1 + y/alpha) with multiplier k. "
                 "The shifted form (c1+y)^-lambda has c1 = alpha, lambda = k (proportional by "
                 "alpha^k). Needs k > 1 to normalize on (0, inf).";
        e.params = {{"k", "k > 1", std::nullopt}, {"alpha", "alpha > 0", std::nullopt}};
        e.test_settings = {{{"k", 2.0}, {"alpha", 1.0}},
                           {{"k", 3.0}, {"alpha", 2.0}},
                           {{"k", 1.5}, {"alpha", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "k") > 1.0, e.name, "k must be > 1 for normalizability");
            require(get(p, e, "alpha") > 0.0, e.name, "alpha must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double alpha = get(p, e, "alpha");
            ScaleExpr base = ScaleExpr::log_deform(1.0, combo({{1.0 / alpha, lin()}}));
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), get(p, e, "k"),
                                    Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(1.0 + y / get(p, e, "alpha"), -get(p, e, "k"));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "generalized_students";
        e.family = "LinLog(1)";
        e.closed_form_text = "(1 + y^2/alpha)^-k";
        e.note = "Pearson VII / q-Gaussian / Kappa: linear-log scale of squared "
                 "deviations. Cauchy at k = 1, alpha = 1; power-law tails with exponent "
                 "-2k; Gaussian limit as alpha -> inf with k/alpha fixed.";
        e.params = {{"k", "k > 1/2", std::nullopt}, {"alpha", "alpha > 0", std::nullopt}};
        e.test_settings = {{{"k", 1.0}, {"alpha", 1.0}},
                           {{"k", 2.0}, {"alpha", 1.0}},
                           {{"k", 1.5}, {"alpha", 3.0}},
                           {{"k", 5.0}, {"alpha", 10.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "k") > 0.5, e.name, "k must be > 1/2 for normalizability");
            require(get(p, e, "alpha") > 0.0, e.name, "alpha must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double alpha = get(p, e, "alpha");
            ScaleExpr base = ScaleExpr::log_deform(1.0, combo({{1.0 / alpha, lin()}}));
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::squared_deviation(0.0), get(p, e, "k"),
                                    Interval::whole_line());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(1.0 + y * y / get(p, e, "alpha"), -get(p, e, "k"));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "linlog2_pareto";
        e.family = "LinLog(2)";
        e.closed_form_text = "(log(c1 + y))^-lambda on [0, ymax]";
        e.note = "No established name: second linear-log recursion with the outer offset at 0. "
                 "Like log2_pareto the tail beats every power, so the support must be "
                 "bounded; c1 > 1 keeps the outer logarithm positive at y = 0.";
        e.params = {{"lambda", "lambda > 0", std::nullopt},
                    {"c1", "c1 > 1", std::nullopt},
                    {"ymax", "ymax > 0", std::nullopt}};
        e.test_settings = {{{"lambda", 2.0}, {"c1", 2.0}, {"ymax", 10.0}},
                           {{"lambda", 1.0}, {"c1", 1.5}, {"ymax", 5.0}},
                           {{"lambda", 0.5}, {"c1", 3.0}, {"ymax", 50.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "lambda") > 0.0, e.name, "lambda must be > 0");
            require(get(p, e, "c1") > 1.0, e.name, "c1 must be > 1");
            require(get(p, e, "ymax") > 0.0, e.name, "ymax must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            ScaleExpr base = ScaleExpr::log_deform(0.0, ScaleExpr::log_deform(get(p, e, "c1"), lin()));
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    {0.0, get(p, e, "ymax")});
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(std::log(get(p, e, "c1") + y), -get(p, e, "lambda"));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "gamma";
        e.family = "LogLin(1)";
        e.closed_form_text = "y^(k-1) * exp(-alpha*y)";
        e.note = "Pearson III, includes chi-square (k = n/2, alpha = 1/2). The log-linear "
                 "scale log(y) - b*y with b = alpha/(k-1) carries multiplier 1-k, so the "
                 "recipe folds the parameters into the base (1-k)*log(y) + alpha*y with "
                 "unit multiplier. The negative-exponent form y^-lambda e^(-c1*lambda*y) has lambda = 1-k, "
                 "c1*lambda = alpha.";
        e.params = {{"k", "k > 0", std::nullopt}, {"alpha", "alpha > 0", std::nullopt}};
        e.test_settings = {{{"k", 2.0}, {"alpha", 1.0}},
                           {{"k", 1.0}, {"alpha", 2.0}},
                           {{"k", 3.0}, {"alpha", 0.5}},
                           {{"k", 0.5}, {"alpha", 1.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "k") > 0.0, e.name, "k must be > 0");
            require(get(p, e, "alpha") > 0.0, e.name, "alpha must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double k = get(p, e, "k");
            const double alpha = get(p, e, "alpha");
            ScaleExpr base = combo({{1.0 - k, log_y()}, {alpha, lin()}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), 1.0, Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(y, get(p, e, "k") - 1.0) * std::exp(-get(p, e, "alpha") * y);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "gamma_gauss";
        e.family = "LogLin(1)";
        e.closed_form_text = "y^(k-1) * exp(-alpha*y^2)";
        e.note = "Log-linear scale of squared deviations: gamma body with Gaussian tail. "
                 "Rayleigh at k = 2 (lambda = -1 in the negative-exponent form). Base uses log(y) = log(y^2)/2 so "
                 "the whole scale is a function of the squared observable.";
        e.params = {{"k", "k > 0", std::nullopt}, {"alpha", "alpha > 0", std::nullopt}};
        e.test_settings = {{{"k", 2.0}, {"alpha", 1.0}},
                           {{"k", 3.0}, {"alpha", 0.5}},
                           {{"k", 1.0}, {"alpha", 1.0}},
                           {{"k", 1.38}, {"alpha", 2.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "k") > 0.0, e.name, "k must be > 0");
            require(get(p, e, "alpha") > 0.0, e.name, "alpha must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double k = get(p, e, "k");
            const double alpha = get(p, e, "alpha");
            ScaleExpr base = combo({{(1.0 - k) / 2.0, log_y()}, {alpha, lin()}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::squared_deviation(0.0), 1.0,
                                    Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            return std::pow(y, get(p, e, "k") - 1.0) * std::exp(-get(p, e, "alpha") * y * y);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "generalized_gamma";
        e.family = "LogLin(1)";
        e.closed_form_text = "y^(gamma*k-1) * exp(-alpha*y^gamma)";
        e.note = "Gamma dissipation in x observed through the power change of variable "
                 "x = y^gamma with m = |gamma*y^(gamma-1)|. Chi at gamma = 2, alpha = 1/2, "
                 "k = n/2. The exponent written as -gamma*(lambda-1)-1 corresponds to lambda = 1-k.";
        e.params = {{"k", "k > 0", std::nullopt},
                    {"alpha", "alpha > 0", std::nullopt},
                    {"gamma", "gamma > 0", std::nullopt}};
        e.test_settings = {{{"k", 2.0}, {"alpha", 1.0}, {"gamma", 2.0}},
                           {{"k", 1.5}, {"alpha", 0.5}, {"gamma", 2.0}},
                           {{"k", 1.0}, {"alpha", 1.0}, {"gamma", 3.0}},
                           {{"k", 2.0}, {"alpha", 2.0}, {"gamma", 0.5}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "k") > 0.0, e.name, "k must be > 0");
            require(get(p, e, "alpha") > 0.0, e.name, "alpha must be > 0");
            require(get(p, e, "gamma") > 0.0, e.name, "gamma must be > 0");
        };
        e.build = [e](const ParamMap& p) {
            const double k = get(p, e, "k");
            const double alpha = get(p, e, "alpha");
            const double gamma = get(p, e, "gamma");
            ScaleExpr base = combo({{1.0 - k, log_y()}, {alpha, lin()}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), 1.0, Interval::positive(),
                                    MeasureAdjustment::ChangeOfVariable,
                                    ScaleExpr::power(gamma, lin()));
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double g = get(p, e, "gamma");
            return std::pow(y, g * get(p, e, "k") - 1.0) *
                   std::exp(-get(p, e, "alpha") * std::pow(y, g));
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "beta";
        e.family = "LogLinLog(1)";
        e.closed_form_text = "(c2-y)^-lambda * (y-c1)^(-b*lambda) on [c1, c2]";
        e.note = "Pearson I on a log-linear-log scale. The standard Beta(p, q) has "
                 "lambda = 1-q, b*lambda = 1-p. Endpoint exponents must exceed -1 "
                 "(lambda < 1 and b*lambda < 1), otherwise the endpoints are "
                 "non-integrable and the parameters are rejected.";
        e.params = {{"lambda", "lambda < 1", std::nullopt},
                    {"b", "b*lambda < 1", std::nullopt},
                    {"c1", "c1 < c2, |c1| <= 300", 0.0},
                    {"c2", "c2 > c1, |c2| <= 300", 1.0}};
        e.test_settings = {{{"lambda", -1.0}, {"b", 2.0}},
                           {{"lambda", 0.5}, {"b", 1.0}},
                           {{"lambda", -2.0}, {"b", 1.5}, {"c1", -1.0}, {"c2", 2.0}}};
        e.validate = [e](const ParamMap& p) {
            const double lambda = get(p, e, "lambda");
            const double b = get(p, e, "b");
            require(lambda < 1.0, e.name, "endpoint exponent -lambda must exceed -1");
            require(b * lambda < 1.0, e.name, "endpoint exponent -b*lambda must exceed -1");
            require(get(p, e, "c1") < get(p, e, "c2"), e.name, "requires c1 < c2");
            require(std::fabs(get(p, e, "c1")) <= 300.0 && std::fabs(get(p, e, "c2")) <= 300.0,
                    e.name, "bounds must lie within [-300, 300]");
        };
        e.build = [e](const ParamMap& p) {
            const double c1 = get(p, e, "c1");
            const double c2 = get(p, e, "c2");
            ScaleExpr upper = ScaleExpr::log_deform(0.0, affine_of_y(c2, -1.0));
            ScaleExpr lower = ScaleExpr::log_deform(0.0, affine_of_y(-c1, 1.0));
            ScaleExpr base = combo({{1.0, std::move(upper)}, {get(p, e, "b"), std::move(lower)}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    Interval::bounded(c1, c2));
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double lambda = get(p, e, "lambda");
            return std::pow(get(p, e, "c2") - y, -lambda) *
                   std::pow(y - get(p, e, "c1"), -get(p, e, "b") * lambda);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "beta_prime";
        e.family = "LogLinLog(1)";
        e.closed_form_text = "y^(-b*lambda) * (1+y)^((b+1)*lambda-2)";
        e.note = "Pearson VI / F family. It also arises from the bounded beta by "
                 "y -> y/(1+y) with m = (1+y)^-2; the recipe folds that Jacobian into the "
                 "scale exponents, so the measure stays unit. Needs lambda < 1, "
                 "b*lambda < 1 and lambda != 0.";
        e.params = {{"lambda", "lambda < 1, lambda != 0", std::nullopt},
                    {"b", "b*lambda < 1", std::nullopt}};
        e.test_settings = {{{"lambda", -2.0}, {"b", 1.0}},
                           {{"lambda", 0.5}, {"b", 0.5}},
                           {{"lambda", -1.0}, {"b", 2.0}}};
        e.validate = [e](const ParamMap& p) {
            const double lambda = get(p, e, "lambda");
            require(lambda < 1.0 && lambda != 0.0, e.name, "lambda must be < 1 and nonzero");
            require(get(p, e, "b") * lambda < 1.0, e.name, "b*lambda must be < 1");
        };
        e.build = [e](const ParamMap& p) {
            const double lambda = get(p, e, "lambda");
            const double b = get(p, e, "b");
            ScaleExpr base = combo({{b, log_y()},
                                    {-((b + 1.0) - 2.0 / lambda),
                                     ScaleExpr::log_deform(1.0, lin())}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), lambda, Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double lambda = get(p, e, "lambda");
            const double b = get(p, e, "b");
            return std::pow(y, -b * lambda) * std::pow(1.0 + y, (b + 1.0) * lambda - 2.0);
        };
        add(std::move(e));
    }

    {
        CatalogEntry e;
        e.name = "gamma_variant";
        e.family = "LinLogLin(1)";
        e.closed_form_text = "(c1+y)^(-b*lambda) * exp(-c2*lambda*y)";
        e.note = "Linear-log-linear scale b*log(c1+y) + c2*y. Requires c2*lambda > 0 for "
                 "an integrable tail; when c1 = 0 the origin also needs b*lambda < 1.";
        e.params = {{"lambda", "c2*lambda > 0", std::nullopt},
                    {"b", "any real (b*lambda < 1 when c1 = 0)", std::nullopt},
                    {"c1", "c1 >= 0", std::nullopt},
                    {"c2", "c2*lambda > 0", std::nullopt}};
        e.test_settings = {{{"lambda", 1.0}, {"b", 2.0}, {"c1", 1.0}, {"c2", 1.0}},
                           {{"lambda", 2.0}, {"b", -0.5}, {"c1", 3.0}, {"c2", 0.5}},
                           {{"lambda", 0.5}, {"b", 2.0}, {"c1", 1.0}, {"c2", 2.0}}};
        e.validate = [e](const ParamMap& p) {
            require(get(p, e, "c1") >= 0.0, e.name, "c1 must be >= 0");
            require(get(p, e, "c2") * get(p, e, "lambda") > 0.0, e.name,
                    "c2*lambda must be > 0 for an integrable tail");
            if (get(p, e, "c1") == 0.0)
                require(get(p, e, "b") * get(p, e, "lambda") < 1.0, e.name,
                        "b*lambda must be < 1 when c1 = 0");
        };
        e.build = [e](const ParamMap& p) {
            ScaleExpr base = combo({{get(p, e, "b"), ScaleExpr::log_deform(get(p, e, "c1"), lin())},
                                    {get(p, e, "c2"), lin()}});
            return DistributionSpec(MeasurementScale::affine_limit(std::move(base)),
                                    ObservableMap::identity(), get(p, e, "lambda"),
                                    Interval::positive());
        };
        e.closed_density = [e](const ParamMap& p, double y) {
            const double lambda = get(p, e, "lambda");
            return std::pow(get(p, e, "c1") + y, -get(p, e, "b") * lambda) *
                   std::exp(-get(p, e, "c2") * lambda * y);
        };
        add(std::move(e));
    }

    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw UnknownDistribution("no catalog entry named '" + name + "'");
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    names.reserve(catalog().size());
    for (const auto& e : catalog()) names.push_back(e.name);
    return names;
}

DistributionSpec instantiate(const std::string& name, const ParamMap& params) {
    const auto& entry = catalog_entry(name);
    reject_unknown(params, entry);
    entry.validate(params);
    return entry.build(params);
}

VerificationReport verify_entry(const std::string& name, const ParamMap& params,
                                double tolerance, const GridOptions& options) {
    const auto& entry = catalog_entry(name);
    reject_unknown(params, entry);
    entry.validate(params);
    const DistributionSpec spec = entry.build(params);
    const GridDistribution dist = normalize(spec, options);

    // Normalize the closed form independently, anchored near the recipe mass.
    auto closed = [&entry, &params, &spec](double y) {
        if (!spec.support.contains(y)) return 0.0;
        const double v = entry.closed_density(params, y);
        return std::isfinite(v) && v >= 0.0 ? v : 0.0;
    };
    const std::vector<double> anchors = {dist.quantile(0.1), dist.quantile(0.5),
                                         dist.quantile(0.9)};
    const auto closed_mass =
        detail::callable_mass_with_anchors(closed, spec.support, options.abs_tol, anchors);
    const double psi_closed = std::exp(-closed_mass.log_shift) / closed_mass.mass;

    VerificationReport report;
    report.percentile_lo = dist.quantile(0.01);
    report.percentile_hi = dist.quantile(0.99);
    for (std::size_t i = 0; i < dist.grid.size(); ++i) {
        const double y = dist.grid[i];
        if (y < report.percentile_lo || y > report.percentile_hi) continue;
        const double reference = psi_closed * closed(y);
        if (!(reference > 0.0)) continue;
        const double err = std::fabs(dist.density[i] - reference) / reference;
        report.max_pointwise_relerr = std::max(report.max_pointwise_relerr, err);
        ++report.points_checked;
    }
    report.pass = report.points_checked > 0 && report.max_pointwise_relerr < tolerance;
    return report;
}

double l1_distance(const DistributionSpec& a, const DistributionSpec& b,
                   const GridOptions& options) {
    const GridDistribution da = normalize(a, options);
    const GridDistribution db = normalize(b, options);

    std::vector<double> merged;
    merged.reserve(da.grid.size() + db.grid.size());
    merged.insert(merged.end(), da.grid.begin(), da.grid.end());
    merged.insert(merged.end(), db.grid.begin(), db.grid.end());
    std::sort(merged.begin(), merged.end());
    // Near-coincident nodes from the two grids would make the cubic rule
    // differentiate rounding noise; keep one representative per cluster.
    std::vector<double> grid;
    grid.reserve(merged.size());
    for (double y : merged) {
        if (!grid.empty()) {
            const double sep = std::max({std::fabs(y), std::fabs(grid.back()), 1e-300}) * 1e-11;
            if (y - grid.back() <= sep) continue;
        }
        grid.push_back(y);
    }

    std::vector<double> diff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid[i];
        const double pa = a.in_domain(y) ? da.normalization_constant * a.unnormalized(y) : 0.0;
        const double pb = b.in_domain(y) ? db.normalization_constant * b.unnormalized(y) : 0.0;
        diff[i] = std::fabs(pa - pb);
    }
    return integrate_tabulated(grid, diff);
}

ConvergenceReport limit_check(const std::string& name_from, const std::string& name_to,
                              const std::vector<ParamMap>& trajectory, const ParamMap& to_params,
                              const GridOptions& options) {
    const DistributionSpec target = instantiate(name_to, to_params);
    ConvergenceReport report;
    report.l1_distances.reserve(trajectory.size());
    for (const auto& params : trajectory) {
        const DistributionSpec from = instantiate(name_from, params);
        report.l1_distances.push_back(l1_distance(from, target, options));
    }
    report.monotone_decreasing =
        std::is_sorted(report.l1_distances.rbegin(), report.l1_distances.rend()) &&
        !report.l1_distances.empty();
    return report;
}

double tail_slope(const std::string& name, const ParamMap& params, double y_lo, double y_hi,
                  std::size_t points) {
    if (!(y_lo > 0.0 && y_hi > y_lo)) throw DomainError("tail window requires 0 < y_lo < y_hi");
    const DistributionSpec spec = instantiate(name, params);
    std::vector<double> lx, ly;
    lx.reserve(points);
    ly.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        const double y = std::exp(std::log(y_lo) + t * (std::log(y_hi) - std::log(y_lo)));
        if (!spec.in_domain(y)) continue;
        const double u = spec.unnormalized(y);
        if (!(u > 0.0)) continue;
        lx.push_back(std::log(y));
        ly.push_back(std::log(u));
    }
    if (lx.size() < 3) throw DomainError("tail window has too few usable points");
    return fit_line(lx, ly).slope;
}

}  // namespace scalekit
