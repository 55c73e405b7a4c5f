#include "scalekit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "scalekit/transforms.hpp"

namespace scalekit {

double Rng::uniform() {
    // 53-bit mantissa uniform in (0, 1); zero is rejected so logs stay finite.
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) throw InvalidSpec("exponential rate must be positive");
    return -std::log(uniform()) / rate;
}

double Rng::normal() {
    if (have_spare_normal_) {
        have_spare_normal_ = false;
        return spare_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_normal_ = r * std::sin(angle);
    have_spare_normal_ = true;
    return r * std::cos(angle);
}

double Rng::cauchy() { return std::tan(M_PI * (uniform() - 0.5)); }

double Rng::gamma_shape(double k) {
    if (!(k > 0.0)) throw InvalidSpec("gamma shape must be positive");
    const double k_int = std::floor(k);
    double value = 0.0;
    if (k == k_int && k <= 64.0) {
        for (int i = 0; i < static_cast<int>(k_int); ++i) value += exponential(1.0);
        return value;
    }
    // Marsaglia-Tsang for fractional (or large) shapes; shapes below 1 are
    // boosted and corrected by the standard power-of-uniform factor.
    double shape = k;
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(uniform(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v;
    }
}

double Rng::pareto(double tail_gamma, double ymin) {
    if (!(tail_gamma > 0.0 && ymin > 0.0)) throw InvalidSpec("pareto needs gamma, ymin > 0");
    return ymin * std::pow(uniform(), -1.0 / tail_gamma);
}

std::vector<double> simulate(const ProcessSpec& spec) {
    if (spec.sample_count < 1000)
        throw InvalidSpec("sample_count must be at least 1000");
    Rng rng(spec.seed);
    std::vector<double> samples(spec.sample_count);

    switch (spec.kind) {
        case ProcessSpec::Kind::WaitingTimeKth: {
            if (spec.k < 1) throw InvalidSpec("waiting-time order k must be >= 1");
            for (double& s : samples) {
                double total = 0.0;
                for (int i = 0; i < spec.k; ++i) total += rng.exponential(spec.rate);
                s = total;
            }
            break;
        }
        case ProcessSpec::Kind::ProductOfPerturbations: {
            if (spec.n_factors < 1) throw InvalidSpec("need at least one factor");
            const double half_width =
                std::sqrt(3.0 / static_cast<double>(spec.n_factors));
            for (double& s : samples) {
                double log_product = 0.0;
                for (int i = 0; i < spec.n_factors; ++i)
                    log_product += half_width * (2.0 * rng.uniform() - 1.0);
                s = std::exp(log_product);
            }
            break;
        }
        case ProcessSpec::Kind::SampleMaximum: {
            if (spec.n_parent < 1) throw InvalidSpec("parent sample size must be >= 1");
            // Both parent families are decreasing transforms of a uniform,
            // so the maximum is the same transform of the minimum uniform;
            // one log/pow per replicate instead of n.
            for (double& s : samples) {
                double min_u = 1.0;
                for (std::size_t i = 0; i < spec.n_parent; ++i)
                    min_u = std::min(min_u, rng.uniform());
                s = spec.parent_power_tail ? std::pow(min_u, -1.0 / spec.tail_gamma)
                                           : -std::log(min_u);
            }
            break;
        }
        case ProcessSpec::Kind::StableSum: {
            if (spec.n_terms < 1) throw InvalidSpec("need at least one term");
            for (double& s : samples) {
                double total = 0.0;
                for (std::size_t i = 0; i < spec.n_terms; ++i) total += rng.cauchy();
                s = total / static_cast<double>(spec.n_terms);
            }
            break;
        }
        case ProcessSpec::Kind::SuperstatMixture: {
            for (double& s : samples) {
                const double rate =
                    rng.gamma_shape(spec.mixture_k) / spec.mixture_alpha;
                s = rng.exponential(rate);
            }
            break;
        }
    }
    return samples;
}

FitReport fit_against_prediction(std::span<const double> samples,
                                 const GridDistribution& predicted, double alpha_constant) {
    if (samples.size() < 1000) throw InvalidSpec("KS fit needs at least 1000 samples");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const auto cdf_values = predicted.cdf();
    const auto& grid = predicted.grid;
    auto cdf_at = [&](double y) {
        if (y <= grid.front()) return 0.0;
        if (y >= grid.back()) return 1.0;
        const auto it = std::upper_bound(grid.begin(), grid.end(), y);
        const std::size_t j = it - grid.begin();
        const double t = (y - grid[j - 1]) / (grid[j] - grid[j - 1]);
        return cdf_values[j - 1] + t * (cdf_values[j] - cdf_values[j - 1]);
    };

    const double n = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf_at(sorted[i]);
        const double upper = (static_cast<double>(i) + 1.0) / n - f;
        const double lower = f - static_cast<double>(i) / n;
        ks = std::max({ks, upper, lower});
    }

    FitReport report;
    report.ks_statistic = ks;
    report.sample_count = sorted.size();
    report.threshold = alpha_constant / std::sqrt(n);
    report.pass = ks < report.threshold;
    return report;
}

namespace {

GridDistribution build_predicted(const std::string& name, std::size_t points) {
    GridOptions options;
    options.points = points;
    if (name == "waiting_time_gamma")
        return normalize(instantiate("gamma", {{"k", 3.0}, {"alpha", 1.0}}), options);
    if (name == "product_lognormal")
        return normalize(instantiate("log_normal", {{"lambda", 0.5}, {"mu", 0.0}}), options);
    if (name == "maxima_gumbel")
        return normalize(instantiate("gumbel", {{"lambda", 1.0}, {"beta", 1.0}}), options);
    if (name == "maxima_frechet")
        return normalize(instantiate("frechet_weibull", {{"lambda", 1.0}, {"beta", -2.0}}),
                         options);
    if (name == "stable_sum_cauchy")
        return normalize(instantiate("generalized_students", {{"k", 1.0}, {"alpha", 1.0}}),
                         options);
    if (name == "superstat_lomax") {
        const auto rates =
            normalize(instantiate("gamma", {{"k", 2.0}, {"alpha", 1.0}}), options);
        return superstatistics_mix(rates, points);
    }
    throw UnknownScenario("no scenario named '" + name + "'");
}

const GridDistribution& predicted_for(const std::string& name, std::size_t points) {
    static std::map<std::string, GridDistribution> cache;
    const std::string key = name + "/" + std::to_string(points);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_predicted(name, points)).first;
    return it->second;
}

ProcessSpec process_for(const std::string& name, std::size_t sample_count, std::uint64_t seed) {
    ProcessSpec spec;
    spec.sample_count = sample_count;
    spec.seed = seed;
    if (name == "waiting_time_gamma") {
        spec.kind = ProcessSpec::Kind::WaitingTimeKth;
        spec.k = 3;
        spec.rate = 1.0;
    } else if (name == "product_lognormal") {
        spec.kind = ProcessSpec::Kind::ProductOfPerturbations;
        spec.n_factors = 50;
    } else if (name == "maxima_gumbel") {
        spec.kind = ProcessSpec::Kind::SampleMaximum;
        spec.n_parent = 1000;
        spec.parent_power_tail = false;
    } else if (name == "maxima_frechet") {
        spec.kind = ProcessSpec::Kind::SampleMaximum;
        spec.n_parent = 1000;
        spec.parent_power_tail = true;
        spec.tail_gamma = 2.0;
    } else if (name == "stable_sum_cauchy") {
        spec.kind = ProcessSpec::Kind::StableSum;
        spec.n_terms = 1000;
    } else if (name == "superstat_lomax") {
        spec.kind = ProcessSpec::Kind::SuperstatMixture;
        spec.mixture_k = 2.0;
        spec.mixture_alpha = 1.0;
    } else {
        throw UnknownScenario("no scenario named '" + name + "'");
    }
    return spec;
}

// Sample maxima are standardized by the documented sequences before the fit:
// z = max - log(n) for exponential parents, z = max / n^(1/gamma) for
// power-law parents.
void standardize(const std::string& name, const ProcessSpec& spec, std::vector<double>& samples) {
    if (name == "maxima_gumbel") {
        const double shift = std::log(static_cast<double>(spec.n_parent));
        for (double& s : samples) s -= shift;
    } else if (name == "maxima_frechet") {
        const double scale =
            std::pow(static_cast<double>(spec.n_parent), 1.0 / spec.tail_gamma);
        for (double& s : samples) s /= scale;
    }
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> list = {
        {"waiting_time_gamma",
         "waiting time for the 3rd unit-rate event; log-linear scaling, gamma(3,1) predicted",
         "exponential",
         {{"lambda", 1.0}}},
        {"product_lognormal",
         "product of 50 positive factors with log-variance 1/50; Gaussian dissipation on the "
         "log scale, log-normal predicted",
         "gamma",
         {{"k", 3.0}, {"alpha", 1.0}}},
        {"maxima_gumbel",
         "maximum of 1000 unit-exponential draws shifted by log(1000); exponential tail scale, "
         "Gumbel predicted",
         "gauss",
         {{"lambda", 0.5}}},
        {"maxima_frechet",
         "maximum of 1000 Pareto(gamma=2) draws rescaled by sqrt(1000); power-law tail scale, "
         "Frechet predicted",
         "exponential",
         {{"lambda", 1.0}}},
        {"stable_sum_cauchy",
         "mean of 1000 Cauchy perturbations; stable under averaging, Cauchy predicted",
         "gauss",
         {{"lambda", 0.5}}},
        {"superstat_lomax",
         "exponential draws whose rate is gamma(2,1)-distributed; mixing over the rate gives "
         "the Lomax mixture",
         "exponential",
         {{"lambda", 1.0}}},
    };
    return list;
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& s : scenarios()) names.push_back(s.name);
    return names;
}

std::vector<double> scenario_samples(const std::string& name, std::size_t sample_count,
                                     std::uint64_t seed) {
    const ProcessSpec spec = process_for(name, sample_count, seed);
    std::vector<double> samples = simulate(spec);
    standardize(name, spec, samples);
    return samples;
}

const GridDistribution& scenario_prediction(const std::string& name) {
    return predicted_for(name, 8192);
}

FitReport run_scenario(const std::string& name, std::size_t sample_count, std::uint64_t seed) {
    const std::vector<double> samples = scenario_samples(name, sample_count, seed);
    FitReport report = fit_against_prediction(samples, scenario_prediction(name));
    report.predicted = name;
    return report;
}

FitReport run_scenario_mismatch(const std::string& name, std::size_t sample_count,
                                std::uint64_t seed) {
    const Scenario* scenario = nullptr;
    for (const auto& s : scenarios())
        if (s.name == name) scenario = &s;
    if (scenario == nullptr) throw UnknownScenario("no scenario named '" + name + "'");

    const ProcessSpec spec = process_for(name, sample_count, seed);
    std::vector<double> samples = simulate(spec);
    standardize(name, spec, samples);
    GridOptions options;
    options.points = 8192;
    const GridDistribution wrong =
        normalize(instantiate(scenario->mismatch_entry, scenario->mismatch_params), options);
    FitReport report = fit_against_prediction(samples, wrong);
    report.predicted = scenario->mismatch_entry + " (deliberate mismatch)";
    return report;
}

double maxima_gumbel_ks(std::size_t n_parent, std::size_t replicates, std::uint64_t seed) {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::SampleMaximum;
    spec.n_parent = n_parent;
    spec.sample_count = replicates;
    spec.seed = seed;
    std::vector<double> samples = simulate(spec);
    const double shift = std::log(static_cast<double>(n_parent));
    for (double& s : samples) s -= shift;
    static const GridDistribution gumbel = [] {
        GridOptions options;
        options.points = 8192;
        return normalize(instantiate("gumbel", {{"lambda", 1.0}, {"beta", 1.0}}), options);
    }();
    return fit_against_prediction(samples, gumbel).ks_statistic;
}

}  // namespace scalekit
