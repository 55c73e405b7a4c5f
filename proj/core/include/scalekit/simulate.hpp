#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scalekit/catalog.hpp"
#include "scalekit/maxent.hpp"

namespace scalekit {

/// Reproducible random source. The generator identity is part of the
/// contract: std::mt19937_64 (whose output sequence is fixed by the C++
/// standard) with explicitly coded samplers, so streams are byte-identical
/// across platforms and builds:
///   uniform      (x >> 11) * 2^-53, zero rejected
///   exponential  -log(u)/rate
///   normal       Box-Muller, cosine branch first
///   cauchy       tan(pi*(u - 1/2))
///   gamma        sum of exponentials for integer k,
///                Marsaglia-Tsang squeeze for fractional k
///   pareto       ymin * u^(-1/gamma)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double exponential(double rate);
    double normal();
    double cauchy();
    double gamma_shape(double k);
    double pareto(double tail_gamma, double ymin);

private:
    std::mt19937_64 engine_;
    bool have_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

struct ProcessSpec {
    enum class Kind {
        WaitingTimeKth,         // sum of k exponential(rate) waits
        ProductOfPerturbations,  // product of n positive factors
        SampleMaximum,           // max of n parent draws, standardized later
        StableSum,               // mean of n heavy-tailed perturbations
        SuperstatMixture         // exponential draw with a random rate
    };

    Kind kind = Kind::WaitingTimeKth;
    std::size_t sample_count = 100000;
    std::uint64_t seed = 42;

    // WaitingTimeKth
    int k = 1;
    double rate = 1.0;
    // ProductOfPerturbations: factors exp(U) with U uniform on
    // [-sqrt(3)*sigma, sqrt(3)*sigma], sigma^2 = 1/n_factors.
    int n_factors = 50;
    // SampleMaximum
    std::size_t n_parent = 1000;
    bool parent_power_tail = false;  // false: exponential(1); true: Pareto
    double tail_gamma = 2.0;         // Pareto tail exponent for power parents
    // StableSum
    std::size_t n_terms = 1000;
    // SuperstatMixture: rate ~ gamma(mixture_k, mixture_alpha)
    double mixture_k = 2.0;
    double mixture_alpha = 1.0;
};

/// Draws sample_count values; byte-identical streams for identical specs.
std::vector<double> simulate(const ProcessSpec& spec);

struct FitReport {
    double ks_statistic = 0.0;
    std::size_t sample_count = 0;
    double threshold = 0.0;
    bool pass = false;
    std::string predicted;
};

/// Exact one-sample Kolmogorov-Smirnov statistic against the CDF obtained by
/// cumulative quadrature of the predicted grid density. pass iff
/// ks < alpha_constant/sqrt(n) (default 1.63, asymptotic alpha ~ 0.01).
FitReport fit_against_prediction(std::span<const double> samples,
                                 const GridDistribution& predicted,
                                 double alpha_constant = 1.63);

struct Scenario {
    std::string name;
    std::string story;
    std::string mismatch_entry;  // deliberately wrong catalog prediction
    ParamMap mismatch_params;
};

const std::vector<Scenario>& scenarios();
std::vector<std::string> scenario_names();

/// Builds the named scenario with its documented defaults, simulates,
/// standardizes (sample maxima), and fits against the predicted density.
FitReport run_scenario(const std::string& name, std::size_t sample_count = 100000,
                       std::uint64_t seed = 42);

/// The standardized sample stream of a scenario (what the KS fit sees).
std::vector<double> scenario_samples(const std::string& name, std::size_t sample_count,
                                     std::uint64_t seed);

/// The scenario's predicted density (cached).
const GridDistribution& scenario_prediction(const std::string& name);

/// Same samples fitted against the scenario's documented wrong prediction;
/// the KS test must fail.
FitReport run_scenario_mismatch(const std::string& name, std::size_t sample_count = 100000,
                                std::uint64_t seed = 42);

/// KS statistic of the standardized maximum of n_parent exponential draws
/// against the predicted extreme-value law, for convergence studies.
double maxima_gumbel_ks(std::size_t n_parent, std::size_t replicates, std::uint64_t seed);

}  // namespace scalekit
