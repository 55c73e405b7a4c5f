#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "scalekit/maxent.hpp"
#include "scalekit/quadrature.hpp"

using namespace scalekit;

namespace {

ScaleExpr lin() { return ScaleExpr::linear(); }
ScaleExpr log_y() { return ScaleExpr::log_deform(0.0, lin()); }

DistributionSpec unit_exponential(double lambda = 1.0) {
    return DistributionSpec(MeasurementScale::affine_limit(lin()), ObservableMap::identity(),
                            lambda, Interval::positive());
}

DistributionSpec gaussian(double lambda = 0.5) {
    return DistributionSpec(MeasurementScale::affine_limit(lin()),
                            ObservableMap::squared_deviation(0.0), lambda,
                            Interval::whole_line());
}

// Independent dual-route oracle: solve the scalar mean equation for the
// exponential-family multiplier by bisection, then report exp(-lambda T)/Z.
std::vector<double> dual_bisection_maxent(const std::vector<double>& t, double target) {
    auto mean_at = [&](double lambda) {
        double z = 0.0, m = 0.0;
        double tmax = *std::max_element(t.begin(), t.end());
        for (double ti : t) {
            const double w = std::exp(-lambda * (ti - tmax));
            z += w;
            m += ti * w;
        }
        return m / z;
    };
    double lo = -1.0, hi = 1.0;
    while (mean_at(lo) < target) lo *= 2.0;
    while (mean_at(hi) > target) hi *= 2.0;
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mean_at(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    const double tmax = *std::max_element(t.begin(), t.end());
    std::vector<double> p(t.size());
    double z = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        p[i] = std::exp(-lambda * (t[i] - tmax));
        z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
}

}  // namespace

TEST_CASE("normalize: unit exponential") {
    const auto dist = normalize(unit_exponential());
    CHECK(dist.normalization_constant == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(dist.trapezoid_mass() - 1.0) <= 10.0 * dist.quadrature_error);
    CHECK(std::is_sorted(dist.grid.begin(), dist.grid.end()));
}

TEST_CASE("normalize: standard normal constant") {
    const auto dist = normalize(gaussian());
    CHECK(dist.normalization_constant ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-10));
}

TEST_CASE("normalize: pure power law diverges") {
    DistributionSpec power(MeasurementScale::affine_limit(log_y()), ObservableMap::identity(),
                           0.5, Interval::positive());
    CHECK_THROWS_AS(normalize(power), DivergentIntegral);
}

TEST_CASE("density values are exactly psi * u on the grid") {
    const auto spec = unit_exponential(2.0);
    const auto dist = normalize(spec);
    for (std::size_t i = 0; i < dist.grid.size(); i += 97) {
        CHECK(dist.density[i] ==
              doctest::Approx(dist.normalization_constant * spec.unnormalized(dist.grid[i]))
                  .epsilon(1e-15));
    }
}

TEST_CASE("explicit grids and placements") {
    GridOptions options;
    options.explicit_grid = {0.5, 1.0, 2.0, 4.0, 8.0};
    const auto dist = normalize(unit_exponential(), options);
    CHECK(dist.grid == options.explicit_grid);

    GridOptions uniform;
    uniform.placement = GridOptions::Placement::Uniform;
    uniform.points = 256;
    const auto du = normalize(unit_exponential(), uniform);
    CHECK(du.grid.size() == 256);
    const double h0 = du.grid[1] - du.grid[0];
    const double h1 = du.grid[200] - du.grid[199];
    CHECK(h0 == doctest::Approx(h1).epsilon(1e-9));
}

TEST_CASE("degenerate support is rejected at construction") {
    CHECK_THROWS_AS(DistributionSpec(MeasurementScale::affine_limit(lin()),
                                     ObservableMap::identity(), 1.0, Interval::bounded(2.0, 2.0)),
                    InvalidSpec);
}

TEST_CASE("solve_lambda on exponential and Gaussian templates") {
    CHECK(solve_lambda(unit_exponential(), {2.0, 1e-10}) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(solve_lambda(unit_exponential(), {1.0, 1e-10}) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(solve_lambda(gaussian(), {1.0, 1e-10}) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("solve_lambda: unattainable target raises NoBracket") {
    CHECK_THROWS_AS(solve_lambda(unit_exponential(), {-1.0, 1e-10}), NoBracket);
}

TEST_CASE("solve -> normalize -> mean round trip") {
    const Constraint constraint{3.0, 1e-9};
    const double lambda = solve_lambda(unit_exponential(), constraint);
    CHECK(std::fabs(mean_scale_value(unit_exponential(), lambda) - constraint.target_mean) <=
          constraint.tolerance);
}

TEST_CASE("the scale mean is strictly decreasing in lambda") {
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double mean = mean_scale_value(unit_exponential(), lambda);
        CHECK(mean < previous);
        previous = mean;
    }
}

TEST_CASE("entropy of landmark densities") {
    CHECK(entropy(normalize(unit_exponential())) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(entropy(normalize(gaussian())) ==
          doctest::Approx(0.5 * std::log(2.0 * M_PI * std::exp(1.0))).epsilon(1e-6));
}

TEST_CASE("entropy of gamma(2,1) against a refined quadrature oracle") {
    DistributionSpec gamma21(
        MeasurementScale::affine_limit(
            ScaleExpr::linear_combination({{-1.0, log_y()}, {1.0, lin()}})),
        ObservableMap::identity(), 1.0, Interval::positive());
    const double coarse = entropy(normalize(gamma21));
    GridOptions refined;
    refined.points = 40960;
    const double oracle = entropy(normalize(gamma21, refined));
    CHECK(std::fabs(coarse - oracle) < 1e-6);
    // Frozen from an independent high-precision computation (digamma form).
    CHECK(coarse == doctest::Approx(1.5772156649015329).epsilon(1e-6));
}

TEST_CASE("surprise profiles are exact lines in the scale value") {
    SUBCASE("unit exponential: slope 1, intercept 0") {
        const auto spec = unit_exponential();
        const auto profile = surprise_profile(normalize(spec), spec);
        std::vector<double> xs, ys;
        for (const auto& [t, s] : profile) {
            xs.push_back(t);
            ys.push_back(s);
        }
        const auto fit = fit_line(xs, ys);
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::fabs(fit.intercept) < 1e-10);
        CHECK(fit.max_residual < 1e-8);
    }
    SUBCASE("Gaussian: slope 1/2 against T = y^2") {
        const auto spec = gaussian();
        const auto profile = surprise_profile(normalize(spec), spec);
        std::vector<double> xs, ys;
        for (const auto& [t, s] : profile) {
            xs.push_back(t);
            ys.push_back(s);
        }
        const auto fit = fit_line(xs, ys);
        CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(fit.max_residual < 1e-8);
    }
    SUBCASE("gamma(2,1) on the log-linear scale: slope k-1") {
        // T = -log y + (alpha/(k-1)) y with multiplier k-1.
        const double k = 2.0, alpha = 1.0;
        const double b = alpha / (k - 1.0);
        DistributionSpec spec(
            MeasurementScale::affine_limit(
                ScaleExpr::linear_combination({{-1.0, log_y()}, {b, lin()}})),
            ObservableMap::identity(), k - 1.0, Interval::positive());
        const auto profile = surprise_profile(normalize(spec), spec);
        std::vector<double> xs, ys;
        for (const auto& [t, s] : profile) {
            xs.push_back(t);
            ys.push_back(s);
        }
        const auto fit = fit_line(xs, ys);
        CHECK(fit.slope == doctest::Approx(k - 1.0).epsilon(1e-10));
        CHECK(fit.max_residual < 1e-8);
    }
    SUBCASE("non-unit measures are rejected") {
        DistributionSpec rayleigh(MeasurementScale::affine_limit(lin()),
                                  ObservableMap::squared_deviation(0.0), 1.0,
                                  Interval::positive(), MeasureAdjustment::ScaleDerivative);
        const auto dist = normalize(rayleigh);
        CHECK_THROWS_AS(surprise_profile(dist, rayleigh), DomainError);
    }
}

TEST_CASE("discrete maxent oracle hits the closed cases") {
    const std::vector<double> two{0.0, 1.0};
    const auto half = discrete_maxent_oracle(two, 0.5);
    CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-10));

    const std::vector<double> three{0.0, 1.0, 2.0};
    const auto uniform = discrete_maxent_oracle(three, 1.0);
    for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    const auto skewed = discrete_maxent_oracle(three, 0.5);
    const auto oracle = dual_bisection_maxent(three, 0.5);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(skewed[i] - oracle[i]) < 1e-8);

    double total = 0.0;
    for (double p : skewed) total += p;
    CHECK(std::fabs(total - 1.0) < 1e-12);

    CHECK_THROWS_AS(discrete_maxent_oracle(three, 2.5), InfeasibleConstraint);
    CHECK_THROWS_AS(discrete_maxent_oracle(three, 0.0), InfeasibleConstraint);
}

TEST_CASE("oracle matches the exponential form on random grids") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> tval(-3.0, 7.0);
    std::uniform_int_distribution<std::size_t> size(8, 512);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<double> t(size(rng));
        for (double& v : t) v = tval(rng);
        const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
        const double margin = 0.1 * (*hi - *lo);
        std::uniform_real_distribution<double> target(*lo + margin, *hi - margin);
        const double m = target(rng);
        const auto p = discrete_maxent_oracle(t, m);
        const auto q = dual_bisection_maxent(t, m);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            worst = std::max(worst, std::fabs(p[i] - q[i]));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("affine rescaling of the scale leaves the density unchanged") {
    SUBCASE("affine-limit scale with a general a + b*T") {
        // Linear-log (Lomax-type) scale T = log(1 + y).
        const auto base = ScaleExpr::log_deform(1.0, lin());
        DistributionSpec templ(MeasurementScale::affine_limit(base), ObservableMap::identity(),
                               1.0, Interval::positive());
        const double target = 0.5;
        const double lam1 = solve_lambda(templ, {target, 1e-11});
        DistributionSpec spec1 = templ;
        spec1.lambda = lam1;
        const auto d1 = normalize(spec1);

        const double a = 0.7, b = 2.5;
        const auto rescaled = ScaleExpr::linear_combination(
            {{b, base}, {1.0, ScaleExpr::constant(a)}});
        DistributionSpec templ2(MeasurementScale::affine_limit(rescaled),
                                ObservableMap::identity(), 1.0, Interval::positive());
        const double lam2 = solve_lambda(templ2, {a + b * target, 1e-11});
        CHECK(lam2 == doctest::Approx(lam1 / b).epsilon(1e-7));

        DistributionSpec spec2 = templ2;
        spec2.lambda = lam2;
        GridOptions shared;
        shared.explicit_grid = d1.grid;
        const auto d2 = normalize(spec2, shared);
        double worst = 0.0;
        for (std::size_t i = 0; i < d1.grid.size(); ++i)
            worst = std::max(worst, std::fabs(d1.density[i] - d2.density[i]));
        CHECK(worst < 1e-9);
    }
    SUBCASE("exponential wrap: base shift acts as an affine map of T") {
        const double beta = 1.0, delta = 0.4;
        DistributionSpec templ(MeasurementScale::exponential_wrap(log_y(), beta),
                               ObservableMap::identity(), 1.0, Interval::positive());
        const double target = 2.0;
        const double lam1 = solve_lambda(templ, {target, 1e-11});
        DistributionSpec spec1 = templ;
        spec1.lambda = lam1;
        const auto d1 = normalize(spec1);

        const double b = std::exp(beta * delta);
        const double a = (b - 1.0) / beta;
        const auto shifted = ScaleExpr::linear_combination(
            {{1.0, log_y()}, {1.0, ScaleExpr::constant(delta)}});
        DistributionSpec templ2(MeasurementScale::exponential_wrap(shifted, beta),
                                ObservableMap::identity(), 1.0, Interval::positive());
        const double lam2 = solve_lambda(templ2, {a + b * target, 1e-11});
        CHECK(lam2 == doctest::Approx(lam1 / b).epsilon(1e-7));

        DistributionSpec spec2 = templ2;
        spec2.lambda = lam2;
        GridOptions shared;
        shared.explicit_grid = d1.grid;
        const auto d2 = normalize(spec2, shared);
        double worst = 0.0;
        for (std::size_t i = 0; i < d1.grid.size(); ++i)
            worst = std::max(worst, std::fabs(d1.density[i] - d2.density[i]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("CSV round trip keeps full precision") {
    const auto dist = normalize(unit_exponential());
    std::ostringstream out;
    dist.write_csv(out);
    std::istringstream in(out.str());
    const auto round = GridDistribution::read_csv(in);
    REQUIRE(round.grid.size() == dist.grid.size());
    for (std::size_t i = 0; i < dist.grid.size(); i += 211) {
        CHECK(round.grid[i] == dist.grid[i]);
        CHECK(round.density[i] == dist.density[i]);
    }
}

TEST_CASE("cdf and quantiles") {
    const auto dist = normalize(unit_exponential());
    CHECK(dist.cdf_at(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(dist.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-5));
    CHECK(dist.cdf_at(-1.0) == doctest::Approx(0.0));
}
