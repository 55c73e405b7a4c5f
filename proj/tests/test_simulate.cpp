#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "scalekit/simulate.hpp"

using namespace scalekit;

TEST_CASE("fixed seeds give byte-identical sample streams") {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::WaitingTimeKth;
    spec.k = 3;
    spec.sample_count = 2000;
    spec.seed = 99;
    const auto a = simulate(spec);
    const auto b = simulate(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    spec.seed = 100;
    const auto c = simulate(spec);
    CHECK(a != c);
}

TEST_CASE("waiting time means converge to k/rate") {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::WaitingTimeKth;
    spec.sample_count = 100000;
    spec.seed = 42;

    spec.k = 1;
    spec.rate = 1.0;
    auto samples = simulate(spec);
    double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));

    spec.k = 3;
    samples = simulate(spec);
    mean = std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
    CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("sample maxima cluster near log(n) for exponential parents") {
    ProcessSpec spec;
    spec.kind = ProcessSpec::Kind::SampleMaximum;
    spec.n_parent = 1000;
    spec.sample_count = 20000;
    spec.seed = 5;
    const auto samples = simulate(spec);

    // Histogram peak: the Gumbel mode sits at log(n) ~ 6.9.
    const double lo = 5.0, hi = 9.0, width = 0.25;
    std::vector<int> bins(static_cast<std::size_t>((hi - lo) / width), 0);
    for (double s : samples) {
        if (s < lo || s >= hi) continue;
        ++bins[static_cast<std::size_t>((s - lo) / width)];
    }
    const std::size_t best = std::max_element(bins.begin(), bins.end()) - bins.begin();
    const double mode = lo + (static_cast<double>(best) + 0.5) * width;
    CHECK(mode > 6.3);
    CHECK(mode < 7.5);
}

TEST_CASE("invalid process specs are rejected") {
    ProcessSpec spec;
    spec.sample_count = 10;  // below the documented minimum
    CHECK_THROWS_AS(simulate(spec), InvalidSpec);
    spec.sample_count = 2000;
    spec.k = 0;
    CHECK_THROWS_AS(simulate(spec), InvalidSpec);
}

TEST_CASE("KS fit: gamma(3,1) waiting times against the right and wrong laws") {
    const auto report = run_scenario("waiting_time_gamma", 100000, 42);
    CHECK(report.pass);
    CHECK(report.ks_statistic >= 0.0);
    CHECK(report.ks_statistic <= 1.0);
    CHECK(report.threshold == doctest::Approx(1.63 / std::sqrt(100000.0)));

    const auto wrong = run_scenario_mismatch("waiting_time_gamma", 100000, 42);
    CHECK_FALSE(wrong.pass);
    CHECK(wrong.ks_statistic > 10.0 * wrong.threshold);
}

TEST_CASE("regression anchor: waiting_time_gamma at seed 42") {
    // The KS value of the first verified run is frozen as a determinism
    // regression check; any drift means the stream or the CDF changed.
    const auto report = run_scenario("waiting_time_gamma", 100000, 42);
    CHECK(report.ks_statistic == doctest::Approx(0.002825245448195568).epsilon(1e-9));
}

TEST_CASE("all shipped scenarios pass at reduced size") {
    for (const auto& scenario : scenarios()) {
        CAPTURE(scenario.name);
        const auto report = run_scenario(scenario.name, 20000, 42);
        CHECK(report.pass);
        const auto wrong = run_scenario_mismatch(scenario.name, 20000, 42);
        CHECK_FALSE(wrong.pass);
    }
}

TEST_CASE("unknown scenarios are rejected") {
    CHECK_THROWS_AS(run_scenario("nosuch"), UnknownScenario);
    CHECK_THROWS_AS(run_scenario_mismatch("nosuch"), UnknownScenario);
}

TEST_CASE("gumbel convergence: KS shrinks as the parent sample grows") {
    // Replicate counts scale with the parent size so the Monte Carlo noise
    // floor shrinks along the trajectory; see the acceptance suite for the
    // full 5-seed median version.
    const double coarse = maxima_gumbel_ks(100, 4000, 1);
    const double fine = maxima_gumbel_ks(1000, 20000, 1);
    CHECK(fine < coarse);
}

TEST_CASE("scenario metadata is consistent") {
    CHECK(scenario_names().size() == 6);
    for (const auto& s : scenarios()) {
        CHECK_FALSE(s.story.empty());
        CHECK_FALSE(s.mismatch_entry.empty());
    }
}
