#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "scalekit/scale_algebra.hpp"
#include "scalekit/serialization.hpp"

#include <nlohmann/json.hpp>

using namespace scalekit;

namespace {

ScaleExpr log_y() { return ScaleExpr::log_deform(0.0, ScaleExpr::linear()); }

}  // namespace

TEST_CASE("eval_scale basics") {
    const auto identity = ObservableMap::identity();

    CHECK(eval_scale(MeasurementScale::affine_limit(ScaleExpr::linear()), identity, 3.0) ==
          doctest::Approx(3.0).epsilon(1e-15));

    const auto linlog = MeasurementScale::affine_limit(
        ScaleExpr::log_deform(1.0, ScaleExpr::linear()));
    CHECK(eval_scale(linlog, identity, std::exp(1.0) - 1.0) ==
          doctest::Approx(1.0).epsilon(1e-15));

    const auto wrap = MeasurementScale::exponential_wrap(ScaleExpr::linear(), 1.0);
    CHECK(eval_scale(wrap, identity, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("eval_scale domain errors") {
    const auto log_scale = MeasurementScale::affine_limit(log_y());
    CHECK_THROWS_AS(eval_scale(log_scale, ObservableMap::identity(), -1.0), DomainError);
    CHECK_THROWS_AS(eval_scale(log_scale, ObservableMap::identity(), 0.0), DomainError);
    CHECK_THROWS_AS(
        eval_scale(MeasurementScale::affine_limit(ScaleExpr::linear()),
                   ObservableMap::log_of_value(), -2.0),
        DomainError);
}

TEST_CASE("eval_scale_derivative matches the chain rule at landmark points") {
    const auto identity = ObservableMap::identity();
    CHECK(eval_scale_derivative(MeasurementScale::affine_limit(ScaleExpr::linear()), identity,
                                5.0) == doctest::Approx(1.0));
    CHECK(eval_scale_derivative(
              MeasurementScale::affine_limit(ScaleExpr::log_deform(1.0, ScaleExpr::linear())),
              identity, 0.0) == doctest::Approx(1.0));
    CHECK(eval_scale_derivative(MeasurementScale::affine_limit(ScaleExpr::linear()),
                                ObservableMap::squared_deviation(0.0), 2.0) ==
          doctest::Approx(4.0));
    CHECK_THROWS_AS(eval_scale_derivative(MeasurementScale::affine_limit(ScaleExpr::linear()),
                                          ObservableMap::absolute_value(), 0.0),
                    DomainError);
}

TEST_CASE("analytic derivatives agree with central differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(0.3, 8.0);

    const auto scales = std::vector<MeasurementScale>{
        MeasurementScale::affine_limit(ScaleExpr::log_deform(0.5, ScaleExpr::linear())),
        MeasurementScale::exponential_wrap(log_y(), 1.7),
        MeasurementScale::affine_limit(ScaleExpr::linear_combination(
            {{-1.0, log_y()}, {0.8, ScaleExpr::linear()}})),
        MeasurementScale::affine_limit(ScaleExpr::power(-2.0, ScaleExpr::linear())),
        MeasurementScale::affine_limit(
            ScaleExpr::log_deform(2.0, ScaleExpr::log_deform(1.0, ScaleExpr::linear()))),
    };
    const auto observables = std::vector<ObservableMap>{
        ObservableMap::identity(), ObservableMap::squared_deviation(0.5),
        ObservableMap::log_of_value()};

    auto defined_at = [](const MeasurementScale& scale, const ObservableMap& obs, double y) {
        if (!obs.contains(y)) return false;
        try {
            return scale.base().contains(obs(y));
        } catch (const Error&) {
            return false;
        }
    };

    int checked = 0;
    for (const auto& scale : scales) {
        for (const auto& obs : observables) {
            for (int i = 0; i < 40; ++i) {
                const double y = pick(rng);
                const double h = 1e-6 * std::max(1.0, std::fabs(y));
                if (!defined_at(scale, obs, y - h) || !defined_at(scale, obs, y + h)) continue;
                const double analytic = eval_scale_derivative(scale, obs, y);
                const double numeric =
                    (eval_scale(scale, obs, y + h) - eval_scale(scale, obs, y - h)) / (2.0 * h);
                const double denom = std::max(std::fabs(analytic), 1e-8);
                CHECK(std::fabs(analytic - numeric) / denom < 1e-5);
                ++checked;
            }
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("apply_transform") {
    CHECK(apply_transform(Transform::shift(2.0), 3.0) == doctest::Approx(5.0));
    CHECK(apply_transform(Transform::affine(1.0, 2.0), 3.0) == doctest::Approx(7.0));
    CHECK(apply_transform(Transform::power_law(2.0, 3.0), 2.0) == doctest::Approx(16.0));
    CHECK_THROWS_AS(apply_transform(Transform::power_law(2.0, 3.0), -1.0), DomainError);
    CHECK_THROWS_AS(Transform::affine(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Transform::power_law(-1.0, 2.0), DomainError);
}

TEST_CASE("log scale is affine invariant under power-law transforms, exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(0.2, 5.0);
    std::uniform_real_distribution<double> expo(-3.0, 3.0);

    const auto log_scale = MeasurementScale::affine_limit(log_y());
    const auto pts = default_invariance_points(0.05, 500.0);
    for (int i = 0; i < 25; ++i) {
        const double c = coef(rng);
        double gamma = expo(rng);
        if (std::fabs(gamma) < 0.1) gamma = 0.5;
        const auto report = check_affine_invariance(
            log_scale, ObservableMap::identity(), Transform::power_law(c, gamma), pts);
        CHECK(report.is_invariant);
        CHECK(report.fitted_a == doctest::Approx(std::log(c)).epsilon(1e-10));
        CHECK(report.fitted_b == doctest::Approx(gamma).epsilon(1e-10));
    }
}

TEST_CASE("exponential scale is shift invariant with b = exp(delta)") {
    const auto wrap = MeasurementScale::exponential_wrap(ScaleExpr::linear(), 1.0);
    const double pts[] = {0.0, 1.0, 2.0};
    const auto report = check_affine_invariance(wrap, ObservableMap::identity(),
                                                Transform::shift(0.7), pts);
    CHECK(report.is_invariant);
    CHECK(report.fitted_b == doctest::Approx(std::exp(0.7)).epsilon(1e-12));

    // Shift invariance is exact for any beta > 0.
    for (double beta : {0.3, 2.0, 5.0}) {
        const auto w = MeasurementScale::exponential_wrap(ScaleExpr::linear(), beta);
        const auto pts2 = default_invariance_points(0.1, 3.0, 16);
        const auto r = check_affine_invariance(w, ObservableMap::identity(),
                                               Transform::shift(-0.4), pts2);
        CHECK(r.is_invariant);
    }
}

TEST_CASE("log scale is not shift invariant") {
    const auto log_scale = MeasurementScale::affine_limit(log_y());
    const double pts[] = {1.0, 2.0, 4.0, 8.0};
    const auto report = check_affine_invariance(log_scale, ObservableMap::identity(),
                                                Transform::shift(1.0), pts);

    // Independent least-squares oracle on (log y, log(1+y)).
    double xs[4], ys[4];
    for (int i = 0; i < 4; ++i) {
        xs[i] = std::log(pts[i]);
        ys[i] = std::log(1.0 + pts[i]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double b = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    const double a = (sy - b * sx) / 4;
    double oracle_residual = 0.0;
    for (int i = 0; i < 4; ++i)
        oracle_residual = std::max(oracle_residual, std::fabs(ys[i] - a - b * xs[i]));

    CHECK_FALSE(report.is_invariant);
    CHECK(report.max_residual == doctest::Approx(oracle_residual).epsilon(1e-9));
    CHECK(report.max_residual > 1e-3);  // far above the 1e-9 tolerance
}

TEST_CASE("degenerate input when all scale values coincide") {
    const auto const_scale = MeasurementScale::affine_limit(ScaleExpr::constant(2.0));
    const double pts[] = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(check_affine_invariance(const_scale, ObservableMap::identity(),
                                            Transform::shift(1.0), pts),
                    DegenerateInput);
}

TEST_CASE("beta -> 0 continuity of the exponential wrap") {
    // |T_beta(w) - w| <= beta * w^2 * exp(beta * w) for w >= 0.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pick(0.0, 10.0);
    for (double beta : {1e-4, 1e-6, 1e-8}) {
        const auto wrap = MeasurementScale::exponential_wrap(ScaleExpr::linear(), beta);
        for (int i = 0; i < 60; ++i) {
            const double w = pick(rng);
            const double diff = std::fabs(wrap.value(w) - w);
            CHECK(diff <= beta * w * w * std::exp(beta * w) + 1e-15);
        }
    }
    // Modes agree within tolerance at beta <= 1e-8 on bounded inputs.
    const auto wrap = MeasurementScale::exponential_wrap(ScaleExpr::linear(), 1e-8);
    const auto affine = MeasurementScale::affine_limit(ScaleExpr::linear());
    for (double w = 0.0; w <= 10.0; w += 0.5)
        CHECK(std::fabs(wrap.value(w) - affine.value(w)) < 1e-5);
}

TEST_CASE("repeated power-law transforms stay affine similar to the log scale") {
    // Composing c*y^gamma n times is again a power law, so T = log remains
    // invariant for every n along the composition.
    const auto log_scale = MeasurementScale::affine_limit(log_y());
    const auto pts = default_invariance_points(0.1, 50.0, 32);
    double c = 1.7, gamma = 1.3;
    const double step_c = 0.8, step_gamma = -0.7;
    for (int n = 1; n <= 6; ++n) {
        const auto report = check_affine_invariance(
            log_scale, ObservableMap::identity(), Transform::power_law(c, gamma), pts);
        CHECK(report.is_invariant);
        CHECK(report.fitted_b == doctest::Approx(gamma).epsilon(1e-9));
        // Compose one more application G_next(y) = step_c * (c y^gamma)^step_gamma.
        c = step_c * std::pow(c, step_gamma);
        gamma = gamma * step_gamma;
    }
}

TEST_CASE("power nodes evaluate and differentiate") {
    const auto inv_square = ScaleExpr::power(-2.0, ScaleExpr::linear());
    CHECK(inv_square.value(2.0) == doctest::Approx(0.25));
    CHECK(inv_square.derivative(2.0) == doctest::Approx(-2.0 * std::pow(2.0, -3.0)));
    CHECK_THROWS_AS(inv_square.value(-1.0), DomainError);
    CHECK_THROWS_AS(ScaleExpr::power(0.0, ScaleExpr::linear()), DomainError);
}

TEST_CASE("constants and empty combinations") {
    const auto zero = ScaleExpr::linear_combination({});
    CHECK(zero.value(3.0) == doctest::Approx(0.0));
    CHECK(zero.derivative(3.0) == doctest::Approx(0.0));
    const auto c = ScaleExpr::constant(-1.25);
    CHECK(c.value(99.0) == doctest::Approx(-1.25).epsilon(1e-14));
    CHECK(c.derivative(99.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ScaleExpr::log_deform(-0.5, ScaleExpr::linear()), DomainError);
}

TEST_CASE("scale JSON round trip") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> kind(0, 3);

    std::function<ScaleExpr(int)> random_expr = [&](int depth) -> ScaleExpr {
        if (depth <= 0) return ScaleExpr::linear();
        switch (kind(rng)) {
            case 0:
                return ScaleExpr::linear();
            case 1:
                return ScaleExpr::log_deform(std::fabs(coef(rng)), random_expr(depth - 1));
            case 2:
                return ScaleExpr::linear_combination(
                    {{coef(rng), random_expr(depth - 1)}, {coef(rng), random_expr(depth - 1)}});
            default:
                return ScaleExpr::power(1.0 + std::fabs(coef(rng)), random_expr(depth - 1));
        }
    };

    for (int i = 0; i < 50; ++i) {
        const auto expr = random_expr(3);
        const auto round = scale_expr_from_json(scale_expr_to_json(expr));
        // Structural identity via serialized form, behavioral identity on a
        // few points where both are defined.
        CHECK(scale_expr_to_json(expr) == scale_expr_to_json(round));
        for (double y : {1.5, 2.0, 7.0}) {
            if (expr.contains(y)) {
                CHECK(round.contains(y));
                CHECK(round.value(y) == doctest::Approx(expr.value(y)).epsilon(1e-15));
            }
        }
    }

    const auto wrap = MeasurementScale::exponential_wrap(log_y(), 2.5);
    const auto round = measurement_scale_from_json(measurement_scale_to_json(wrap));
    CHECK(round.beta() == doctest::Approx(2.5));
    CHECK(round.mode() == MeasurementScale::Mode::ExponentialWrap);

    const auto t = transform_from_json(transform_to_json(Transform::power_law(2.0, -1.5)));
    CHECK(t.kind() == Transform::Kind::PowerLaw);
    CHECK(t.gamma() == doctest::Approx(-1.5));
}
