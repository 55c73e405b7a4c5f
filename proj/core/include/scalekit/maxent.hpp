#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalekit/scale_algebra.hpp"

namespace scalekit {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
    static Interval whole_line() { return {}; }
    static Interval bounded(double lo, double hi) { return {lo, hi}; }

    bool lo_finite() const { return std::isfinite(lo); }
    bool hi_finite() const { return std::isfinite(hi); }
    bool contains(double y) const { return y >= lo && y <= hi; }
};

enum class MeasureAdjustment { Unit, ScaleDerivative, ChangeOfVariable };

/// The triple (m_y, lambda, T) plus support. The unnormalized density is
///   u(y) = m(y) * exp(-lambda * T(f(y)))
/// with m = 1, m = |dT(f(y))/dy|, or m = |g'(y)| under a change of variable
/// x = g(y), in which case the scale is evaluated at g(y) instead of y.
struct DistributionSpec {
    MeasurementScale scale;
    ObservableMap observable;
    double lambda = 1.0;
    MeasureAdjustment measure = MeasureAdjustment::Unit;
    std::optional<ScaleExpr> change_map;  // set iff measure == ChangeOfVariable
    Interval support;

    DistributionSpec(MeasurementScale scale_, ObservableMap observable_, double lambda_,
                     Interval support_,
                     MeasureAdjustment measure_ = MeasureAdjustment::Unit,
                     std::optional<ScaleExpr> change_map_ = std::nullopt);

    /// The scale value the exponent sees: T(f(y)) or T(f(g(y))).
    double scale_value(double y) const;
    double measure_factor(double y) const;
    double unnormalized(double y) const;
    /// log u(y); -inf where the measure factor vanishes. Keeps extreme
    /// lambda regimes representable during root bracketing.
    double log_unnormalized(double y) const;
    bool in_domain(double y) const noexcept;
};

struct GridOptions {
    enum class Placement { Blended, Uniform, LogSpaced };
    std::size_t points = 4096;
    Placement placement = Placement::Blended;
    std::vector<double> explicit_grid;  // overrides placement when non-empty
    double abs_tol = 1e-10;             // normalization quadrature target
};

/// A density tabulated on a strictly increasing grid. density[i] equals
/// normalization_constant * u(grid[i]) exactly for the generating spec;
/// quadrature_error bounds the combination of quadrature, truncation and
/// grid-discretization error, so the trapezoid mass always lies within
/// [1 - 10*quadrature_error, 1 + 10*quadrature_error].
struct GridDistribution {
    std::vector<double> grid;
    std::vector<double> density;
    double normalization_constant = 1.0;  // psi: density = psi * u
    double quadrature_error = 0.0;

    double trapezoid_mass() const;
    /// CDF values at the grid nodes, rescaled to end at exactly 1.
    std::vector<double> cdf() const;
    /// Linear interpolation of the rescaled CDF; clamps outside the grid.
    double cdf_at(double y) const;
    /// Abscissa of the given CDF quantile (linear interpolation).
    double quantile(double q) const;

    void write_csv(std::ostream& out) const;
    static GridDistribution read_csv(std::istream& in);
};

/// Normalizes the spec's density on a grid. Semi-infinite supports are
/// truncated where u falls below 1e-16 of its maximum; the mass beyond the
/// truncation points is still integrated (by algebraic substitution) into
/// the normalization constant and its residual folded into quadrature_error.
/// Throws DivergentIntegral when the mass integral fails to converge.
GridDistribution normalize(const DistributionSpec& spec, const GridOptions& options = {});

struct Constraint {
    double target_mean = 0.0;
    double tolerance = 1e-9;
};

/// Mean of the scale value T(f(y)) under the normalized density for the
/// given lambda.
double mean_scale_value(const DistributionSpec& spec_template, double lambda);

/// Solves E[T] = target over lambda in [1e-6, 1e6] (bracket expanded by
/// factors of 10 up to 3 times per side). The map lambda -> E[T] is strictly
/// decreasing, so bracketed bisection/secant iteration applies.
double solve_lambda(const DistributionSpec& spec_template, const Constraint& constraint);

/// -integral p log p over the tabulated grid (fourth-order rule).
double entropy(const GridDistribution& dist);

/// Pairs (T(f(y_i)), -log p(y_i)) over the grid; the points lie on a line
/// with slope lambda. Requires a unit measure adjustment.
std::vector<std::pair<double, double>> surprise_profile(const GridDistribution& dist,
                                                        const DistributionSpec& spec);

/// Discrete maximum-entropy distribution under a mean constraint, computed
/// by feasible-start Newton iteration on the constrained primal problem
/// (no exponential-family form is assumed anywhere in the solve).
std::vector<double> discrete_maxent_oracle(std::span<const double> t_values, double target_mean);

namespace detail {

/// Total mass of the unnormalized density plus an error estimate and the
/// truncation points actually used. Shared by normalize/solve_lambda.
/// Values refer to the shifted density u(y) * exp(-log_shift), so the true
/// mass is mass * exp(log_shift); the shift keeps extreme exponents inside
/// double range.
struct MassEstimate {
    double mass = 0.0;
    double error = 0.0;
    double lo = 0.0;  // finite truncation bounds used for the core integral
    double hi = 0.0;
    double log_shift = 0.0;
};

MassEstimate unnormalized_mass(const DistributionSpec& spec, double abs_tol);

/// Same machinery for an arbitrary positive integrand over an interval.
MassEstimate callable_mass(const std::function<double(double)>& u, const Interval& support,
                           double abs_tol);

/// Variant taking extra probe anchors (peak location hints).
MassEstimate callable_mass_with_anchors(const std::function<double(double)>& u,
                                        const Interval& support, double abs_tol,
                                        std::span<const double> anchors);

std::vector<double> build_grid(const std::function<double(double)>& u, double lo, double hi,
                               const GridOptions& options);

}  // namespace detail

}  // namespace scalekit
