#pragma once

#include <span>
#include <vector>

#include "scalekit/maxent.hpp"

namespace scalekit {

/// Monotone map x = g(y) from the observation scale back to the scale on
/// which information dissipates. Maps whose forward form lies outside the
/// scale algebra (x = exp(y), say) are supplied through their inverse:
/// given_as_inverse means `map` holds y = g^{-1}(x) instead.
struct VariableChange {
    enum class Direction { DissipationToObservation };
    ScaleExpr map;
    Direction direction = Direction::DissipationToObservation;
    bool given_as_inverse = false;
};

/// Transplants a tabulated density from the x scale to the y scale:
/// p_y(y) = |g'(y)| p_x(g(y)), evaluated at y_i = g^{-1}(x_i) and
/// renormalized on the resulting grid. Throws NonMonotoneMap when g' changes
/// sign across the grid, and an error when the renormalization drift
/// exceeds 1e-6.
GridDistribution change_of_variable(const GridDistribution& source, const VariableChange& change);

/// Cumulative upper-tail probability of some parent distribution, expressed
/// as a measurement scale of the threshold. validation_domain is where the
/// raw tail value must be a probability (positive, <= 1, nonincreasing);
/// result_support is the support of the resulting extreme-value density.
struct TailScale {
    MeasurementScale scale;
    Interval validation_domain;
    Interval result_support;
};

/// Extreme-value construction: density proportional to |T'| exp(-lambda T)
/// with T the tail scale.
DistributionSpec extreme_value_density(const TailScale& tail, double lambda);

/// h*(s) = integral exp(-x s) p(x) dx per dual point, via fourth-order
/// integration of the tabulated density.
std::vector<double> laplace_transform(const GridDistribution& source,
                                      std::span<const double> dual_points);

/// Real part of the characteristic function integral cos(s x) p(x) dx.
std::vector<double> fourier_cos_transform(const GridDistribution& source,
                                          std::span<const double> dual_points);

/// Mixture of the normalized exponential conditional x exp(-x y) over a
/// tabulated parameter density h(x) on x > 0, returning the normalized
/// mixture density on a grid over y.
GridDistribution superstatistics_mix(const GridDistribution& parameter_dist,
                                     std::size_t output_points = 4096);

struct LevyOptions {
    std::size_t points = 1 << 16;  // power of two
    double span = 2000.0;          // grid covers [-span, span)
    double ringing_tolerance = 1e-9;
    double clip_threshold = 1e-12;
};

/// Symmetric Levy stable density by discrete Fourier inversion of the
/// characteristic function exp(-phi |x|^gamma), gamma in (0, 2].
/// Gaussian at gamma = 2, Cauchy at gamma = 1.
GridDistribution levy_stable_density(double gamma, double phi, const LevyOptions& options = {});

/// Variant taking an explicit symmetric power-of-two grid.
GridDistribution levy_stable_density(double gamma, double phi, std::span<const double> y_grid);

}  // namespace scalekit
