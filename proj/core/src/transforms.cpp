#include "scalekit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "scalekit/fft.hpp"
#include "scalekit/quadrature.hpp"

namespace scalekit {

namespace {

struct ProbePoint {
    double y;
    double g;
};

// Sample g over a very wide range of candidate y values, keeping the points
// where it is defined.
std::vector<ProbePoint> probe_map(const ScaleExpr& g) {
    std::vector<ProbePoint> pts;
    auto add = [&](double y) {
        if (!g.contains(y)) return;
        try {
            const double v = g.value(y);
            if (std::isfinite(v)) pts.push_back({y, v});
        } catch (const Error&) {
        }
    };
    add(0.0);
    for (int k = -1200; k <= 1200; ++k) {
        const double v = std::pow(10.0, k / 4.0);
        add(v);
        add(-v);
    }
    std::sort(pts.begin(), pts.end(), [](const ProbePoint& a, const ProbePoint& b) {
        return a.y < b.y;
    });
    return pts;
}

double invert_monotone(const ScaleExpr& g, double target, double y_lo, double y_hi,
                       bool increasing) {
    auto f = [&](double y) { return g.value(y) - target; };
    double a = y_lo, b = y_hi;
    double fa = f(a), fb = f(b);
    if (!increasing) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    // Plain bisection down to double resolution: robust against the huge
    // dynamic ranges of the maps.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

GridDistribution change_of_variable(const GridDistribution& source, const VariableChange& change) {
    const auto& xs = source.grid;
    if (xs.size() < 4) throw DomainError("source grid too small for a change of variable");

    std::vector<double> ys(xs.size());
    std::vector<double> dens(xs.size());
    int sign = 0;

    if (change.given_as_inverse) {
        // map holds h = g^{-1}: y_i = h(x_i) directly, |g'(y_i)| = 1/|h'(x_i)|.
        // Boundary nodes outside h's domain (x = 0 under a log map, say) are
        // dropped; the mass they carried shows up in the drift check.
        ys.clear();
        dens.clear();
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!change.map.contains(xs[i])) {
                ++skipped;
                continue;
            }
            const double mapped = change.map.value(xs[i]);
            const double slope = change.map.derivative(xs[i]);
            if (!std::isfinite(mapped) || slope == 0.0 || !std::isfinite(slope)) {
                ++skipped;
                continue;
            }
            const int s = slope > 0.0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign)
                throw NonMonotoneMap("inverse map changes direction across the grid");
            ys.push_back(mapped);
            dens.push_back(source.density[i] / std::fabs(slope));
        }
        if (skipped > xs.size() / 4)
            throw DomainError("most of the source grid lies outside the inverse map's domain");
    } else {
        const auto probes = probe_map(change.map);
        if (probes.size() < 3) throw DomainError("variable-change map is defined almost nowhere");

        // Determine orientation from the probes covering the source range.
        const double x_lo = xs.front(), x_hi = xs.back();
        double g_min = probes.front().g, g_max = probes.front().g;
        for (const auto& p : probes) {
            g_min = std::min(g_min, p.g);
            g_max = std::max(g_max, p.g);
        }
        if (!(g_min <= x_lo && g_max >= x_hi))
            throw DomainError("source support maps outside the range of the variable change");

        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double target = xs[i];
            // Find an adjacent probe pair straddling the target value.
            bool found = false;
            for (std::size_t j = 0; j + 1 < probes.size(); ++j) {
                const double ga = probes[j].g, gb = probes[j + 1].g;
                if ((ga <= target && target <= gb) || (gb <= target && target <= ga)) {
                    ys[i] = invert_monotone(change.map, target, probes[j].y, probes[j + 1].y,
                                            gb >= ga);
                    found = true;
                    break;
                }
            }
            if (!found) throw DomainError("could not bracket a grid point under the map");
        }

        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double slope = change.map.derivative(ys[i]);
            if (slope == 0.0 || !std::isfinite(slope))
                throw NonMonotoneMap("variable-change map has vanishing slope on the grid");
            const int s = slope > 0.0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign)
                throw NonMonotoneMap("variable-change map changes direction across the grid");
            dens[i] = std::fabs(slope) * source.density[i];
        }
    }
    if (sign < 0) {
        std::reverse(ys.begin(), ys.end());
        std::reverse(dens.begin(), dens.end());
    }

    // Source points closer than the double resolution of the mapped scale
    // collapse onto one node; keep the first of each cluster.
    GridDistribution out;
    out.grid.reserve(ys.size());
    out.density.reserve(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!out.grid.empty()) {
            const double sep =
                std::max({std::fabs(ys[i]), std::fabs(out.grid.back()), 1e-300}) * 4e-16;
            if (ys[i] <= out.grid.back() + sep) continue;
        }
        out.grid.push_back(ys[i]);
        out.density.push_back(dens[i]);
    }
    if (out.grid.size() < 4)
        throw NonMonotoneMap("mapped grid collapsed; map may not be strictly monotone");
    const double mass = integrate_tabulated(out.grid, out.density);
    const double drift = std::fabs(mass - 1.0);
    if (!(drift < 1e-6))
        throw Error("RenormalizationDrift",
                    "mass drift under the change of variable exceeds 1e-6");
    for (double& d : out.density) d /= mass;
    out.normalization_constant = source.normalization_constant / mass;
    out.quadrature_error =
        std::fabs(out.trapezoid_mass() - 1.0) + source.quadrature_error + drift;
    return out;
}

DistributionSpec extreme_value_density(const TailScale& tail, double lambda) {
    // The raw tail value must behave like an upper-tail probability on the
    // validation domain: positive, at most 1, nonincreasing.
    const Interval& v = tail.validation_domain;
    const double lo = v.lo_finite() ? v.lo : -100.0;
    const double hi = v.hi_finite() ? v.hi : lo + 100.0 * std::max(1.0, std::fabs(lo));
    const double inset = (hi - lo) * 1e-6;
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 64; ++i) {
        const double y = lo + inset + (hi - inset - (lo + inset)) * i / 64.0;
        const double w = tail.scale.base().value(y);
        const double raw = tail.scale.raw_scaling(w);
        if (!(raw > 0.0) || raw > 1.0 + 1e-9)
            throw DomainError("tail scale is not a probability on the validation domain");
        if (raw > previous + 1e-12)
            throw DomainError("tail scale must be nonincreasing in the threshold");
        previous = raw;
    }
    return DistributionSpec(tail.scale, ObservableMap::identity(), lambda, tail.result_support,
                            MeasureAdjustment::ScaleDerivative);
}

std::vector<double> laplace_transform(const GridDistribution& source,
                                      std::span<const double> dual_points) {
    const auto& xs = source.grid;
    if (xs.empty() || xs.front() < 0.0)
        throw DomainError("laplace transform requires a density supported on x >= 0");
    std::vector<double> integrand(xs.size());
    std::vector<double> out;
    out.reserve(dual_points.size());
    for (double s : dual_points) {
        if (!(s >= 0.0)) throw DomainError("laplace dual points must be nonnegative");
        for (std::size_t i = 0; i < xs.size(); ++i)
            integrand[i] = source.density[i] * std::exp(-xs[i] * s);
        out.push_back(integrate_tabulated(xs, integrand));
    }
    return out;
}

std::vector<double> fourier_cos_transform(const GridDistribution& source,
                                          std::span<const double> dual_points) {
    const auto& xs = source.grid;
    std::vector<double> integrand(xs.size());
    std::vector<double> out;
    out.reserve(dual_points.size());
    for (double s : dual_points) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            integrand[i] = source.density[i] * std::cos(xs[i] * s);
        out.push_back(integrate_tabulated(xs, integrand));
    }
    return out;
}

GridDistribution superstatistics_mix(const GridDistribution& parameter_dist,
                                     std::size_t output_points) {
    const auto& xs = parameter_dist.grid;
    if (xs.empty() || !(xs.front() >= 0.0))
        throw DomainError("superstatistics mixing requires a parameter density on x > 0");

    // Precompute x_i * h_i * w_i so each mixture value is one weighted sum.
    const std::vector<double> weights = tabulated_weights(xs);
    std::vector<double> kernel(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        kernel[i] = xs[i] * parameter_dist.density[i] * weights[i];
    auto mixture = [&](double y) {
        if (!(y >= 0.0)) return 0.0;
        double v = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) v += kernel[i] * std::exp(-xs[i] * y);
        return std::isfinite(v) && v > 0.0 ? v : 0.0;
    };

    const double peak = mixture(0.0);
    if (!(peak > 0.0)) throw DomainError("mixture density vanishes at the origin");
    double hi = 1.0;
    while (mixture(hi) > 1e-13 * peak && hi < 1e12) hi *= 2.0;

    GridOptions options;
    options.points = output_points;
    GridDistribution out;
    out.grid = detail::build_grid(mixture, 0.0, hi, options);
    out.density.resize(out.grid.size());
    for (std::size_t i = 0; i < out.grid.size(); ++i) out.density[i] = mixture(out.grid[i]);

    const double mass = integrate_tabulated(out.grid, out.density);
    if (!(mass > 0.0)) throw DivergentIntegral("mixture density has no mass");
    for (double& d : out.density) d /= mass;
    out.normalization_constant = 1.0 / mass;
    out.quadrature_error = std::fabs(out.trapezoid_mass() - 1.0) + parameter_dist.quadrature_error;
    return out;
}

GridDistribution levy_stable_density(double gamma, double phi, const LevyOptions& options) {
    if (!(gamma > 0.0 && gamma <= 2.0))
        throw DomainError("stable exponent gamma must lie in (0, 2]");
    if (!(phi > 0.0)) throw DomainError("stable scale phi must be positive");
    const std::size_t n = options.points;
    if (n < 16 || (n & (n - 1)) != 0)
        throw DomainError("levy grid length must be a power of two (>= 16)");
    const double span = options.span;
    if (!(span > 0.0)) throw DomainError("levy span must be positive");

    const double dy = 2.0 * span / static_cast<double>(n);
    const double dx = M_PI / span;
    const double x_max = 0.5 * static_cast<double>(n) * dx;

    // The characteristic function must decay below 1e-16 inside the dual
    // grid, otherwise the inversion is dominated by spectral truncation.
    if (phi * std::pow(x_max, gamma) < 36.8)
        throw GridTooNarrow("characteristic function does not decay inside the dual grid; "
                            "widen the grid or increase the point count");

    std::vector<std::complex<double>> buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dx;
        const double cf = std::exp(-phi * std::pow(std::fabs(x), gamma));
        buf[j] = (j % 2 == 0) ? cf : -cf;
    }
    fft_radix2(buf, -1);

    GridDistribution out;
    out.grid.resize(n);
    out.density.resize(n);
    const double scale = dx / (2.0 * M_PI);
    for (std::size_t k = 0; k < n; ++k) {
        out.grid[k] = -span + static_cast<double>(k) * dy;
        const double v = scale * buf[k].real();
        out.density[k] = (k % 2 == 0) ? v : -v;
    }

    // Enforce evenness exactly; the transform of a real even sequence is
    // even up to rounding.
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double avg = 0.5 * (out.density[k] + out.density[n - k]);
        out.density[k] = avg;
        out.density[n - k] = avg;
    }

    double peak = 0.0;
    for (double d : out.density) peak = std::max(peak, d);
    double most_negative = 0.0;
    for (double d : out.density) most_negative = std::min(most_negative, d);
    if (most_negative < -options.ringing_tolerance * peak)
        throw RingingExceedsTolerance("negative ringing exceeds 1e-9 of the density peak");

    double clipped_mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (out.density[k] < 0.0) {
            clipped_mass += -out.density[k] * dy;
            out.density[k] = 0.0;
        }
    }

    const double mass = integrate_tabulated(out.grid, out.density);
    if (!(mass > 0.0)) throw DivergentIntegral("stable density has no mass on the grid");
    for (double& d : out.density) d /= mass;
    out.normalization_constant = 1.0 / mass;
    out.quadrature_error =
        std::fabs(out.trapezoid_mass() - 1.0) + clipped_mass + std::fabs(mass - 1.0);
    return out;
}

GridDistribution levy_stable_density(double gamma, double phi, std::span<const double> y_grid) {
    const std::size_t n = y_grid.size();
    if (n < 16 || (n & (n - 1)) != 0)
        throw DomainError("levy grid length must be a power of two (>= 16)");
    const double span = -y_grid.front();
    if (!(span > 0.0)) throw DomainError("levy grid must start at -span with span > 0");
    const double dy = 2.0 * span / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double expect = -span + static_cast<double>(k) * dy;
        if (std::fabs(y_grid[k] - expect) > 1e-9 * std::max(1.0, span))
            throw DomainError("levy grid must be uniform and symmetric about 0");
    }
    LevyOptions options;
    options.points = n;
    options.span = span;
    return levy_stable_density(gamma, phi, options);
}

}  // namespace scalekit
