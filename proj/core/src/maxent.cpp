#include "scalekit/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "scalekit/quadrature.hpp"

namespace scalekit {

namespace {

constexpr double kTruncationRatio = 1e-16;  // u cutoff relative to its maximum

double safe_eval(const std::function<double(double)>& u, double y) {
    try {
        const double v = u(y);
        return std::isfinite(v) && v >= 0.0 ? v : 0.0;
    } catch (const Error&) {
        return 0.0;
    }
}

void append_if(std::vector<double>& pts, const Interval& s, double y) {
    if (std::isfinite(y) && s.contains(y)) pts.push_back(y);
}

std::vector<double> probe_points(const Interval& s, std::span<const double> anchors) {
    std::vector<double> pts;
    for (double a : anchors) {
        append_if(pts, s, a);
        for (int k = 1; k <= 24; ++k) {
            const double off = std::pow(10.0, -k / 2.0) * std::max(1.0, std::fabs(a));
            append_if(pts, s, a + off);
            append_if(pts, s, a - off);
        }
    }
    if (s.lo_finite() && s.hi_finite()) {
        const double span = s.hi - s.lo;
        for (int i = 0; i <= 96; ++i) append_if(pts, s, s.lo + span * i / 96.0);
        for (int k = 1; k <= 40; ++k) {
            const double off = span * std::pow(10.0, -k / 4.0);
            append_if(pts, s, s.lo + off);
            append_if(pts, s, s.hi - off);
        }
    } else if (s.lo_finite()) {
        for (int k = -64; k <= 88; ++k)
            append_if(pts, s, s.lo + std::pow(10.0, k / 4.0));
    } else if (s.hi_finite()) {
        for (int k = -64; k <= 88; ++k)
            append_if(pts, s, s.hi - std::pow(10.0, k / 4.0));
    } else {
        append_if(pts, s, 0.0);
        for (int k = -64; k <= 88; ++k) {
            const double v = std::pow(10.0, k / 4.0);
            append_if(pts, s, v);
            append_if(pts, s, -v);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Walk outward from the density peak until u drops below cutoff or the
// support boundary is hit, then tighten the crossing by bisection so very
// concentrated densities keep a live integration window. direction is +1
// or -1.
double truncation_bound(const std::function<double(double)>& u, const Interval& s, double peak,
                        double cutoff, int direction) {
    const double boundary = direction > 0 ? s.hi : s.lo;
    double step = std::max(1.0, std::fabs(peak)) * 0.1;
    double prev = peak;
    for (int i = 0; i < 600; ++i) {
        const double candidate = peak + direction * step;
        if (std::isfinite(boundary) && ((direction > 0 && candidate >= boundary) ||
                                        (direction < 0 && candidate <= boundary)))
            return boundary;
        if (!std::isfinite(candidate) || std::fabs(candidate) > 1e300)
            return peak + direction * 1e300;
        if (safe_eval(u, candidate) < cutoff) {
            double inside = prev, outside = candidate;
            for (int j = 0; j < 80; ++j) {
                const double mid = 0.5 * (inside + outside);
                if (mid == inside || mid == outside) break;
                (safe_eval(u, mid) < cutoff ? outside : inside) = mid;
            }
            return outside;
        }
        prev = candidate;
        step *= 1.35;
    }
    return prev;
}

// Wide supports can stall the adaptive integrator slightly above a strict
// tolerance while the value is already accurate to ~1e-10 relative. Accept
// such results; anything with a worse error estimate is treated as
// divergent.
void accept_or_throw(QuadratureResult& r, const char* what) {
    if (r.converged) return;
    const double scale = std::max(std::fabs(r.value), 1e-300);
    if (std::isfinite(r.value) && r.error <= 1e-9 * scale) {
        r.converged = true;
        return;
    }
    throw DivergentIntegral(what);
}

}  // namespace

DistributionSpec::DistributionSpec(MeasurementScale scale_, ObservableMap observable_,
                                   double lambda_, Interval support_, MeasureAdjustment measure_,
                                   std::optional<ScaleExpr> change_map_)
    : scale(std::move(scale_)),
      observable(observable_),
      lambda(lambda_),
      measure(measure_),
      change_map(std::move(change_map_)),
      support(support_) {
    if (!(support.lo < support.hi)) throw InvalidSpec("degenerate support (lo >= hi)");
    if (!std::isfinite(lambda)) throw InvalidSpec("lambda must be finite");
    if ((measure == MeasureAdjustment::ChangeOfVariable) != change_map.has_value())
        throw InvalidSpec("change-of-variable measure requires exactly one map g");
}

double DistributionSpec::scale_value(double y) const {
    const double x = measure == MeasureAdjustment::ChangeOfVariable ? change_map->value(y) : y;
    return eval_scale(scale, observable, x);
}

double DistributionSpec::measure_factor(double y) const {
    switch (measure) {
        case MeasureAdjustment::Unit:
            return 1.0;
        case MeasureAdjustment::ScaleDerivative:
            return std::fabs(eval_scale_derivative(scale, observable, y));
        case MeasureAdjustment::ChangeOfVariable:
            return std::fabs(change_map->derivative(y));
    }
    throw InvalidSpec("unknown measure adjustment");
}

double DistributionSpec::unnormalized(double y) const {
    const double t = scale_value(y);
    return measure_factor(y) * std::exp(-lambda * t);
}

double DistributionSpec::log_unnormalized(double y) const {
    const double t = scale_value(y);
    const double m = measure_factor(y);
    if (!(m > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(m) - lambda * t;
}

bool DistributionSpec::in_domain(double y) const noexcept {
    if (!std::isfinite(y) || !support.contains(y)) return false;
    try {
        return std::isfinite(unnormalized(y));
    } catch (const Error&) {
        return false;
    }
}

namespace detail {

namespace {

// Core mass machinery operating on log u so extreme exponents stay inside
// double range: probing, truncation, adaptive core and tail integration all
// act on u(y) * exp(-log_shift).
MassEstimate log_mass(const std::function<double(double)>& log_u, const Interval& support,
                      double abs_tol, std::span<const double> anchors) {
    auto safe_log = [&log_u](double y) {
        try {
            const double v = log_u(y);
            return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    const auto probes = probe_points(support, anchors);
    double shift = -std::numeric_limits<double>::infinity();
    double peak = probes.empty() ? 0.0 : probes.front();
    for (double y : probes) {
        const double v = safe_log(y);
        if (v > shift) {
            shift = v;
            peak = y;
        }
    }
    if (!std::isfinite(shift))
        throw InvalidSpec("density is zero everywhere it was probed");

    auto u_eff = [&safe_log, shift](double y) {
        const double v = safe_log(y) - shift;
        return v > -745.0 ? std::exp(v) : 0.0;
    };

    MassEstimate est;
    est.log_shift = shift;
    est.lo = truncation_bound(u_eff, support, peak, kTruncationRatio, -1);
    est.hi = truncation_bound(u_eff, support, peak, kTruncationRatio, +1);
    if (!(est.lo < est.hi)) {
        est.lo = std::min(est.lo, peak);
        est.hi = std::max(est.hi, peak);
    }

    // The shifted peak is ~1, but singular endpoints can push the shift far
    // above the bulk; convergence is therefore controlled relative to the
    // running integral, not by the caller's absolute target.
    QuadratureResult total = integrate_adaptive(u_eff, est.lo, est.hi, 1e-280, 1e-12, 8000);
    accept_or_throw(total, "density mass integral did not converge on the core interval");
    const double tail_abs = std::max(1e-13 * std::fabs(total.value), 1e-280);

    if (!support.hi_finite()) {
        QuadratureResult tail = integrate_upper_tail(u_eff, est.hi, tail_abs, 1e-10);
        accept_or_throw(tail, "upper tail mass did not converge (non-normalizable density)");
        total += tail;
        total.converged = true;
    } else if (est.hi < support.hi) {
        // Strip below the cutoff up to the finite boundary.
        QuadratureResult strip =
            integrate_adaptive(u_eff, est.hi, support.hi, tail_abs, 1e-9, 2000);
        total += strip;
        total.converged = true;
    }
    if (!support.lo_finite()) {
        QuadratureResult tail = integrate_lower_tail(u_eff, est.lo, tail_abs, 1e-10);
        accept_or_throw(tail, "lower tail mass did not converge (non-normalizable density)");
        total += tail;
        total.converged = true;
    } else if (est.lo > support.lo) {
        QuadratureResult strip =
            integrate_adaptive(u_eff, support.lo, est.lo, tail_abs, 1e-9, 2000);
        total += strip;
        total.converged = true;
    }

    if (!(total.value > 0.0) || !std::isfinite(total.value))
        throw DivergentIntegral("density mass is not positive and finite");
    est.mass = total.value;
    est.error = total.error;
    return est;
}

}  // namespace

MassEstimate callable_mass_with_anchors(const std::function<double(double)>& u,
                                        const Interval& support, double abs_tol,
                                        std::span<const double> anchors) {
    auto log_u = [&u](double y) {
        const double v = u(y);
        return v > 0.0 && std::isfinite(v) ? std::log(v)
                                           : -std::numeric_limits<double>::infinity();
    };
    return log_mass(log_u, support, abs_tol, anchors);
}

MassEstimate callable_mass(const std::function<double(double)>& u, const Interval& support,
                           double abs_tol) {
    return callable_mass_with_anchors(u, support, abs_tol, {});
}

MassEstimate unnormalized_mass(const DistributionSpec& spec, double abs_tol) {
    std::vector<double> anchors{0.0, 1.0};
    if (spec.observable.kind() == ObservableMap::Kind::SquaredDeviation)
        anchors.push_back(spec.observable.center());
    auto log_u = [&spec](double y) {
        return spec.support.contains(y) && std::isfinite(y)
                   ? spec.log_unnormalized(y)
                   : -std::numeric_limits<double>::infinity();
    };
    return log_mass(log_u, spec.support, abs_tol, anchors);
}

std::vector<double> build_grid(const std::function<double(double)>& u, double lo, double hi,
                               const GridOptions& options) {
    if (!options.explicit_grid.empty()) {
        const auto& g = options.explicit_grid;
        if (g.size() < 2 || !std::is_sorted(g.begin(), g.end()) ||
            std::adjacent_find(g.begin(), g.end()) != g.end())
            throw DomainError("explicit grid must be strictly increasing with >= 2 points");
        return g;
    }
    const std::size_t n = std::max<std::size_t>(options.points, 16);
    if (!(hi > lo)) throw DomainError("grid range must satisfy lo < hi");
    const double span = hi - lo;

    std::vector<double> grid;
    grid.reserve(n + 8);

    if (options.placement == GridOptions::Placement::Uniform) {
        for (std::size_t i = 0; i < n; ++i)
            grid.push_back(lo + span * static_cast<double>(i) / static_cast<double>(n - 1));
        grid.back() = hi;
        return grid;
    }
    if (options.placement == GridOptions::Placement::LogSpaced) {
        if (!(lo > 0.0)) throw DomainError("log-spaced grids require a positive lower bound");
        const double llo = std::log(lo), lhi = std::log(hi);
        for (std::size_t i = 0; i < n; ++i)
            grid.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                              static_cast<double>(n - 1)));
        grid.front() = lo;
        grid.back() = hi;
        return grid;
    }

    // Blended placement: half the budget follows the mass of u (equal-mass
    // quantiles of a coarse CDF), half spreads linearly plus geometrically
    // toward the interval ends and toward zero, so slow tails and
    // small-magnitude structure stay resolved at any grid size.
    const std::size_t n_mass = n / 2;
    const std::size_t n_cov = n - n_mass;

    const bool zero_interior = lo < 0.0 && hi > 0.0;
    std::vector<std::pair<double, int>> geo_origins = {{lo, +1}, {hi, -1}};
    if (zero_interior) {
        geo_origins.emplace_back(0.0, +1);
        geo_origins.emplace_back(0.0, -1);
    }
    auto push_geometric = [&](std::vector<double>& dst, double from, int direction,
                              std::size_t count) {
        // `count` offsets covering 20 decades below the span.
        for (std::size_t k = 1; k <= count; ++k) {
            const double off =
                span * std::pow(10.0, -20.0 * static_cast<double>(k) / static_cast<double>(count));
            const double y = from + direction * off;
            if (y > lo && y < hi) dst.push_back(y);
        }
    };

    // Exploration mesh for the coarse CDF.
    std::vector<double> mesh;
    mesh.reserve(4096 + 1024 * geo_origins.size());
    for (int i = 0; i <= 2048; ++i) mesh.push_back(lo + span * i / 2048.0);
    if (zero_interior) mesh.push_back(0.0);
    for (const auto& [from, dir] : geo_origins) push_geometric(mesh, from, dir, 1024);
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

    std::vector<double> uvals(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) uvals[i] = safe_eval(u, mesh[i]);
    auto cum = cumulative_trapezoid(mesh, uvals);
    const double total = cum.back();

    if (total > 0.0) {
        for (std::size_t i = 0; i < n_mass; ++i) {
            const double q = total * (static_cast<double>(i) + 0.5) / static_cast<double>(n_mass);
            auto it = std::lower_bound(cum.begin(), cum.end(), q);
            const std::size_t j = std::min<std::size_t>(
                std::max<std::ptrdiff_t>(1, it - cum.begin()), cum.size() - 1);
            const double c0 = cum[j - 1], c1 = cum[j];
            const double t = c1 > c0 ? (q - c0) / (c1 - c0) : 0.5;
            grid.push_back(mesh[j - 1] + t * (mesh[j] - mesh[j - 1]));
        }
    }

    // Coverage points: a linear sweep plus the geometric sets, sized from
    // the coverage budget directly.
    const std::size_t n_lin = std::max<std::size_t>(n_cov / 2, 8);
    for (std::size_t i = 0; i < n_lin; ++i)
        grid.push_back(lo + span * static_cast<double>(i) / static_cast<double>(n_lin - 1));
    const std::size_t per_side =
        std::max<std::size_t>((n_cov - n_lin) / geo_origins.size(), 64);
    for (const auto& [from, dir] : geo_origins) push_geometric(grid, from, dir, per_side);
    if (zero_interior) grid.push_back(0.0);
    grid.push_back(lo);
    grid.push_back(hi);

    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double y : grid) {
        if (!out.empty()) {
            const double sep = std::max({std::fabs(y), std::fabs(out.back()), 1e-300}) * 1e-13;
            if (y - out.back() <= sep) continue;
        }
        out.push_back(y);
    }
    if (out.size() < 2) throw DomainError("grid construction collapsed to fewer than 2 points");
    return out;
}

}  // namespace detail

GridDistribution normalize(const DistributionSpec& spec, const GridOptions& options) {
    const auto est = detail::unnormalized_mass(spec, options.abs_tol);
    const double psi = std::exp(-est.log_shift) / est.mass;
    if (!std::isfinite(psi) || !(psi > 0.0))
        throw InvalidSpec("normalization constant is outside double range");

    auto u_eff = [&spec, &est](double y) {
        if (!spec.in_domain(y)) return 0.0;
        const double v = spec.log_unnormalized(y) - est.log_shift;
        return v > -745.0 ? std::exp(v) : 0.0;
    };

    double glo = est.lo, ghi = est.hi;
    const double span = ghi - glo;
    auto representable = [&](double y) {
        return spec.in_domain(y) && u_eff(y) < 1e300;
    };
    for (int i = 0; i < 15 && !representable(glo); ++i) glo += span * 1e-18 * std::pow(10.0, i);
    for (int i = 0; i < 15 && !representable(ghi); ++i) ghi -= span * 1e-18 * std::pow(10.0, i);

    GridDistribution dist;
    dist.grid = detail::build_grid(u_eff, glo, ghi, options);
    dist.density.resize(dist.grid.size());
    for (std::size_t i = 0; i < dist.grid.size(); ++i) {
        const double y = dist.grid[i];
        if (!spec.in_domain(y)) throw DomainError("grid point outside the density domain");
        dist.density[i] = u_eff(y) / est.mass;
    }
    dist.normalization_constant = psi;
    dist.quadrature_error = std::fabs(dist.trapezoid_mass() - 1.0) + est.error / est.mass;
    return dist;
}

double mean_scale_value(const DistributionSpec& spec, double lambda) {
    DistributionSpec bound = spec;
    bound.lambda = lambda;
    const auto est = detail::unnormalized_mass(bound, 1e-10);
    // Integrand T(y) * u(y) exp(-shift); the shift cancels in the ratio.
    auto f = [&bound, &est](double y) {
        if (!bound.in_domain(y)) return 0.0;
        const double lu = bound.log_unnormalized(y) - est.log_shift;
        if (lu <= -745.0) return 0.0;
        const double v = bound.scale_value(y) * std::exp(lu);
        return std::isfinite(v) ? v : 0.0;
    };
    // T-weighted integrals can cancel to near zero, so the absolute floor is
    // anchored to the mass scale rather than to the integral itself.
    const double mean_abs = std::max(1e-12 * est.mass, 1e-280);
    QuadratureResult total = integrate_adaptive(f, est.lo, est.hi, mean_abs, 1e-11, 8000);
    if (!total.converged && !(total.error <= std::max(mean_abs * 10.0,
                                                      1e-9 * std::fabs(total.value))))
        throw DivergentIntegral("scale mean integral did not converge");
    const double tail_abs = std::max(1e-12 * std::fabs(total.value), mean_abs);
    if (!bound.support.hi_finite()) {
        auto tail = integrate_upper_tail(f, est.hi, tail_abs, 1e-9);
        if (!tail.converged) throw DivergentIntegral("scale mean upper tail did not converge");
        total += tail;
    }
    if (!bound.support.lo_finite()) {
        auto tail = integrate_lower_tail(f, est.lo, tail_abs, 1e-9);
        if (!tail.converged) throw DivergentIntegral("scale mean lower tail did not converge");
        total += tail;
    }
    return total.value / est.mass;
}

double solve_lambda(const DistributionSpec& spec_template, const Constraint& constraint) {
    if (!(constraint.tolerance > 0.0)) throw InvalidSpec("constraint tolerance must be positive");

    // g(lambda) = E[T] - target is strictly decreasing; divergence of the
    // mass integral at small lambda is treated as mean = +infinity.
    auto evaluate = [&](double lambda, bool& divergent) {
        divergent = false;
        try {
            return mean_scale_value(spec_template, lambda) - constraint.target_mean;
        } catch (const DivergentIntegral&) {
            divergent = true;
            return std::numeric_limits<double>::infinity();
        }
    };

    double lo = 1e-6, hi = 1e6;
    bool div_lo = false, div_hi = false;
    double g_lo = evaluate(lo, div_lo);
    double g_hi = evaluate(hi, div_hi);

    for (int i = 0; i < 3 && !div_lo && g_lo < 0.0; ++i) {
        lo /= 10.0;
        g_lo = evaluate(lo, div_lo);
    }
    for (int i = 0; i < 3 && g_hi > 0.0; ++i) {
        hi *= 10.0;
        g_hi = evaluate(hi, div_hi);
    }
    if (div_hi) throw DivergentIntegral("mean diverges at the largest searched lambda");
    if (!(g_hi <= 0.0))
        throw NoBracket("target mean is below E[T] over the whole searched lambda range");
    if (!div_lo && !(g_lo >= 0.0))
        throw NoBracket("target mean is above E[T] over the whole searched lambda range");

    // Shrink the divergent/positive side until both ends are finite.
    for (int i = 0; i < 200 && div_lo; ++i) {
        const double mid = std::sqrt(lo * hi);
        bool div_mid = false;
        const double g_mid = evaluate(mid, div_mid);
        if (div_mid || g_mid > 0.0) {
            lo = mid;
            div_lo = div_mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
        if (hi / lo < 1.0 + 1e-14) break;
    }
    if (div_lo) throw NoBracket("could not isolate a finite bracket for lambda");
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;

    // Solve in log-lambda for scale-free bracketing.
    auto g_of_x = [&](double x) {
        bool div = false;
        const double v = evaluate(std::exp(x), div);
        return div ? std::numeric_limits<double>::infinity() : v;
    };
    const double root_x = find_root(g_of_x, std::log(lo), std::log(hi), g_lo, g_hi, 1e-14,
                                    constraint.tolerance);
    return std::exp(root_x);
}

double GridDistribution::trapezoid_mass() const {
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        total += 0.5 * (grid[i] - grid[i - 1]) * (density[i] + density[i - 1]);
    return total;
}

std::vector<double> GridDistribution::cdf() const {
    auto cum = cumulative_trapezoid(grid, density);
    const double total = cum.back();
    if (!(total > 0.0)) throw DomainError("density mass on the grid is not positive");
    for (double& c : cum) c /= total;
    cum.back() = 1.0;
    return cum;
}

double GridDistribution::cdf_at(double y) const {
    const auto cum = cdf();
    if (y <= grid.front()) return 0.0;
    if (y >= grid.back()) return 1.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), y);
    const std::size_t j = it - grid.begin();
    const double t = (y - grid[j - 1]) / (grid[j] - grid[j - 1]);
    return cum[j - 1] + t * (cum[j] - cum[j - 1]);
}

double GridDistribution::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile requires q in [0,1]");
    const auto cum = cdf();
    const auto it = std::lower_bound(cum.begin(), cum.end(), q);
    if (it == cum.begin()) return grid.front();
    if (it == cum.end()) return grid.back();
    const std::size_t j = it - cum.begin();
    const double c0 = cum[j - 1], c1 = cum[j];
    const double t = c1 > c0 ? (q - c0) / (c1 - c0) : 0.5;
    return grid[j - 1] + t * (grid[j] - grid[j - 1]);
}

void GridDistribution::write_csv(std::ostream& out) const {
    out << "y,density\n";
    char buf[64];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", grid[i], density[i]);
        out << buf;
    }
}

GridDistribution GridDistribution::read_csv(std::istream& in) {
    GridDistribution dist;
    std::string line;
    if (!std::getline(in, line)) throw DomainError("empty CSV input");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("malformed CSV row: " + line);
        dist.grid.push_back(std::stod(line.substr(0, comma)));
        dist.density.push_back(std::stod(line.substr(comma + 1)));
    }
    if (dist.grid.size() < 2) throw DomainError("CSV distribution needs at least 2 rows");
    if (!std::is_sorted(dist.grid.begin(), dist.grid.end()))
        throw DomainError("CSV grid must be increasing");
    dist.normalization_constant = 1.0;
    dist.quadrature_error = std::fabs(dist.trapezoid_mass() - 1.0);
    return dist;
}

double entropy(const GridDistribution& dist) {
    std::vector<double> integrand(dist.grid.size());
    for (std::size_t i = 0; i < dist.grid.size(); ++i) {
        const double p = dist.density[i];
        integrand[i] = p > 1e-300 ? -p * std::log(p) : 0.0;
    }
    return integrate_tabulated(dist.grid, integrand);
}

std::vector<std::pair<double, double>> surprise_profile(const GridDistribution& dist,
                                                        const DistributionSpec& spec) {
    if (spec.measure != MeasureAdjustment::Unit)
        throw DomainError("surprise profile is linear on the dissipation scale only (unit measure)");
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(dist.grid.size());
    for (std::size_t i = 0; i < dist.grid.size(); ++i) {
        const double p = dist.density[i];
        if (!(p > 0.0)) throw DomainError("surprise is undefined at zero density");
        pairs.emplace_back(spec.scale_value(dist.grid[i]), -std::log(p));
    }
    return pairs;
}

std::vector<double> discrete_maxent_oracle(std::span<const double> t_values, double target_mean) {
    const std::size_t n = t_values.size();
    if (n < 2) throw InfeasibleConstraint("need at least two support points");
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (t_values[i] < t_values[imin]) imin = i;
        if (t_values[i] > t_values[imax]) imax = i;
    }
    const double tmin = t_values[imin], tmax = t_values[imax];
    if (!(target_mean > tmin && target_mean < tmax))
        throw InfeasibleConstraint("target mean must lie strictly inside (min T, max T)");

    // Feasible interior start: mix of the uniform distribution with a
    // two-point distribution tuned to hit the target exactly.
    double mean_u = 0.0;
    for (double t : t_values) mean_u += t;
    mean_u /= static_cast<double>(n);
    const double range = tmax - tmin;
    const double margin = std::min(target_mean - tmin, tmax - target_mean);
    const double mix = 1.0 - std::min(0.1, 0.4 * margin / range);
    const double mq = (target_mean - (1.0 - mix) * mean_u) / mix;
    const double a = (tmax - mq) / range;

    std::vector<double> p(n, (1.0 - mix) / static_cast<double>(n));
    p[imin] += mix * a;
    p[imax] += mix * (1.0 - a);

    auto entropy_of = [&](const std::vector<double>& q) {
        double h = 0.0;
        for (double v : q) h -= v > 0.0 ? v * std::log(v) : 0.0;
        return h;
    };

    std::vector<double> d(n), trial(n);
    double h_current = entropy_of(p);
    for (int iter = 0; iter < 200; ++iter) {
        // Equality-constrained Newton step: H d + A' nu = -grad, A d = 0 with
        // H = -diag(1/p), A = [1; T]. The diagonal Hessian reduces the KKT
        // system to a symmetric 2x2 solve.
        double m11 = 0.0, m12 = 0.0, m22 = 0.0, r1 = 0.0, r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = -(1.0 + std::log(p[i]));
            const double pt = p[i] * t_values[i];
            m11 += p[i];
            m12 += pt;
            m22 += pt * t_values[i];
            r1 -= p[i] * g;
            r2 -= pt * g;
        }
        const double det = m11 * m22 - m12 * m12;
        if (!(det > 0.0)) break;
        const double nu1 = (m22 * r1 - m12 * r2) / det;
        const double nu2 = (m11 * r2 - m12 * r1) / det;

        double step_max = 1.0;
        double d_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = -(1.0 + std::log(p[i]));
            d[i] = p[i] * (g + nu1 + nu2 * t_values[i]);
            d_norm = std::max(d_norm, std::fabs(d[i]));
            if (d[i] < 0.0) step_max = std::min(step_max, -0.95 * p[i] / d[i]);
        }
        if (d_norm < 1e-15) break;

        double alpha = step_max;
        double h_new = h_current;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = p[i] + alpha * d[i];
            h_new = entropy_of(trial);
            if (h_new >= h_current - 1e-18) break;
            alpha *= 0.5;
        }
        p.swap(trial);
        if (h_new - h_current < 1e-16 && d_norm < 1e-10) {
            h_current = h_new;
            break;
        }
        h_current = h_new;
    }
    return p;
}

}  // namespace scalekit
