#include "scalekit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "scalekit/errors.hpp"

namespace scalekit {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

PanelEstimate gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kKronrodNodes[i];
        double sum;
        if (i == 7) {
            sum = f(center);
        } else {
            sum = f(center - offset) + f(center + offset);
        }
        kronrod += kKronrodWeights[i] * sum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
    }

    PanelEstimate est;
    est.value = kronrod * half;
    const double diff = std::fabs((kronrod - gauss) * half);
    est.error = std::min(diff, std::pow(200.0 * diff, 1.5));
    if (!std::isfinite(est.value)) est.error = std::numeric_limits<double>::infinity();
    return est;
}

struct Panel {
    double a, b;
    PanelEstimate est;
    bool operator<(const Panel& other) const { return est.error < other.est.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, std::size_t max_intervals) {
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    if (!(b > a)) throw DomainError("integration interval must satisfy a < b");

    std::priority_queue<Panel> panels;
    Panel root{a, b, gauss_kronrod(f, a, b)};
    panels.push(root);
    double total = root.est.value;
    double total_err = root.est.error;
    result.evaluations = 15;

    std::size_t count = 1;
    while (count < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
        if (total_err <= tol) break;
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable at double precision.
            panels.push(worst);
            break;
        }
        Panel left{worst.a, mid, gauss_kronrod(f, worst.a, mid)};
        Panel right{mid, worst.b, gauss_kronrod(f, mid, worst.b)};
        total += left.est.value + right.est.value - worst.est.value;
        total_err += left.est.error + right.est.error - worst.est.error;
        panels.push(left);
        panels.push(right);
        result.evaluations += 30;
        ++count;
    }

    result.value = total;
    result.error = std::fabs(total_err);
    const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
    result.converged = std::isfinite(total) && result.error <= tol;
    return result;
}

namespace {

// Substituted tail integral on t in (0, 1], evaluated in s = log(t)
// coordinates where exponential, power and logarithmic tails all become
// well-behaved, split into a near range and a deep range toward t = 0.
// Convergent tails leave the deep range with little mass; 1/y tails and
// worse become ~1/t under the map and fill both ranges equally, which flags
// them as divergent. Logarithmically heavy but convergent tails land in
// between: their residual beyond double range is comparable to the deep
// block, so it is reported as error mass.
QuadratureResult tail_via_substitution(const std::function<double(double)>& g, double abs_tol,
                                       double rel_tol) {
    auto in_log = [&g](double s) {
        const double t = std::exp(s);
        const double v = g(t);
        return v == 0.0 ? 0.0 : v * t;
    };
    const double s_mid = std::log(1e-150);
    const double s_deep = std::log(1e-300);
    QuadratureResult near = integrate_adaptive(in_log, s_mid, 0.0, abs_tol, rel_tol);
    QuadratureResult deep = integrate_adaptive(in_log, s_deep, s_mid, abs_tol, rel_tol);
    QuadratureResult total = near;
    total += deep;
    const double scale = std::max(std::fabs(near.value), 1e-300);
    const double deep_mass = std::fabs(deep.value);
    total.converged =
        near.converged && deep.converged && deep_mass <= 0.3 * scale;
    if (total.converged && deep_mass > std::max(abs_tol, 1e-12 * scale))
        total.error += deep_mass;  // proxy for the unreachable remainder
    return total;
}

}  // namespace

QuadratureResult integrate_upper_tail(const std::function<double(double)>& f, double a,
                                      double abs_tol, double rel_tol) {
    // y = a + (1 - t)/t maps t in (0, 1] to [a, inf); dy = dt / t^2.
    auto g = [&f, a](double t) {
        const double y = a + (1.0 - t) / t;
        const double v = f(y);
        if (v == 0.0) return 0.0;
        return v / t / t;
    };
    return tail_via_substitution(g, abs_tol, rel_tol);
}

QuadratureResult integrate_lower_tail(const std::function<double(double)>& f, double b,
                                      double abs_tol, double rel_tol) {
    auto g = [&f, b](double t) {
        const double y = b - (1.0 - t) / t;
        const double v = f(y);
        if (v == 0.0) return 0.0;
        return v / t / t;
    };
    return tail_via_substitution(g, abs_tol, rel_tol);
}

double integrate_tabulated(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw DomainError("tabulated integration needs matched arrays");
    if (n == 2) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
    if (n == 3) {
        // Quadratic through all three points, integrated over the full range.
        double total = 0.0;
        for (int seg = 0; seg < 2; ++seg) {
            const double lo = x[seg], hi = x[seg + 1];
            for (int j = 0; j < 3; ++j) {
                // Integral of the Lagrange basis polynomial on [lo, hi].
                const double xj = x[j];
                double others[2];
                int k = 0;
                for (int m = 0; m < 3; ++m)
                    if (m != j) others[k++] = x[m];
                const double denom = (xj - others[0]) * (xj - others[1]);
                // integral of (t - o0)(t - o1) dt
                auto anti = [&](double t) {
                    return t * t * t / 3.0 - 0.5 * (others[0] + others[1]) * t * t +
                           others[0] * others[1] * t;
                };
                total += y[j] * (anti(hi) - anti(lo)) / denom;
            }
        }
        return total;
    }

    // Cubic through the four samples nearest each interval, evaluated in
    // coordinates local to the interval so widely varying grid scales stay
    // well conditioned.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t s = (i == 0) ? 0 : (i + 2 >= n ? n - 4 : i - 1);
        const double xc = 0.5 * (x[i] + x[i + 1]);
        const double lo = x[i] - xc, hi = x[i + 1] - xc;
        for (int j = 0; j < 4; ++j) {
            const double xj = x[s + j] - xc;
            double o[3];
            int k = 0;
            for (int m = 0; m < 4; ++m)
                if (m != j) o[k++] = x[s + m] - xc;
            const double denom = (xj - o[0]) * (xj - o[1]) * (xj - o[2]);
            const double e2 = o[0] + o[1] + o[2];
            const double e1 = o[0] * o[1] + o[0] * o[2] + o[1] * o[2];
            const double e0 = o[0] * o[1] * o[2];
            auto anti = [&](double t) {
                return t * t * t * t / 4.0 - e2 * t * t * t / 3.0 + e1 * t * t / 2.0 - e0 * t;
            };
            total += y[s + j] * (anti(hi) - anti(lo)) / denom;
        }
    }
    return total;
}

std::vector<double> tabulated_weights(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw DomainError("tabulated weights need at least 4 nodes");
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t s = (i == 0) ? 0 : (i + 2 >= n ? n - 4 : i - 1);
        const double xc = 0.5 * (x[i] + x[i + 1]);
        const double lo = x[i] - xc, hi = x[i + 1] - xc;
        for (int j = 0; j < 4; ++j) {
            const double xj = x[s + j] - xc;
            double o[3];
            int k = 0;
            for (int m = 0; m < 4; ++m)
                if (m != j) o[k++] = x[s + m] - xc;
            const double denom = (xj - o[0]) * (xj - o[1]) * (xj - o[2]);
            const double e2 = o[0] + o[1] + o[2];
            const double e1 = o[0] * o[1] + o[0] * o[2] + o[1] * o[2];
            const double e0 = o[0] * o[1] * o[2];
            auto anti = [&](double t) {
                return t * t * t * t / 4.0 - e2 * t * t * t / 3.0 + e1 * t * t / 2.0 - e0 * t;
            };
            w[s + j] += (anti(hi) - anti(lo)) / denom;
        }
    }
    return w;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("cumulative trapezoid needs matched arrays");
    std::vector<double> cum(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return cum;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs matched arrays");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw DegenerateInput("line fit abscissae coincide");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::fabs(y[i] - (fit.intercept + fit.slope * x[i]));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

double find_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double x_tol, double value_tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw NoBracket("root finder requires a sign change");

    double c = a, fc = fa;
    for (int iter = 0; iter < 200; ++iter) {
        // Keep b the best estimate, (a, b) the bracket.
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double mid = 0.5 * (c - b);
        if (std::fabs(fb) <= value_tol || std::fabs(mid) <= x_tol) return b;

        double step;
        if (std::fabs(fa) > std::fabs(fb) && fa != fb) {
            // Secant step, clipped into the bracket.
            step = -fb * (b - a) / (fb - fa);
            if (!std::isfinite(step) || std::fabs(step) > std::fabs(mid) * 1.9 ||
                (step > 0.0) != (mid > 0.0))
                step = mid;
        } else {
            step = mid;
        }
        a = b;
        fa = fb;
        b += (std::fabs(step) > x_tol) ? step : (mid > 0 ? x_tol : -x_tol);
        fb = f(b);
        if (fb == 0.0) return b;
    }
    return b;
}

}  // namespace scalekit
