#pragma once

#include <functional>
#include <span>
#include <vector>

namespace scalekit {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    bool converged = false;
    std::size_t evaluations = 0;

    QuadratureResult& operator+=(const QuadratureResult& other) {
        value += other.value;
        error += other.error;
        converged = converged && other.converged;
        evaluations += other.evaluations;
        return *this;
    }
};

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol = 1e-12,
                                    std::size_t max_intervals = 4000);

/// Integral over [a, +inf) via the algebraic substitution y = a + (1-t)/t,
/// which handles both exponential and power-law tails.
QuadratureResult integrate_upper_tail(const std::function<double(double)>& f, double a,
                                      double abs_tol, double rel_tol = 1e-12);

/// Integral over (-inf, b], mirrored substitution.
QuadratureResult integrate_lower_tail(const std::function<double(double)>& f, double b,
                                      double abs_tol, double rel_tol = 1e-12);

/// Fourth-order integration of tabulated values on a strictly increasing
/// grid: each interval uses the cubic through its four nearest samples.
double integrate_tabulated(std::span<const double> x, std::span<const double> y);

/// Node weights of the same rule, so integrate_tabulated(x, y) equals
/// dot(weights(x), y); useful when many integrands share one grid.
std::vector<double> tabulated_weights(std::span<const double> x);

/// Cumulative trapezoid values, same length as the grid, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Brent-style root bracketing refinement. Requires f(a) and f(b) of opposite
/// sign; returns the abscissa where |f| first satisfies value_tol, or the
/// bracket midpoint once the bracket collapses to x_tol.
double find_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double x_tol, double value_tol);

}  // namespace scalekit
