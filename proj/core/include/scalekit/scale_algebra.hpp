#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalekit/errors.hpp"

namespace scalekit {

/// Map from a raw observation y to the constrained observable f(y).
class ObservableMap {
public:
    enum class Kind { Identity, SquaredDeviation, AbsoluteValue, LogOfValue };

    static ObservableMap identity() { return ObservableMap(Kind::Identity, 0.0); }
    static ObservableMap squared_deviation(double center) {
        return ObservableMap(Kind::SquaredDeviation, center);
    }
    static ObservableMap absolute_value() { return ObservableMap(Kind::AbsoluteValue, 0.0); }
    static ObservableMap log_of_value() { return ObservableMap(Kind::LogOfValue, 0.0); }

    /// f(y). Throws DomainError outside the map's domain (log of y <= 0).
    double operator()(double y) const;
    /// df/dy. Throws DomainError where the map is not differentiable.
    double derivative(double y) const;
    bool contains(double y) const noexcept;

    Kind kind() const noexcept { return kind_; }
    double center() const noexcept { return center_; }

private:
    ObservableMap(Kind kind, double center) : kind_(kind), center_(center) {}
    Kind kind_;
    double center_;
};

/// Closed expression tree for base measurement scales w. Immutable after
/// construction: nodes are shared, evaluation is pure, and analytic
/// derivatives are available everywhere the expression is defined.
///
/// Nodes:
///   linear                 w(v) = v
///   log_deform(c, inner)   w(v) = log(c + inner(v)),  c >= 0
///   linear_combination     w(v) = sum_i coef_i * inner_i(v)  (empty sum = 0)
///   power(p, inner)        w(v) = inner(v)^p,  inner(v) > 0
///
/// A constant a is expressed as log_deform(exp(a), empty combination).
class ScaleExpr {
public:
    enum class NodeKind { Linear, LogDeform, LinearCombination, Power };

    static ScaleExpr linear();
    static ScaleExpr log_deform(double c, ScaleExpr inner);
    static ScaleExpr linear_combination(std::vector<std::pair<double, ScaleExpr>> terms);
    static ScaleExpr power(double exponent, ScaleExpr inner);
    static ScaleExpr constant(double value);

    double value(double v) const;
    double derivative(double v) const;
    bool contains(double v) const noexcept;

    NodeKind node_kind() const noexcept;
    double log_offset() const;  // c of a LogDeform node
    double exponent() const;    // p of a Power node
    ScaleExpr inner() const;    // child of LogDeform / Power
    const std::vector<std::pair<double, ScaleExpr>>& terms() const;

private:
    struct Node;
    explicit ScaleExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Full scaling relation applied on top of a base scale w.
///
/// ExponentialWrap evaluates (exp(beta*w) - 1)/beta with beta > 0; the form
/// is affine-equivalent to exp(beta*w) and tends to w as beta -> 0, which is
/// exactly the AffineLimit mode.
class MeasurementScale {
public:
    enum class Mode { ExponentialWrap, AffineLimit };

    static MeasurementScale affine_limit(ScaleExpr base);
    static MeasurementScale exponential_wrap(ScaleExpr base, double beta);

    /// T(w).
    double value(double w) const;
    /// dT/dw.
    double derivative(double w) const;
    /// exp(beta*w) in wrap mode, w itself in the affine limit. This is the
    /// undeformed scaling value; extreme-value tail scales validate against
    /// it since the wrapped form is only affine-equivalent to it.
    double raw_scaling(double w) const;

    const ScaleExpr& base() const noexcept { return base_; }
    double beta() const noexcept { return beta_; }
    Mode mode() const noexcept { return mode_; }

private:
    MeasurementScale(ScaleExpr base, double beta, Mode mode)
        : base_(std::move(base)), beta_(beta), mode_(mode) {}
    ScaleExpr base_;
    double beta_;
    Mode mode_;
};

/// Invariance transformation G, applied to the observable value fed into
/// the measurement scale: shift delta+f, affine delta+theta*f, or power law
/// c*f^gamma.
class Transform {
public:
    enum class Kind { Shift, Affine, PowerLaw };

    static Transform shift(double delta);
    static Transform affine(double delta, double theta);
    static Transform power_law(double c, double gamma);

    Kind kind() const noexcept { return kind_; }
    double delta() const noexcept { return delta_; }
    double theta() const noexcept { return theta_; }
    double coefficient() const noexcept { return c_; }
    double gamma() const noexcept { return gamma_; }

private:
    Transform() = default;
    Kind kind_ = Kind::Shift;
    double delta_ = 0.0;
    double theta_ = 1.0;
    double c_ = 1.0;
    double gamma_ = 1.0;
};

/// T(f(y)) through the full pipeline y -> f -> w -> T.
double eval_scale(const MeasurementScale& scale, const ObservableMap& observable, double y);

/// d/dy T(f(y)) by the chain rule on the expression tree.
double eval_scale_derivative(const MeasurementScale& scale, const ObservableMap& observable,
                             double y);

/// G applied to a scalar: delta+v, delta+theta*v, or c*v^gamma.
double apply_transform(const Transform& t, double value);

/// T(base(G(f(y)))): the scale evaluated after transforming the observable.
double eval_transformed_scale(const MeasurementScale& scale, const ObservableMap& observable,
                              const Transform& t, double y);

struct InvarianceReport {
    bool is_invariant = false;
    double fitted_a = 0.0;
    double fitted_b = 0.0;
    double max_residual = 0.0;
};

/// Least-squares test of T o G = a + b T over the sample points.
InvarianceReport check_affine_invariance(const MeasurementScale& scale,
                                         const ObservableMap& observable, const Transform& t,
                                         std::span<const double> sample_points,
                                         double tolerance = 1e-9);

/// 64 log-spaced points covering [lo, hi], the default sampling used by the
/// invariance checker when the caller has only a support range.
std::vector<double> default_invariance_points(double lo, double hi, std::size_t count = 64);

}  // namespace scalekit
