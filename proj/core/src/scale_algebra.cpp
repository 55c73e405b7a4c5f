#include "scalekit/scale_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scalekit {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double ObservableMap::operator()(double y) const {
    switch (kind_) {
        case Kind::Identity:
            return y;
        case Kind::SquaredDeviation: {
            const double d = y - center_;
            return d * d;
        }
        case Kind::AbsoluteValue:
            return std::fabs(y);
        case Kind::LogOfValue:
            if (!(y > 0.0)) throw DomainError("log observable requires y > 0");
            return std::log(y);
    }
    throw DomainError("unknown observable kind");
}

double ObservableMap::derivative(double y) const {
    switch (kind_) {
        case Kind::Identity:
            return 1.0;
        case Kind::SquaredDeviation:
            return 2.0 * (y - center_);
        case Kind::AbsoluteValue:
            if (y == 0.0) throw DomainError("|y| is not differentiable at 0");
            return y > 0.0 ? 1.0 : -1.0;
        case Kind::LogOfValue:
            if (!(y > 0.0)) throw DomainError("log observable requires y > 0");
            return 1.0 / y;
    }
    throw DomainError("unknown observable kind");
}

bool ObservableMap::contains(double y) const noexcept {
    if (!finite(y)) return false;
    return kind_ != Kind::LogOfValue || y > 0.0;
}

struct ScaleExpr::Node {
    NodeKind kind = NodeKind::Linear;
    double c = 0.0;         // LogDeform offset
    double exponent = 1.0;  // Power exponent
    std::shared_ptr<const Node> inner;
    std::vector<std::pair<double, ScaleExpr>> terms;
};

ScaleExpr ScaleExpr::linear() {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Linear;
    return ScaleExpr(std::move(node));
}

ScaleExpr ScaleExpr::log_deform(double c, ScaleExpr inner) {
    if (!(c >= 0.0)) throw DomainError("log deformation offset must be >= 0");
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::LogDeform;
    node->c = c;
    node->inner = inner.node_;
    return ScaleExpr(std::move(node));
}

ScaleExpr ScaleExpr::linear_combination(std::vector<std::pair<double, ScaleExpr>> terms) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::LinearCombination;
    node->terms = std::move(terms);
    return ScaleExpr(std::move(node));
}

ScaleExpr ScaleExpr::power(double exponent, ScaleExpr inner) {
    if (exponent == 0.0) throw DomainError("power node requires a nonzero exponent");
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Power;
    node->exponent = exponent;
    node->inner = inner.node_;
    return ScaleExpr(std::move(node));
}

ScaleExpr ScaleExpr::constant(double value) {
    if (std::fabs(value) > 700.0)
        throw DomainError("constant magnitude too large for the log-deform encoding");
    return log_deform(std::exp(value), linear_combination({}));
}

ScaleExpr::NodeKind ScaleExpr::node_kind() const noexcept { return node_->kind; }

double ScaleExpr::log_offset() const {
    if (node_->kind != NodeKind::LogDeform) throw DomainError("not a log-deform node");
    return node_->c;
}

double ScaleExpr::exponent() const {
    if (node_->kind != NodeKind::Power) throw DomainError("not a power node");
    return node_->exponent;
}

ScaleExpr ScaleExpr::inner() const {
    if (node_->kind != NodeKind::LogDeform && node_->kind != NodeKind::Power)
        throw DomainError("node has no single child");
    return ScaleExpr(node_->inner);
}

const std::vector<std::pair<double, ScaleExpr>>& ScaleExpr::terms() const {
    if (node_->kind != NodeKind::LinearCombination)
        throw DomainError("not a linear combination node");
    return node_->terms;
}

double ScaleExpr::value(double v) const {
    const Node& n = *node_;
    switch (n.kind) {
        case NodeKind::Linear:
            return v;
        case NodeKind::LogDeform: {
            const double arg = n.c + ScaleExpr(n.inner).value(v);
            if (!(arg > 0.0)) throw DomainError("log deformation argument must be positive");
            return std::log(arg);
        }
        case NodeKind::LinearCombination: {
            double sum = 0.0;
            for (const auto& [coef, expr] : n.terms) sum += coef * expr.value(v);
            return sum;
        }
        case NodeKind::Power: {
            const double base = ScaleExpr(n.inner).value(v);
            if (!(base > 0.0)) throw DomainError("power node requires a positive base");
            return std::pow(base, n.exponent);
        }
    }
    throw DomainError("unknown scale node");
}

double ScaleExpr::derivative(double v) const {
    const Node& n = *node_;
    switch (n.kind) {
        case NodeKind::Linear:
            return 1.0;
        case NodeKind::LogDeform: {
            const ScaleExpr inner_expr(n.inner);
            const double arg = n.c + inner_expr.value(v);
            if (!(arg > 0.0)) throw DomainError("log deformation argument must be positive");
            return inner_expr.derivative(v) / arg;
        }
        case NodeKind::LinearCombination: {
            double sum = 0.0;
            for (const auto& [coef, expr] : n.terms) sum += coef * expr.derivative(v);
            return sum;
        }
        case NodeKind::Power: {
            const ScaleExpr inner_expr(n.inner);
            const double base = inner_expr.value(v);
            if (!(base > 0.0)) throw DomainError("power node requires a positive base");
            return n.exponent * std::pow(base, n.exponent - 1.0) * inner_expr.derivative(v);
        }
    }
    throw DomainError("unknown scale node");
}

bool ScaleExpr::contains(double v) const noexcept {
    if (!finite(v)) return false;
    const Node& n = *node_;
    switch (n.kind) {
        case NodeKind::Linear:
            return true;
        case NodeKind::LogDeform: {
            const ScaleExpr inner_expr(n.inner);
            if (!inner_expr.contains(v)) return false;
            double val;
            try {
                val = inner_expr.value(v);
            } catch (const Error&) {
                return false;
            }
            return n.c + val > 0.0;
        }
        case NodeKind::LinearCombination:
            return std::all_of(n.terms.begin(), n.terms.end(),
                               [v](const auto& t) { return t.second.contains(v); });
        case NodeKind::Power: {
            const ScaleExpr inner_expr(n.inner);
            if (!inner_expr.contains(v)) return false;
            try {
                return inner_expr.value(v) > 0.0;
            } catch (const Error&) {
                return false;
            }
        }
    }
    return false;
}

MeasurementScale MeasurementScale::affine_limit(ScaleExpr base) {
    return MeasurementScale(std::move(base), 0.0, Mode::AffineLimit);
}

MeasurementScale MeasurementScale::exponential_wrap(ScaleExpr base, double beta) {
    if (!(beta > 0.0)) throw DomainError("exponential wrap requires beta > 0");
    return MeasurementScale(std::move(base), beta, Mode::ExponentialWrap);
}

double MeasurementScale::value(double w) const {
    if (mode_ == Mode::AffineLimit) return w;
    return std::expm1(beta_ * w) / beta_;
}

double MeasurementScale::derivative(double w) const {
    if (mode_ == Mode::AffineLimit) return 1.0;
    return std::exp(beta_ * w);
}

double MeasurementScale::raw_scaling(double w) const {
    if (mode_ == Mode::AffineLimit) return w;
    return std::exp(beta_ * w);
}

Transform Transform::shift(double delta) {
    Transform t;
    t.kind_ = Kind::Shift;
    t.delta_ = delta;
    return t;
}

Transform Transform::affine(double delta, double theta) {
    if (theta == 0.0) throw DomainError("affine transform requires theta != 0");
    Transform t;
    t.kind_ = Kind::Affine;
    t.delta_ = delta;
    t.theta_ = theta;
    return t;
}

Transform Transform::power_law(double c, double gamma) {
    if (!(c > 0.0)) throw DomainError("power-law transform requires c > 0");
    if (gamma == 0.0) throw DomainError("power-law transform requires gamma != 0");
    Transform t;
    t.kind_ = Kind::PowerLaw;
    t.c_ = c;
    t.gamma_ = gamma;
    return t;
}

double apply_transform(const Transform& t, double value) {
    switch (t.kind()) {
        case Transform::Kind::Shift:
            return t.delta() + value;
        case Transform::Kind::Affine:
            return t.delta() + t.theta() * value;
        case Transform::Kind::PowerLaw:
            if (!(value > 0.0)) throw DomainError("power-law transform requires positive input");
            return t.coefficient() * std::pow(value, t.gamma());
    }
    throw DomainError("unknown transform kind");
}

double eval_scale(const MeasurementScale& scale, const ObservableMap& observable, double y) {
    const double f = observable(y);
    const double w = scale.base().value(f);
    const double result = scale.value(w);
    if (!finite(result)) throw DomainError("scale evaluation is not finite");
    return result;
}

double eval_scale_derivative(const MeasurementScale& scale, const ObservableMap& observable,
                             double y) {
    const double f = observable(y);
    const double w = scale.base().value(f);
    const double result = scale.derivative(w) * scale.base().derivative(f) *
                          observable.derivative(y);
    if (!finite(result)) throw DomainError("scale derivative is not finite");
    return result;
}

double eval_transformed_scale(const MeasurementScale& scale, const ObservableMap& observable,
                              const Transform& t, double y) {
    const double transformed = apply_transform(t, observable(y));
    return scale.value(scale.base().value(transformed));
}

InvarianceReport check_affine_invariance(const MeasurementScale& scale,
                                         const ObservableMap& observable, const Transform& t,
                                         std::span<const double> sample_points,
                                         double tolerance) {
    std::vector<double> xs, ys;
    xs.reserve(sample_points.size());
    ys.reserve(sample_points.size());
    for (double y : sample_points) {
        xs.push_back(eval_scale(scale, observable, y));
        ys.push_back(eval_transformed_scale(scale, observable, t, y));
    }

    std::vector<double> distinct(xs);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw DegenerateInput("invariance check needs at least 3 distinct scale values");

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    double span = distinct.back() - distinct.front();
    if (!(span > 0.0) || det == 0.0)
        throw DegenerateInput("scale values coincide, affine fit is underdetermined");

    InvarianceReport report;
    report.fitted_b = (n * sxy - sx * sy) / det;
    report.fitted_a = (sy - report.fitted_b * sx) / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::fabs(ys[i] - (report.fitted_a + report.fitted_b * xs[i]));
        report.max_residual = std::max(report.max_residual, r);
    }
    report.is_invariant = report.max_residual < tolerance;
    return report;
}

std::vector<double> default_invariance_points(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi > lo)) throw DomainError("log-spaced points require 0 < lo < hi");
    if (count < 3) throw DomainError("need at least 3 sample points");
    std::vector<double> pts(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        pts[i] = std::exp(llo + t * (lhi - llo));
    }
    return pts;
}

}  // namespace scalekit
