#include "pia/problem.hpp"

#include <algorithm>
#include <cmath>

#include "pia/errors.hpp"

namespace pia {

namespace {

// Both endpoints are reproduced exactly.
double anchored_point(double lo, double hi, std::size_t i, std::size_t n) {
    if (i == 0) return lo;
    if (i == n) return hi;
    const auto fi = static_cast<double>(i);
    const auto fn = static_cast<double>(n);
    return (lo * (fn - fi) + hi * fi) / fn;
}

std::string coord_suffix(double x, double a) {
    return " at x=" + std::to_string(x) + ", a=" + std::to_string(a);
}

}  // namespace

Domain::Domain(double l, double r) : left(l), right(r) {
    if (!std::isfinite(l) || !std::isfinite(r) || !(l < r)) {
        throw InvalidArgument("domain requires finite left < right, got (" + std::to_string(l) +
                              ", " + std::to_string(r) + ")");
    }
}

ActionSpace ActionSpace::interval(double a_min, double a_max) {
    if (!std::isfinite(a_min) || !std::isfinite(a_max) || a_min > a_max) {
        throw InvalidArgument("interval action space requires finite a_min <= a_max");
    }
    return ActionSpace(Kind::Interval, {a_min, a_max});
}

ActionSpace ActionSpace::finite(std::vector<double> values) {
    if (values.empty()) {
        throw InvalidArgument("finite action space must be nonempty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidArgument("finite action space contains a non-finite value");
        }
        if (i > 0 && !(values[i - 1] < values[i])) {
            throw InvalidArgument("finite action space must be strictly increasing");
        }
    }
    return ActionSpace(Kind::Finite, std::move(values));
}

bool ActionSpace::contains(double a) const noexcept {
    if (kind_ == Kind::Interval) {
        return a >= values_.front() && a <= values_.back();
    }
    return std::binary_search(values_.begin(), values_.end(), a);
}

std::vector<double> ActionSpace::candidates(std::size_t n) const {
    if (kind_ == Kind::Finite) {
        return values_;
    }
    if (values_.front() == values_.back()) {
        return {values_.front()};
    }
    if (n < 2) {
        throw InvalidArgument("interval action space needs n_actions >= 2");
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = anchored_point(values_.front(), values_.back(), k, n - 1);
    }
    return out;
}

ControlProblem::ControlProblem(Domain d, ActionSpace a, CoefficientField c, double sigma_floor,
                               double alpha_floor)
    : domain(d), actions(std::move(a)), coeffs(std::move(c)), sigma_min(sigma_floor),
      alpha_min(alpha_floor) {
    if (!(sigma_min > 0.0) || !std::isfinite(sigma_min)) {
        throw InvalidArgument("sigma_min must be a finite positive number");
    }
    if (!(alpha_min >= 0.0) || !std::isfinite(alpha_min)) {
        throw InvalidArgument("alpha_min must be finite and nonnegative");
    }
    if (!coeffs.sigma || !coeffs.mu || !coeffs.alpha || !coeffs.running_cost ||
        !coeffs.boundary_payoff) {
        throw InvalidArgument("every coefficient function must be set");
    }
}

LocalCoefficients ControlProblem::at(double x, double a) const {
    LocalCoefficients c{coeffs.sigma(x, a), coeffs.mu(x, a), coeffs.alpha(x, a),
                        coeffs.running_cost(x, a)};
    if (!std::isfinite(c.sigma)) throw EvaluationError("sigma is non-finite" + coord_suffix(x, a));
    if (!std::isfinite(c.mu)) throw EvaluationError("mu is non-finite" + coord_suffix(x, a));
    if (!std::isfinite(c.alpha)) throw EvaluationError("alpha is non-finite" + coord_suffix(x, a));
    if (!std::isfinite(c.running_cost)) {
        throw EvaluationError("running_cost is non-finite" + coord_suffix(x, a));
    }
    return c;
}

double ControlProblem::boundary_payoff(double x) const {
    const double g = coeffs.boundary_payoff(x);
    if (!std::isfinite(g)) {
        throw EvaluationError("boundary_payoff is non-finite at x=" + std::to_string(x));
    }
    return g;
}

ValidationReport validate_problem(const ControlProblem& p, std::size_t n_x, std::size_t n_a) {
    if (n_x < 2 || n_a < 1) {
        throw InvalidArgument("validate_problem requires n_x >= 2 and n_a >= 1");
    }
    std::vector<double> actions;
    if (p.actions.is_finite() || n_a == 1) {
        actions = p.actions.is_finite() ? p.actions.values()
                                        : std::vector<double>{p.actions.min()};
    } else {
        actions = p.actions.candidates(n_a);
    }

    ValidationReport report;
    auto flag = [&](const char* check, double x, double a, double v) {
        report.violations.push_back({check, x, a, v});
    };
    for (std::size_t i = 0; i < n_x; ++i) {
        const double x = anchored_point(p.domain.left, p.domain.right, i, n_x - 1);
        for (double a : actions) {
            const double sigma = p.coeffs.sigma(x, a);
            const double mu = p.coeffs.mu(x, a);
            const double alpha = p.coeffs.alpha(x, a);
            const double f = p.coeffs.running_cost(x, a);
            if (!std::isfinite(sigma)) flag("sigma_finite", x, a, sigma);
            else if (std::abs(sigma) < p.sigma_min) flag("sigma_floor", x, a, sigma);
            if (!std::isfinite(mu)) flag("mu_finite", x, a, mu);
            if (!std::isfinite(alpha)) flag("alpha_finite", x, a, alpha);
            else if (alpha < p.alpha_min) flag("alpha_floor", x, a, alpha);
            if (!std::isfinite(f)) flag("running_cost_finite", x, a, f);
        }
    }
    for (double x : {p.domain.left, p.domain.right}) {
        const double g = p.coeffs.boundary_payoff(x);
        if (!std::isfinite(g)) flag("boundary_payoff_finite", x, 0.0, g);
    }
    report.passed = report.violations.empty();
    return report;
}

double apply_generator(const ControlProblem& p, double x, double a, double v, double dv,
                       double d2v) {
    const double sigma = p.coeffs.sigma(x, a);
    const double mu = p.coeffs.mu(x, a);
    const double alpha = p.coeffs.alpha(x, a);
    if (!std::isfinite(sigma)) throw EvaluationError("sigma is non-finite" + coord_suffix(x, a));
    if (!std::isfinite(mu)) throw EvaluationError("mu is non-finite" + coord_suffix(x, a));
    if (!std::isfinite(alpha)) throw EvaluationError("alpha is non-finite" + coord_suffix(x, a));
    return 0.5 * sigma * sigma * d2v + mu * dv - alpha * v;
}

}  // namespace pia
