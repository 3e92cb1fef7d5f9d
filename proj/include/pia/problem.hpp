#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pia {

/// Open interval (left, right) with finite endpoints.
struct Domain {
    double left = 0.0;
    double right = 1.0;

    Domain() = default;
    Domain(double l, double r);

    double width() const noexcept { return right - left; }
    bool contains_closed(double x) const noexcept { return x >= left && x <= right; }
};

/// Compact action set: either a closed interval or a finite, strictly increasing list.
class ActionSpace {
public:
    enum class Kind { Interval, Finite };

    static ActionSpace interval(double a_min, double a_max);
    static ActionSpace finite(std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

    /// Finite: the listed values. Interval: {a_min, a_max}.
    const std::vector<double>& values() const noexcept { return values_; }

    bool contains(double a) const noexcept;

    /// Candidate actions for maximisation. Finite sets are returned as-is;
    /// intervals are sampled at `n` equally spaced points, both endpoints included.
    std::vector<double> candidates(std::size_t n) const;

private:
    ActionSpace(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}

    Kind kind_;
    std::vector<double> values_;
};

using StateActionFn = std::function<double(double x, double a)>;
using StateFn = std::function<double(double x)>;

/// Coefficients of the killed diffusion dX = mu dt + sigma dW with killing rate
/// alpha, running reward and exit reward. Functions must be re-entrant.
struct CoefficientField {
    StateActionFn sigma;
    StateActionFn mu;
    StateActionFn alpha;
    StateActionFn running_cost;
    StateFn boundary_payoff;
};

/// Coefficients evaluated at a single (x, a).
struct LocalCoefficients {
    double sigma;
    double mu;
    double alpha;
    double running_cost;
};

struct ControlProblem {
    Domain domain;
    ActionSpace actions;
    CoefficientField coeffs;
    double sigma_min;  ///< declared ellipticity floor, > 0
    double alpha_min;  ///< declared killing floor, >= 0

    ControlProblem(Domain d, ActionSpace a, CoefficientField c, double sigma_floor,
                   double alpha_floor);

    /// Evaluates all state-action coefficients; throws EvaluationError naming the
    /// first non-finite one.
    LocalCoefficients at(double x, double a) const;

    /// Exit reward g(x); throws EvaluationError when non-finite.
    double boundary_payoff(double x) const;
};

struct Violation {
    std::string check;
    double x;
    double a;
    double observed;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;
};

/// Samples an n_x by n_a tensor grid over the closed domain and the action set
/// and reports floor and finiteness violations. The Lipschitz conditions of the
/// standing assumptions are not checkable from black-box functions and are not
/// tested. For finite action sets every listed action is sampled and n_a is ignored.
ValidationReport validate_problem(const ControlProblem& p, std::size_t n_x, std::size_t n_a);

/// 1/2 sigma^2 d2v + mu dv - alpha v at (x, a).
double apply_generator(const ControlProblem& p, double x, double a, double v, double dv,
                       double d2v);

}  // namespace pia
