#include "pia/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "pia/errors.hpp"

namespace pia {

OracleProblem example_one() {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    auto value = [=](double x) {
        return x >= 0.0 ? -std::sinh(s6 * x) : -s3 * std::sinh(s2 * x);
    };
    CoefficientField c{
        [](double, double) { return 1.0; },
        [](double, double) { return 0.0; },
        [](double, double a) { return 2.0 + a; },
        [](double, double) { return 0.0; },
        value,
    };
    ControlProblem p(Domain(-1.0, 1.0), ActionSpace::finite({-1.0, 1.0}), std::move(c), 1.0, 1.0);
    return {"example1", std::move(p), value, [](double x) { return sgn(x); }};
}

OracleProblem example_two() {
    auto value = [](double x) { return x >= 0.0 ? -std::sinh(2.0 * x) : -2.0 * std::sinh(x); };
    CoefficientField c{
        [](double, double) { return 1.0; },
        [](double, double) { return 0.0; },
        [](double, double a) { return 4.0 * a + 4.5; },
        [](double x, double) { return -6.5 * std::sinh(2.0 * std::max(x, 0.0)); },
        value,
    };
    ControlProblem p(Domain(-1.0, 1.0), ActionSpace::interval(-1.0, 1.0), std::move(c), 1.0, 0.5);
    return {"example2", std::move(p), value, [](double x) { return sgn(x); }};
}

OracleProblem manufactured_problem() {
    const double cosh1 = std::cosh(1.0);
    auto value = [=](double x) { return 1.0 - std::cosh(x) / cosh1; };
    CoefficientField c{
        [](double, double) { return std::sqrt(2.0); },
        [](double, double) { return 0.0; },
        [](double, double) { return 1.0; },
        [](double, double) { return 1.0; },
        [](double) { return 0.0; },
    };
    ControlProblem p(Domain(-1.0, 1.0), ActionSpace::finite({0.0}), std::move(c), 1.0, 1.0);
    return {"manufactured", std::move(p), value, [](double) { return 0.0; }};
}

OracleProblem oracle_by_name(std::string_view name) {
    if (name == "example1") return example_one();
    if (name == "example2") return example_two();
    if (name == "manufactured") return manufactured_problem();
    throw InvalidArgument("unknown oracle '" + std::string(name) +
                          "' (expected example1, example2 or manufactured)");
}

std::vector<std::string> oracle_names() { return {"example1", "example2", "manufactured"}; }

}  // namespace pia
