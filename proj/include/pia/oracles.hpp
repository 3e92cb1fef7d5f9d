#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pia/problem.hpp"

namespace pia {

/// An exactly solvable control problem with its value function and an optimal policy.
struct OracleProblem {
    std::string name;
    ControlProblem problem;
    std::function<double(double)> exact_value;
    std::function<double(double)> optimal_policy;
};

/// Bang-bang problem on (-1, 1) with actions {-1, 1}, alpha = 2 + a and only an
/// exit reward. Value -sinh(sqrt6 x) for x >= 0, -sqrt3 sinh(sqrt2 x) for x < 0;
/// sgn is optimal.
OracleProblem example_one();

/// Interval actions [-1, 1], alpha = 4a + 9/2 and a running penalty
/// -(13/2) sinh(2 max(x, 0)). Value -sinh(2x) for x >= 0, -2 sinh(x) for x < 0;
/// sgn is optimal.
OracleProblem example_two();

/// V'' - V + 1 = 0 on (-1, 1) with zero boundary data; V = 1 - cosh(x)/cosh(1).
OracleProblem manufactured_problem();

/// Looks up "example1", "example2" or "manufactured"; throws InvalidArgument otherwise.
OracleProblem oracle_by_name(std::string_view name);

std::vector<std::string> oracle_names();

/// sgn with sgn(0) = 1.
inline double sgn(double x) noexcept { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace pia
