#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pia/driver.hpp"
#include "pia/grid.hpp"
#include "pia/monte_carlo.hpp"
#include "pia/problem.hpp"

namespace pia {

/// Problem description as read from a JSON document:
///
///   {
///     "domain":       {"left": -1, "right": 1},
///     "actions":      {"kind": "interval" | "finite", "values": [...]},
///     "coefficients": {"sigma": "...", "mu": "...", "alpha": "...", "f": "...", "g": "..."},
///     "floors":       {"sigma_min": 1, "alpha_min": 0},
///     "grid":         {"n_cells": 1000},
///     "pia":          {"residual_tol": 1e-8, "max_iterations": 50, "n_actions": 101,
///                      "initial_policy": "..."},
///     "sim":          {"step": 1e-3, "n_paths": 100000, "seed": 1, "t_max": 50}
///   }
///
/// sigma, mu, alpha and f are expressions in x and a; g and initial_policy
/// are expressions in x. "pia" and "sim" may be omitted or partial.
struct ProblemSpecFile {
    double left = -1.0;
    double right = 1.0;
    ActionSpace::Kind action_kind = ActionSpace::Kind::Interval;
    std::vector<double> action_values;
    std::string sigma;
    std::string mu;
    std::string alpha;
    std::string f;
    std::string g;
    double sigma_min = 1.0;
    double alpha_min = 0.0;
    std::size_t n_cells = 1000;
    PIAConfig pia;
    std::string initial_policy;  ///< empty means the smallest action
    SimConfig sim;

    /// Throws ParseError for malformed JSON and InvalidArgument naming the
    /// offending field for missing or out-of-range values.
    static ProblemSpecFile parse(std::string_view json_text);
    static ProblemSpecFile load(const std::string& path);

    /// Canonical JSON text; parse(serialize()) reproduces every field.
    std::string serialize() const;

    ControlProblem build_problem() const;
    Grid build_grid() const;
    /// Initial policy sampled at the grid nodes.
    GridPolicy build_initial_policy(const ControlProblem& p) const;
};

/// Expression-language description of a built-in oracle, with the run
/// settings used for its reference solves.
ProblemSpecFile oracle_spec(std::string_view name);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

}  // namespace pia
