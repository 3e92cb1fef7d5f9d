#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pia/grid.hpp"
#include "pia/problem.hpp"

namespace pia {

struct PIAConfig {
    double residual_tol = 1e-8;
    std::size_t max_iterations = 100;
    std::size_t n_actions = 101;
    /// Relative slack for the monotonicity flag; the absolute slack at
    /// iteration n is monotonicity_slack * (1 + |V_n|_inf).
    double monotonicity_slack = 1e-8;

    void validate() const;
};

struct IterationRecord {
    std::size_t index;  ///< 1-based
    double max_residual;
    double value_min;
    double value_max;
    double policy_change_sup;  ///< sup over interior nodes of |pi_{n+1} - pi_n|
    bool monotone;             ///< V_n >= V_{n-1} - slack at every node; true for n = 1
};

enum class Termination { ResidualTol, PolicyFixedPoint, MaxIterations };

std::string_view to_string(Termination t) noexcept;

/// final_value is the payoff of final_policy, i.e. the last evaluated pair.
struct PIAReport {
    std::vector<IterationRecord> iterations;
    GridFunction final_value;
    GridPolicy final_policy;
    bool converged;
    Termination termination;
};

/// Alternates evaluate_policy and improve_policy from initial_policy.
///
/// Stops with PolicyFixedPoint when a finite action space yields the same
/// interior policy twice, with ResidualTol when the HJB residual of the
/// current payoff drops to cfg.residual_tol, otherwise after
/// cfg.max_iterations evaluations.
PIAReport run_pia(const ControlProblem& p, const GridPolicy& initial_policy, const PIAConfig& cfg);

/// True iff every iteration record is flagged monotone.
bool check_monotone_sequence(const PIAReport& report);

}  // namespace pia
