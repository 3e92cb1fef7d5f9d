#pragma once

#include <cstddef>

#include "pia/grid.hpp"
#include "pia/problem.hpp"

namespace pia {

struct ImprovementResult {
    GridPolicy policy;      ///< pointwise argmax; boundary entries copy their interior neighbour
    GridFunction residual;  ///< achieved maxima at interior nodes, 0 at the ends
    double max_residual;    ///< sup-norm of the interior residual
};

/// L^a V + f(., a) at interior node i with the upwind side chosen by the sign
/// of mu(x_i, a), consistent with assemble_operator.
double improvement_objective(const ControlProblem& p, const GridFunction& v, std::size_t i,
                             double a);

/// Improvement step: at each interior node, maximise the objective over the
/// candidate actions (finite sets as-is, intervals sampled at n_actions
/// points). Ties go to the smallest action.
ImprovementResult improve_policy(const ControlProblem& p, const GridFunction& v,
                                 std::size_t n_actions);

/// improve_policy(p, v, n_actions).max_residual.
double hjb_residual(const ControlProblem& p, const GridFunction& v, std::size_t n_actions);

}  // namespace pia
