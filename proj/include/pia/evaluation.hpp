#pragma once

#include "pia/grid.hpp"
#include "pia/problem.hpp"

namespace pia {

/// Payoff of a Markov grid policy: V[0] = g(left), V[n] = g(right) and the
/// interior solves the policy-frozen upwind system -L^pi V = f(., pi).
GridFunction evaluate_policy(const ControlProblem& p, const GridPolicy& pol);

/// max over interior nodes of |L^pi V + f(., pi)| using the same stencil as
/// the assembly.
double evaluation_residual(const ControlProblem& p, const GridPolicy& pol, const GridFunction& v);

}  // namespace pia
