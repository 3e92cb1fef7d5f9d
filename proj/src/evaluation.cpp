#include "pia/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "pia/errors.hpp"

namespace pia {

GridFunction evaluate_policy(const ControlProblem& p, const GridPolicy& pol) {
    const TridiagonalSystem sys = assemble_operator(p, pol);
    const std::vector<double> interior = solve_tridiagonal(sys);

    const Grid& grid = pol.grid;
    std::vector<double> v(grid.n_nodes());
    v.front() = p.boundary_payoff(grid.node(0));
    v.back() = p.boundary_payoff(grid.node(grid.n_cells()));
    std::copy(interior.begin(), interior.end(), v.begin() + 1);
    return GridFunction(grid, std::move(v));
}

double evaluation_residual(const ControlProblem& p, const GridPolicy& pol, const GridFunction& v) {
    if (!(v.grid == pol.grid)) {
        throw InvalidArgument("value and policy live on different grids");
    }
    const double h = v.grid.spacing();
    double worst = 0.0;
    for (std::size_t i = 1; i < v.grid.n_cells(); ++i) {
        const LocalCoefficients c = p.at(v.grid.node(i), pol.actions[i]);
        const StencilRow row = upwind_row(c, h);
        const double minus_lv =
            row.sub * v.values[i - 1] + row.diag * v.values[i] + row.super * v.values[i + 1];
        worst = std::max(worst, std::abs(c.running_cost - minus_lv));
    }
    return worst;
}

}  // namespace pia
