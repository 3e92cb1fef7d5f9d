#include "pia/improvement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pia/errors.hpp"

namespace pia {

namespace {

void check_grid(const ControlProblem& p, const Grid& g) {
    if (g.domain().left != p.domain.left || g.domain().right != p.domain.right) {
        throw InvalidArgument("value function grid does not span the problem domain");
    }
}

double objective_at(const ControlProblem& p, double x, const DifferenceDerivatives& d, double v,
                    double a) {
    const LocalCoefficients c = p.at(x, a);
    const double dv = c.mu >= 0.0 ? d.forward : d.backward;
    return 0.5 * c.sigma * c.sigma * d.second + c.mu * dv - c.alpha * v + c.running_cost;
}

}  // namespace

double improvement_objective(const ControlProblem& p, const GridFunction& v, std::size_t i,
                             double a) {
    check_grid(p, v.grid);
    return objective_at(p, v.grid.node(i), difference_derivatives(v, i), v.values[i], a);
}

ImprovementResult improve_policy(const ControlProblem& p, const GridFunction& v,
                                 std::size_t n_actions) {
    check_grid(p, v.grid);
    const std::vector<double> candidates = p.actions.candidates(n_actions);
    const Grid& grid = v.grid;
    const std::size_t n = grid.n_cells();

    std::vector<double> actions(grid.n_nodes());
    std::vector<double> residual(grid.n_nodes(), 0.0);
    double max_residual = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double x = grid.node(i);
        const DifferenceDerivatives d = difference_derivatives(v, i);
        double best = 0.0;
        double best_a = candidates.front();
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            double value;
            try {
                value = objective_at(p, x, d, v.values[i], candidates[k]);
            } catch (const EvaluationError& e) {
                throw EvaluationError(std::string(e.what()) + " (node " + std::to_string(i) +
                                      ")");
            }
            // strict comparison over ascending candidates keeps the smallest maximiser
            if (k == 0 || value > best) {
                best = value;
                best_a = candidates[k];
            }
        }
        actions[i] = best_a;
        residual[i] = best;
        max_residual = std::max(max_residual, std::abs(best));
    }
    actions.front() = actions[1];
    actions.back() = actions[n - 1];
    return {GridPolicy(grid, std::move(actions)), GridFunction(grid, std::move(residual)),
            max_residual};
}

double hjb_residual(const ControlProblem& p, const GridFunction& v, std::size_t n_actions) {
    return improve_policy(p, v, n_actions).max_residual;
}

}  // namespace pia
