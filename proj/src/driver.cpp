#include "pia/driver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "pia/errors.hpp"
#include "pia/evaluation.hpp"
#include "pia/improvement.hpp"

namespace pia {

void PIAConfig::validate() const {
    if (!(residual_tol > 0.0)) throw InvalidArgument("residual_tol must be positive");
    if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
    if (!(monotonicity_slack >= 0.0)) {
        throw InvalidArgument("monotonicity_slack must be nonnegative");
    }
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::ResidualTol: return "ResidualTol";
        case Termination::PolicyFixedPoint: return "PolicyFixedPoint";
        case Termination::MaxIterations: return "MaxIterations";
    }
    return "unknown";
}

PIAReport run_pia(const ControlProblem& p, const GridPolicy& initial_policy,
                  const PIAConfig& cfg) {
    cfg.validate();
    check_policy(p, initial_policy);

    const std::size_t n = initial_policy.grid.n_cells();
    std::vector<IterationRecord> records;
    GridPolicy policy = initial_policy;
    std::optional<GridFunction> previous;

    for (std::size_t iter = 1;; ++iter) {
        try {
            GridFunction value = evaluate_policy(p, policy);
            ImprovementResult improved = improve_policy(p, value, cfg.n_actions);

            IterationRecord rec{iter, improved.max_residual, 0.0, 0.0, 0.0, true};
            const auto [lo, hi] = std::minmax_element(value.values.begin(), value.values.end());
            rec.value_min = *lo;
            rec.value_max = *hi;
            for (std::size_t i = 1; i < n; ++i) {
                rec.policy_change_sup = std::max(
                    rec.policy_change_sup, std::abs(improved.policy.actions[i] - policy.actions[i]));
            }
            if (previous) {
                const double slack = cfg.monotonicity_slack * (1.0 + value.sup_norm());
                for (std::size_t i = 0; i < value.values.size(); ++i) {
                    if (value.values[i] < previous->values[i] - slack) {
                        rec.monotone = false;
                        break;
                    }
                }
            }
            records.push_back(rec);

            std::optional<Termination> stop;
            if (p.actions.is_finite() && rec.policy_change_sup == 0.0) {
                stop = Termination::PolicyFixedPoint;
            } else if (improved.max_residual <= cfg.residual_tol) {
                stop = Termination::ResidualTol;
            } else if (iter >= cfg.max_iterations) {
                stop = Termination::MaxIterations;
            }
            if (stop) {
                return {std::move(records), std::move(value), std::move(policy),
                        *stop != Termination::MaxIterations, *stop};
            }
            previous = std::move(value);
            policy = std::move(improved.policy);
        } catch (const Error& e) {
            throw Error("PIA iteration " + std::to_string(iter) + ": " + e.what());
        }
    }
}

bool check_monotone_sequence(const PIAReport& report) {
    return std::all_of(report.iterations.begin(), report.iterations.end(),
                       [](const IterationRecord& r) { return r.monotone; });
}

}  // namespace pia
