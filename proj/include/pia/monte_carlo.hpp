#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pia/grid.hpp"
#include "pia/problem.hpp"

namespace pia {

struct SimConfig {
    double step = 1e-3;          ///< Euler-Maruyama time step
    std::size_t n_paths = 10000;
    std::uint64_t seed = 0;
    double t_max = 50.0;         ///< paths still alive here are truncated
    std::size_t workers = 0;     ///< 0 picks hardware concurrency; results do not depend on it

    void validate() const;
};

struct PayoffEstimate {
    double mean;
    double std_error;
    std::size_t n_paths;
    double truncated_fraction;
};

/// Euler-Maruyama estimate of the killed payoff of a grid policy started at x0.
///
/// Actions are looked up at the nearest grid node. Discounting is exp(-alpha h)
/// per step and the running reward uses the left endpoint of each step. Exit is
/// detected at step ends only: the state is clamped to the crossed endpoint and
/// the discounted g is paid. Path j draws from its own stream keyed by
/// (seed, j), so estimates are bit-identical for any worker count.
PayoffEstimate simulate_payoff(const ControlProblem& p, const GridPolicy& pol, double x0,
                               const SimConfig& cfg);

enum class Construction { PiConstruction, SigmaConstruction };

struct JointLawEstimate {
    Construction construction;
    double t;
    double prob_estimate;  ///< empirical P(X_t > 0, control_t = -1)
    double std_error;
};

struct TanakaResult {
    JointLawEstimate pi;
    JointLawEstimate sigma;
    double ks_statistic;     ///< two-sample KS distance between the X_t marginals
    double ks_critical_1pct;
};

/// Joint laws of (X, sgn(W)) under the two constructions driven by one random
/// walk W per path: X = W, and X = sum sgn(W_k) (W_{k+1} - W_k).
TanakaResult tanaka_joint_law(double t, const SimConfig& cfg);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value of the two-sample KS statistic at level 1%.
double ks_critical_1pct(std::size_t n, std::size_t m);

/// Seed of the stream for path `index`.
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace pia
