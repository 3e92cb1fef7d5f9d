#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pia/evaluation.hpp"
#include "pia/improvement.hpp"
#include "pia/oracles.hpp"

using namespace pia;

TEST_CASE("example two: objective and argmax at the exact value") {
    const OracleProblem o = example_two();
    const Grid g(Domain(-1, 1), 400);
    const auto v = GridFunction::from(g, o.exact_value);
    const double h = g.spacing();

    for (std::size_t i : {250u, 300u, 390u}) {
        const double x = g.node(i);
        REQUIRE(x > 0.0);
        // sigma = 1 and V'' = 4V for x > 0, so the objective is sinh(2x)(4a - 4) + O(h^2)
        for (double a : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
            const double expected = std::sinh(2 * x) * (4 * a - 4);
            CHECK(improvement_objective(o.problem, v, i, a) ==
                  doctest::Approx(expected).scale(1.0).epsilon(10 * h * h * std::cosh(2.0)));
        }
    }
    const auto res = improve_policy(o.problem, v, 201);
    for (std::size_t i = 1; i < g.n_cells(); ++i) {
        const double x = g.node(i);
        if (x > 0.0) {
            CHECK(res.policy.actions[i] == 1.0);
        } else if (x < 0.0) {
            CHECK(res.policy.actions[i] == -1.0);
        }
        if (x != 0.0) CHECK(std::abs(res.residual.values[i]) < 1e-3);
    }
    CHECK(res.residual.values.front() == 0.0);
    CHECK(res.residual.values.back() == 0.0);
}

TEST_CASE("degenerate objective: ties go to the smallest action") {
    CoefficientField c{[](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                       [](double, double a) { return 1.0 + a * a; },
                       [](double, double) { return 0.0; }, [](double) { return 0.0; }};
    ControlProblem p(Domain(-1, 1), ActionSpace::interval(-2, 3), c, 1.0, 0.0);
    const Grid g(Domain(-1, 1), 10);
    const auto res = improve_policy(p, GridFunction(g, std::vector<double>(11, 0.0)), 11);
    for (double a : res.policy.actions) CHECK(a == -2.0);
    CHECK(res.max_residual == 0.0);

    const auto again = improve_policy(p, GridFunction(g, std::vector<double>(11, 0.0)), 11);
    CHECK(again.policy.actions == res.policy.actions);
}

TEST_CASE("example one recovers sgn from the exact value") {
    const OracleProblem o = example_one();
    for (std::size_t n : {100u, 1000u}) {
        const Grid g(Domain(-1, 1), n);
        const auto res = improve_policy(o.problem, GridFunction::from(g, o.exact_value), 2);
        for (std::size_t i = 1; i < n; ++i) {
            const double x = g.node(i);
            if (std::abs(x) >= 2 * g.spacing()) CHECK(res.policy.actions[i] == sgn(x));
        }
    }
}

TEST_CASE("hjb_residual") {
    SUBCASE("equals improve_policy's max_residual") {
        const OracleProblem o = example_two();
        const Grid g(Domain(-1, 1), 100);
        const auto v = GridFunction::from(g, [](double x) { return std::cos(x); });
        CHECK(hjb_residual(o.problem, v, 21) == improve_policy(o.problem, v, 21).max_residual);
    }
    SUBCASE("zero value, constant reward") {
        CoefficientField c{[](double, double) { return 1.0; }, [](double, double a) { return a; },
                           [](double, double) { return 1.0; }, [](double, double) { return 0.7; },
                           [](double) { return 0.0; }};
        ControlProblem p(Domain(0, 1), ActionSpace::interval(-1, 1), c, 1.0, 0.0);
        const Grid g(Domain(0, 1), 20);
        CHECK(hjb_residual(p, GridFunction(g, std::vector<double>(21, 0.0)), 5) == 0.7);
    }
    SUBCASE("single action: residual is the solve residual") {
        const OracleProblem o = manufactured_problem();
        const Grid g(Domain(-1, 1), 300);
        const auto v = evaluate_policy(o.problem, GridPolicy::constant(g, 0.0));
        CHECK(hjb_residual(o.problem, v, 2) <= 1e-8 * 2.0);
    }
    SUBCASE("example one: the evaluated optimum is a discrete HJB solution") {
        // away from round-off the residual vanishes at every resolution, so the
        // continuous O(h) rate shows up in the value error instead
        const OracleProblem o = example_one();
        for (std::size_t n : {50u, 200u, 800u}) {
            const Grid g(Domain(-1, 1), n);
            const auto v = evaluate_policy(o.problem, GridPolicy::from(g, sgn));
            CHECK(hjb_residual(o.problem, v, 2) <= 1e-8 * (1.0 + v.sup_norm()));
        }
    }
}

TEST_CASE("argmax dominance, evaluation consistency, action-grid refinement") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double m0 = 4 * (u(rng) - 0.5), k0 = u(rng), f0 = u(rng);
        CoefficientField c;
        c.sigma = [](double x, double a) { return 0.5 + 0.2 * x * x + 0.3 * a * a; };
        c.mu = [=](double x, double a) { return m0 * a + x; };
        c.alpha = [=](double x, double a) { return 0.2 + k0 * std::abs(a - x); };
        c.running_cost = [=](double x, double a) { return f0 * (1.0 + std::sin(3 * x * a)); };
        c.boundary_payoff = [](double x) { return 1.0 + x; };
        ControlProblem p(Domain(-1, 1), ActionSpace::interval(-1, 1), c, 0.5, 0.2);
        const Grid g(Domain(-1, 1), 60);
        const auto grid11 = p.actions.candidates(11);
        std::vector<double> acts(g.n_nodes());
        for (double& a : acts) a = grid11[static_cast<std::size_t>(u(rng) * 11) % 11];
        const GridPolicy pol(g, acts);
        const auto v = evaluate_policy(p, pol);

        const auto coarse = improve_policy(p, v, 11);
        const auto fine = improve_policy(p, v, 21);  // superset of the 11-point grid
        const auto cands = p.actions.candidates(21);
        for (std::size_t i = 1; i < g.n_cells(); ++i) {
            const double best = improvement_objective(p, v, i, coarse.policy.actions[i]);
            CHECK(best == coarse.residual.values[i]);
            for (std::size_t k = 0; k < cands.size(); k += 2) {
                CHECK(best >= improvement_objective(p, v, i, cands[k]));
            }
            CHECK(fine.residual.values[i] >= coarse.residual.values[i]);
            CHECK(coarse.residual.values[i] >= improvement_objective(p, v, i, acts[i]));
            // the evaluated policy's own action has objective ~ 0
            CHECK(std::abs(improvement_objective(p, v, i, acts[i])) <= 1e-8 * (1 + 2 * f0));
        }
        CHECK(fine.max_residual >= coarse.max_residual - 1e-8);
    }
}
