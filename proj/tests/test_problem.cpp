#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pia/errors.hpp"
#include "pia/oracles.hpp"
#include "pia/problem.hpp"

using namespace pia;

namespace {

CoefficientField constants(double sigma, double mu, double alpha, double f, double g) {
    return {[=](double, double) { return sigma; }, [=](double, double) { return mu; },
            [=](double, double) { return alpha; }, [=](double, double) { return f; },
            [=](double) { return g; }};
}

}  // namespace

TEST_CASE("domain and action space invariants") {
    CHECK_THROWS_AS(Domain(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Domain(0.0, std::numeric_limits<double>::infinity()), InvalidArgument);
    CHECK_THROWS_AS(ActionSpace::interval(1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(ActionSpace::finite({}), InvalidArgument);
    CHECK_THROWS_AS(ActionSpace::finite({0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(ActionSpace::finite({1.0, 0.0}), InvalidArgument);

    const ActionSpace iv = ActionSpace::interval(-1.0, 1.0);
    CHECK(iv.contains(0.3));
    CHECK_FALSE(iv.contains(1.0000001));
    const auto c = iv.candidates(201);
    REQUIRE(c.size() == 201);
    CHECK(c.front() == -1.0);
    CHECK(c.back() == 1.0);
    CHECK(c[100] == 0.0);
    CHECK_THROWS_AS(iv.candidates(1), InvalidArgument);

    const ActionSpace fin = ActionSpace::finite({-1.0, 1.0});
    CHECK(fin.contains(1.0));
    CHECK_FALSE(fin.contains(0.0));
    CHECK(fin.candidates(7) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("control problem requires a positive ellipticity floor") {
    CHECK_THROWS_AS(ControlProblem(Domain(0, 1), ActionSpace::finite({0}), constants(1, 0, 1, 0, 0),
                                   0.0, 0.0),
                    InvalidArgument);
    CHECK_THROWS_AS(ControlProblem(Domain(0, 1), ActionSpace::finite({0}), constants(1, 0, 1, 0, 0),
                                   1.0, -0.1),
                    InvalidArgument);
}

TEST_CASE("validate_problem") {
    SUBCASE("constants above their floors pass") {
        ControlProblem p(Domain(0, 1), ActionSpace::interval(0, 1), constants(1, 0, 1, 0, 0), 0.5,
                         1.0);
        const auto rep = validate_problem(p, 11, 5);
        CHECK(rep.passed);
        CHECK(rep.violations.empty());
    }
    SUBCASE("example two attains its killing floor at a = -1") {
        const OracleProblem o = example_two();
        CHECK(validate_problem(o.problem, 21, 21).passed);
    }
    SUBCASE("sigma = x falls below the floor near 0") {
        CoefficientField c = constants(1, 0, 1, 0, 0);
        c.sigma = [](double x, double) { return x; };
        ControlProblem p(Domain(0, 1), ActionSpace::finite({0}), c, 0.1, 0.0);
        const auto rep = validate_problem(p, 11, 1);
        CHECK_FALSE(rep.passed);
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].check == "sigma_floor");
        CHECK(rep.violations[0].x == 0.0);
    }
    SUBCASE("non-finite coefficients are recorded, not thrown") {
        CoefficientField c = constants(1, 0, 1, 0, 0);
        c.mu = [](double x, double) { return 1.0 / x; };
        c.boundary_payoff = [](double) { return std::nan(""); };
        ControlProblem p(Domain(0, 1), ActionSpace::finite({0}), c, 0.5, 0.0);
        const auto rep = validate_problem(p, 3, 1);
        CHECK_FALSE(rep.passed);
        int mu_bad = 0;
        int g_bad = 0;
        for (const auto& v : rep.violations) {
            mu_bad += v.check == "mu_finite";
            g_bad += v.check == "boundary_payoff_finite";
        }
        CHECK(mu_bad == 1);
        CHECK(g_bad == 2);
    }
    SUBCASE("idempotent") {
        CoefficientField c = constants(1, 0, 1, 0, 0);
        c.alpha = [](double x, double a) { return x - a; };
        ControlProblem p(Domain(-1, 1), ActionSpace::interval(-1, 1), c, 0.5, 0.0);
        const auto r1 = validate_problem(p, 9, 4);
        const auto r2 = validate_problem(p, 9, 4);
        REQUIRE(r1.violations.size() == r2.violations.size());
        for (std::size_t i = 0; i < r1.violations.size(); ++i) {
            CHECK(r1.violations[i].x == r2.violations[i].x);
            CHECK(r1.violations[i].a == r2.violations[i].a);
        }
    }
    CHECK_THROWS_AS(validate_problem(example_one().problem, 1, 1), InvalidArgument);
}

TEST_CASE("apply_generator") {
    ControlProblem p(Domain(-1, 1), ActionSpace::finite({0}),
                     constants(std::sqrt(2.0), 0, 1, 0, 0), 1.0, 0.0);
    CHECK(apply_generator(p, 0.0, 0.0, 2, 5, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(apply_generator(p, 0.3, 0.0, 0, 0, 0) == 0.0);

    SUBCASE("example one annihilates the exact value at x = 0.5 with a = 1") {
        const OracleProblem o = example_one();
        const double v = o.exact_value(0.5);
        CHECK(v == doctest::Approx(-std::sinh(std::sqrt(6.0) / 2.0)));
        CHECK(apply_generator(o.problem, 0.5, 1.0, v, 0.0, 6.0 * v) ==
              doctest::Approx(0.0).scale(1.0));
    }

    SUBCASE("linear in (v, dv, d2v)") {
        CoefficientField c;
        c.sigma = [](double x, double a) { return 1.0 + x * x + a; };
        c.mu = [](double x, double a) { return std::sin(x) - a; };
        c.alpha = [](double x, double) { return std::exp(x); };
        c.running_cost = [](double, double) { return 0.0; };
        c.boundary_payoff = [](double) { return 0.0; };
        ControlProblem q(Domain(-1, 1), ActionSpace::interval(0, 1), c, 1.0, 0.0);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-3, 3);
        for (int k = 0; k < 200; ++k) {
            const double x = u(rng) / 3, a = (u(rng) + 3) / 6;
            const double v = u(rng), dv = u(rng), d2v = u(rng), s = u(rng);
            const double lhs = apply_generator(q, x, a, s * v, s * dv, s * d2v);
            const double rhs = s * apply_generator(q, x, a, v, dv, d2v);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
        }
    }

    SUBCASE("non-finite coefficient names the coefficient") {
        CoefficientField c = constants(1, 0, 1, 0, 0);
        c.alpha = [](double, double) { return std::numeric_limits<double>::infinity(); };
        ControlProblem q(Domain(0, 1), ActionSpace::finite({0}), c, 1.0, 0.0);
        try {
            apply_generator(q, 0.5, 0.0, 1, 1, 1);
            FAIL("expected EvaluationError");
        } catch (const EvaluationError& e) {
            CHECK(std::string(e.what()).find("alpha") != std::string::npos);
        }
    }
}
