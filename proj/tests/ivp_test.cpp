#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraccalc/errors.hpp"
#include "fraccalc/expr.hpp"
#include "fraccalc/ivp.hpp"
#include "fraccalc/special.hpp"

#include <cmath>
#include <string>

using namespace fraccalc;

namespace {

IvpProblem linear_problem(double alpha, double y0 = 1.0)
{
    return IvpProblem(FracOrder(alpha), 1.0, y0, Rhs2D::from_expression(parse("-y")));
}

} // namespace

TEST_CASE("solver: constant right-hand side is reproduced exactly")
{
    // rhs = Gamma(1.5) gives y = x^0.5; product quadrature of constants
    // is exact, so the error sits at rounding level.
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::from_expression(parse("gamma(1.5)")));
    const auto sol = solve_abm(p, 256);
    for (Eigen::Index j = 0; j <= 256; ++j)
        CHECK(std::abs(sol.y[j] - std::pow(sol.mesh.node(j), 0.5)) <= 1e-12);

    // shifted/scaled variant at other orders
    for (double alpha : {0.3, 0.8}) {
        const IvpProblem q(FracOrder(alpha), 2.0, -1.5, Rhs2D::from_expression(parse("2.5")));
        const auto s = solve_abm(q, 200);
        const double ga1 = gammafn(alpha + 1.0);
        for (Eigen::Index j = 0; j <= 200; ++j) {
            const double want = -1.5 + 2.5 * std::pow(s.mesh.node(j), alpha) / ga1;
            CHECK(std::abs(s.y[j] - want) <= 1e-12);
        }
    }
}

TEST_CASE("solver: initial condition is exact")
{
    for (double y0 : {0.0, 1.0, -3.25, 1e-7}) {
        const auto sol = solve_abm(linear_problem(0.5, y0), 32);
        CHECK(sol.y[0] == y0);
    }
}

TEST_CASE("solver: classical order-one problems at alpha = 1")
{
    const IvpProblem grow(FracOrder(1.0), 1.0, 1.0, Rhs2D::from_expression(parse("y")));
    const auto sol = solve_abm(grow, 1024);
    CHECK(std::abs(sol.y[1024] - std::exp(1.0)) <= 5e-3);

    const auto decay = solve_abm(linear_problem(1.0), 1024);
    CHECK(std::abs(decay.y[1024] - std::exp(-1.0)) <= 5e-3);
}

TEST_CASE("solver: linear fractional problem matches the Mittag-Leffler oracle")
{
    const auto sol = solve_abm(linear_problem(0.5), 2048);
    const double exact = mittag_leffler(0.5, -1.0);
    CHECK(std::abs(sol.y[2048] - exact) <= 5e-3);
    CHECK(sol.corrector_sweeps == 1);
    CHECK(sol.max_correction > 0.0);
}

TEST_CASE("solver: validation and non-finite abort")
{
    const auto p = linear_problem(0.5);
    CHECK_THROWS_AS(solve_abm(p, 0), PreconditionError);
    CHECK_THROWS_AS(solve_abm(p, (Eigen::Index{1} << 20) + 1), PreconditionError);
    CHECK_THROWS_AS(solve_abm(p, 64, 0), PreconditionError);
    CHECK_THROWS_AS(solve_abm(p, 64, 11), PreconditionError);
    CHECK_THROWS_AS(IvpProblem(FracOrder(1.5), 1.0, 0.0, Rhs2D::from_expression(parse("0"))),
                    PreconditionError);
    CHECK_THROWS_AS(IvpProblem(FracOrder(0.5), -1.0, 0.0, Rhs2D::from_expression(parse("0"))),
                    PreconditionError);

    // quadratic blow-up overflows inside [0, 2]
    const IvpProblem bomb(FracOrder(1.0), 2.0, 1.0,
                          Rhs2D::from_expression(parse("10000*y^2")));
    try {
        solve_abm(bomb, 64);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("solver: discontinuous counterexample picks the zero branch from y0 = 0")
{
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::counterexample(half));
    const auto sol = solve_abm(p, 512);
    CHECK(sol.y.abs().maxCoeff() == 0.0);
}

TEST_CASE("residual check: the non-uniqueness family c x^alpha solves the counterexample IVP")
{
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::counterexample(half));
    for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f*x^0.5", c);
        const double r = residual_check(*parse(buf), p, 2049);
        CAPTURE(c);
        CHECK(r <= 1e-6);
    }
    CHECK(residual_check(*parse("0"), p, 2049) == 0.0);
}

TEST_CASE("residual check: y = x does not solve the counterexample IVP")
{
    // D^0.5 x = x^0.5/Gamma(1.5) while the middle branch gives
    // Gamma(1.5) x^0.5; the residual approaches |1/Gamma(1.5) -
    // Gamma(1.5)| = 0.24215224164275456 at the right end.
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::counterexample(half));
    const double r = residual_check(*parse("x"), p, 2049);
    CHECK(std::abs(r - 0.24215224164275456) <= 1e-3);
}

TEST_CASE("residual check: solved trajectory passes the grid-route check")
{
    const auto p = linear_problem(0.5);
    const auto sol = solve_abm(p, 2048);
    const double r = residual_check(SampledFunction(sol.mesh, sol.y), p);
    CHECK(r <= 1e-2);
}

TEST_CASE("residual check: window and mesh validation")
{
    const auto p = linear_problem(0.5);
    CHECK_THROWS_AS(residual_check(*parse("x"), p, 8), PreconditionError);
    const Mesh wrong(0.0, 2.0, 65);
    const auto cand = sample(wrong, [](double x) { return x; });
    CHECK_THROWS_AS(residual_check(cand, p), PreconditionError);
}

TEST_CASE("eoc study: fractional order is about 1 + alpha")
{
    const auto rows = eoc_study(
        linear_problem(0.5),
        [](double x) { return mittag_leffler(0.5, -std::pow(x, 0.5)); }, {64, 128, 256, 512});
    REQUIRE(rows.size() == 4);
    double prev = 1e300;
    for (const auto& r : rows) {
        CHECK(r.error < prev); // strictly decreasing under step doubling
        prev = r.error;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].has_order);
        CHECK(rows[i].order == doctest::Approx(1.5).epsilon(0.25 / 1.5));
    }
}

TEST_CASE("eoc study: classical order two at alpha = 1")
{
    const auto rows = eoc_study(linear_problem(1.0),
                                [](double x) { return std::exp(-x); }, {64, 128, 256, 512});
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("eoc study: constant right-hand side reports rounding-level errors as exact")
{
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::from_expression(parse("gamma(1.5)")));
    const auto rows =
        eoc_study(p, [](double x) { return std::pow(x, 0.5); }, {64, 128, 256});
    for (const auto& r : rows) {
        CHECK(r.exact);
        CHECK_FALSE(r.has_order);
    }
}

TEST_CASE("eoc study: input validation")
{
    const auto p = linear_problem(0.5);
    const auto exact = [](double) { return 0.0; };
    CHECK_THROWS_AS(eoc_study(p, exact, {}), PreconditionError);
    CHECK_THROWS_AS(eoc_study(p, exact, {128, 64}), PreconditionError);
}

TEST_CASE("uniqueness experiment: gaps scale linearly for a Lipschitz problem")
{
    const auto rep = uniqueness_experiment(linear_problem(0.5), {1e-3, 1e-6}, 512);
    REQUIRE(rep.gaps.size() == 2);
    const double r1 = rep.gaps[0].sup_gap / rep.gaps[0].eps;
    const double r2 = rep.gaps[1].sup_gap / rep.gaps[1].eps;
    CHECK(r1 / r2 <= 10.0);
    CHECK(r2 / r1 <= 10.0);
    CHECK(rep.family.empty()); // expression rhs: no family report
    CHECK_FALSE(rep.note.empty());
}

TEST_CASE("uniqueness experiment: zero perturbation gives an identically zero gap")
{
    const auto rep = uniqueness_experiment(linear_problem(0.5), {0.0}, 128);
    REQUIRE(rep.gaps.size() == 1);
    CHECK(rep.gaps[0].sup_gap == 0.0);
}

TEST_CASE("uniqueness experiment: counterexample reports the solution family")
{
    const FracOrder half(0.5);
    const IvpProblem p(half, 1.0, 0.0, Rhs2D::counterexample(half));
    const auto rep = uniqueness_experiment(p, {1e-3}, 2048);
    REQUIRE(rep.family.size() == 5);
    for (const auto& fr : rep.family) {
        CAPTURE(fr.c);
        CHECK(fr.residual <= 1e-6);
    }
    // perturbing y0 off the discontinuity wall produces a macroscopic gap
    CHECK(rep.gaps[0].sup_gap > 0.1);

    CHECK_THROWS_AS(uniqueness_experiment(linear_problem(1.0), {1e-3}, 64), PreconditionError);
}
