#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraccalc/errors.hpp"
#include "fraccalc/expr.hpp"
#include "fraccalc/mvt.hpp"
#include "fraccalc/special.hpp"

#include <cmath>
#include <random>
#include <string>

using namespace fraccalc;

TEST_CASE("integral witness: linear f, derived targets")
{
    // J^alpha t (1) / J^alpha 1 (1) = 1/(alpha+1), so xi = 1/(alpha+1).
    const auto f = parse("x");
    const auto w = simple_integral_mvt_witness(*f, FracOrder(0.5), 0.0, 1.0, 1025);
    CHECK(w.xi == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(w.residual <= 1e-8);
    CHECK_FALSE(w.degenerate);

    const auto w1 = simple_integral_mvt_witness(*f, FracOrder(1.0), 0.0, 1.0, 1025);
    CHECK(w1.xi == doctest::Approx(0.5).epsilon(1e-9));

    const auto w03 = simple_integral_mvt_witness(*f, FracOrder(0.3), 0.0, 1.0, 1025);
    CHECK(w03.xi == doctest::Approx(1.0 / 1.3).epsilon(1e-9));
}

TEST_CASE("integral witness: classical quadratic case")
{
    // mean of t^2 over [0,3] is 3, attained at sqrt(3)
    const auto w = simple_integral_mvt_witness(*parse("x^2"), FracOrder(1.0), 0.0, 3.0, 1025);
    CHECK(w.xi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-5));
}

TEST_CASE("integral witness: constant f degenerates to the midpoint")
{
    const auto w = simple_integral_mvt_witness(*parse("1"), FracOrder(0.7), 0.0, 1.0, 1025);
    CHECK(w.degenerate);
    CHECK(w.xi == doctest::Approx(0.5));
    CHECK(w.residual <= 1e-12);
}

TEST_CASE("weighted integral witness")
{
    const auto f = parse("x");
    const auto one = parse("1");
    const auto w = integral_mvt_witness(*f, *one, FracOrder(0.5), 0.0, 1.0, 1025);
    CHECK(w.xi == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(w.target == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto wc = integral_mvt_witness(*f, *one, FracOrder(1.0), 0.0, 1.0, 1025);
    CHECK(wc.xi == doctest::Approx(0.5).epsilon(1e-9));

    // g strictly negative on [0,1] is one-signed and admissible; the
    // target works out to exactly 0.6 by the power rule.
    const auto wneg = integral_mvt_witness(*f, *parse("x - 2"), FracOrder(0.5), 0.0, 1.0, 1025);
    CHECK(wneg.xi == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(wneg.residual <= 1e-8);

    // zero weight: identity holds trivially
    const auto wz = integral_mvt_witness(*f, *parse("0"), FracOrder(0.5), 0.0, 1.0, 257);
    CHECK(wz.degenerate);
    CHECK(wz.xi == doctest::Approx(0.5));
    CHECK(wz.residual == 0.0);

    CHECK_THROWS_AS(integral_mvt_witness(*f, *parse("x - 0.5"), FracOrder(0.5), 0.0, 1.0, 1025),
                    PreconditionError);
}

TEST_CASE("differential witness: quadratic at alpha = 0.5 and 1")
{
    const auto f = parse("x^2");
    // Solve Gamma(3)/Gamma(2.5) xi^1.5 = Gamma(1.5): xi = (3 pi / 16)^(2/3).
    const auto w = differential_mvt_witness(*f, FracOrder(0.5), 0.0, 1.0, 2049);
    CHECK(w.xi == doctest::Approx(0.70269591660047727).epsilon(1e-7));
    CHECK(w.residual <= 1e-8);

    const auto w1 = differential_mvt_witness(*f, FracOrder(1.0), 0.0, 1.0, 1025);
    CHECK(w1.xi == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("differential witness: annihilated remainder degenerates")
{
    const auto w = differential_mvt_witness(*parse("x"), FracOrder(1.5), 0.0, 1.0, 257);
    CHECK(w.degenerate);
    CHECK(w.xi == doctest::Approx(0.5));
    CHECK(w.residual <= 1e-12);
}

TEST_CASE("differential witness at alpha in (1,2): cubic against the closed form")
{
    // f = x^3, alpha = 1.5 on [0,1]: remainder f(1) - T_1(1) = 1, so the
    // target is Gamma(2.5), and D^1.5 x^3 = (6/Gamma(2.5)) xi^1.5.
    const auto w = differential_mvt_witness(*parse("x^3"), FracOrder(1.5), 0.0, 1.0, 1025);
    const double xi_exact = std::pow(gammafn(2.5) * gammafn(2.5) / 6.0, 2.0 / 3.0);
    CHECK(w.xi == doctest::Approx(xi_exact).epsilon(1e-6));
}

TEST_CASE("witness interiority over a randomized corpus")
{
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const double alphas[] = {0.3, 0.5, 0.8, 1.0, 1.5};
    for (int i = 0; i < 25; ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.4f*x^3 + %.4f*x^2 + %.4f*x + sin(%.4f*x)", coef(rng),
                      coef(rng), coef(rng), coef(rng));
        const auto f = parse(buf);
        const FracOrder ord(alphas[i % 5]);
        const auto w = simple_integral_mvt_witness(*f, ord, 0.0, 1.0, 513);
        CAPTURE(buf);
        CHECK(w.xi > 0.0 + 1e-12);
        CHECK(w.xi < 1.0 - 1e-12);
    }
}

TEST_CASE("identity defect over a polynomial/trig corpus")
{
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    const double alphas[] = {0.3, 0.5, 0.8, 1.0, 1.5};

    auto random_f = [&](int i) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.4f*x^%d + %.4f*x + %.4f*cos(%d*x) + 2", coef(rng),
                      2 + i % 3, coef(rng), coef(rng), 1 + i % 4);
        return parse(buf);
    };

    int produced = 0;
    for (int i = 0; i < 20; ++i) { // simple integral form
        const auto f = random_f(i);
        const auto w = simple_integral_mvt_witness(*f, FracOrder(alphas[i % 5]), 0.0, 1.0, 2049);
        CHECK(w.residual <= 1e-6);
        ++produced;
    }
    for (int i = 0; i < 15; ++i) { // weighted form, positive weight
        const auto f = random_f(i);
        const auto w = integral_mvt_witness(*f, *parse("exp(-x)"), FracOrder(alphas[i % 5]), 0.0,
                                            1.0, 2049);
        CHECK(w.residual <= 1e-6);
        ++produced;
    }
    for (int i = 0; i < 15; ++i) { // differential form
        const auto f = random_f(i);
        const auto w = differential_mvt_witness(*f, FracOrder(alphas[i % 5]), 0.0, 1.0, 2049);
        CHECK(w.residual <= 1e-6);
        ++produced;
    }
    CHECK(produced == 50);
}

TEST_CASE("classical consistency at alpha = 1 for monomials")
{
    // integral form: xi_k = ((b^{k+1} - a^{k+1}) / ((k+1)(b-a)))^{1/k}
    for (int k : {1, 2, 3}) {
        const double a = 0.25, b = 1.75;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "x^%d", k);
        const auto w = simple_integral_mvt_witness(*parse(buf), FracOrder(1.0), a, b, 2049);
        const double mean = (std::pow(b, k + 1) - std::pow(a, k + 1)) / ((k + 1) * (b - a));
        CHECK(w.xi == doctest::Approx(std::pow(mean, 1.0 / k)).epsilon(1e-6));
    }
    // differential form: k xi^{k-1} = (b^k - a^k)/(b - a)
    for (int k : {2, 3}) {
        const double a = 0.25, b = 1.75;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "x^%d", k);
        const auto w = differential_mvt_witness(*parse(buf), FracOrder(1.0), a, b, 1025);
        const double slope = (std::pow(b, k) - std::pow(a, k)) / (b - a);
        CHECK(w.xi == doctest::Approx(std::pow(slope / k, 1.0 / (k - 1))).epsilon(1e-6));
    }
}

TEST_CASE("scaling covariance: shifted f shifts the witness")
{
    for (double c : {0.5, 0.3}) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "exp(x - %.2f)", c);
        const auto base = parse("exp(x)");
        const auto shifted = parse(buf);

        const auto wi0 = simple_integral_mvt_witness(*base, FracOrder(0.5), 0.0, 1.0, 1025);
        const auto wic = simple_integral_mvt_witness(*shifted, FracOrder(0.5), c, 1.0 + c, 1025);
        CHECK(std::abs(wic.xi - wi0.xi - c) <= 1e-8);

        const auto wd0 = differential_mvt_witness(*base, FracOrder(0.5), 0.0, 1.0, 513);
        const auto wdc = differential_mvt_witness(*shifted, FracOrder(0.5), c, 1.0 + c, 513);
        CHECK(std::abs(wdc.xi - wd0.xi - c) <= 1e-8);
    }
}

TEST_CASE("witness brackets and targets are reported consistently")
{
    const auto w = simple_integral_mvt_witness(*parse("x^2"), FracOrder(0.5), 0.0, 1.0, 513);
    CHECK(w.lo <= w.xi);
    CHECK(w.xi <= w.hi);
    CHECK(w.hi - w.lo <= 1e-11);
    CHECK(eval(*parse("x^2"), w.xi) == doctest::Approx(w.target).epsilon(1e-9));
}
