#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spdval/distribution.hpp"
#include "spdval/errors.hpp"

using namespace spdval;

TEST_CASE("uniform cdf is the identity ramp") {
    Distribution d = Distribution::uniform(0.0, 1.0);
    CHECK(cdf_from_density(d).cdf(0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d.cdf(-0.1) == 0.0);
    CHECK(d.cdf(1.1) == 1.0);
}

TEST_CASE("exponential cdf matches the analytic form and a quadrature oracle") {
    Distribution d = Distribution::exponential(1.0);
    // Oracle: integrate e^{-x} over [0, 1] with adaptive Simpson.
    const double expected = oracle::integrate([](double x) { return std::exp(-x); }, 0.0, 1.0);
    CHECK(expected == doctest::Approx(0.632121).epsilon(1e-6)); // frozen 1 - e^{-1}
    CHECK(d.cdf(1.0) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("triangular grid density has median at the apex") {
    GridSpec spec;
    spec.nodes = {0.0, 0.5, 1.0};
    spec.values = {0.0, 2.0, 0.0};
    Distribution d = Distribution::from_grid(spec);
    CHECK(d.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("quantile: linear cdf, analytic inverse, boundary") {
    CHECK(quantile(Distribution::uniform(0.0, 2.0), 0.25) == doctest::Approx(0.5).epsilon(1e-12));

    Distribution e2 = Distribution::exponential(2.0);
    // Oracle: bisection on the analytic CDF.
    const double med = oracle::bisect([](double x) { return 1.0 - std::exp(-2.0 * x); },
                                      0.0, 10.0, 0.5);
    CHECK(med == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-10)); // 0.346574
    CHECK(quantile(e2, 0.5) == doctest::Approx(med).epsilon(1e-8));

    CHECK(quantile(e2, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)quantile(e2, 1.5), Error);
}

TEST_CASE("quantile of a flat cdf region takes the left end of the level set") {
    // Two uniform bumps with a gap: F is flat at 0.5 on [1, 2].
    Distribution d = Distribution::mixture({{Distribution::uniform(0.0, 1.0), 0.5},
                                            {Distribution::uniform(2.0, 3.0), 0.5}});
    CHECK(d.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("expectation: uniform mean, lognormal mean, normalization") {
    CHECK(expectation(Distribution::uniform(0.0, 1.0), [](double x) { return x; }) ==
          doctest::Approx(0.5).epsilon(1e-10));

    Distribution ln = Distribution::lognormal(0.0, 0.2);
    const double m = expectation(ln, [](double x) { return x; });
    // Oracle: quadrature of x·φ(x); the analytic mean is e^{0.02}.
    const double mo = oracle::integrate([&](double x) { return x * ln.density(x); },
                                        ln.support_lo(), ln.support_hi());
    CHECK(m == doctest::Approx(mo).epsilon(1e-9));
    CHECK(m == doctest::Approx(1.02020).epsilon(1e-4));

    CHECK(expectation(ln, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cdf_from_density rejects invalid densities") {
    GridSpec bad;
    bad.nodes = {0.0, 1.0};
    bad.values = {2.0, 2.0}; // integrates to 2
    CHECK_THROWS_AS((void)Distribution::from_grid(bad), Error);

    GridSpec neg;
    neg.nodes = {0.0, 0.5, 1.0};
    neg.values = {1.0, -0.5, 1.0};
    CHECK_THROWS_AS((void)Distribution::from_grid(neg), Error);
}

TEST_CASE("check_fsd: shift dominance, reflexivity, failure case") {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(-0.5 + 2.5 * i / 400.0);

    Distribution a = Distribution::uniform(0.0, 1.0);
    Distribution b = Distribution::uniform(0.5, 1.5);
    CHECK(check_fsd(a, b, grid).dominates);

    FsdResult self = check_fsd(a, a, grid);
    CHECK(self.dominates);
    CHECK(self.max_violation == 0.0);

    // Oracle: pointwise CDF comparison shows U[0,0.5] dominates U[0,1], not
    // the other way round.
    Distribution c = Distribution::uniform(0.0, 0.5);
    CHECK_FALSE(check_fsd(a, c, grid).dominates);
    CHECK(check_fsd(c, a, grid).dominates);
}

TEST_CASE("check_fsd is transitive on a shifted triple") {
    std::vector<double> grid;
    for (int i = 0; i <= 300; ++i) grid.push_back(-1.0 + 4.0 * i / 300.0);
    Distribution a = Distribution::uniform(0.0, 1.0);
    Distribution b = Distribution::uniform(0.3, 1.3);
    Distribution c = Distribution::uniform(0.9, 1.9);
    CHECK(check_fsd(a, b, grid).dominates);
    CHECK(check_fsd(b, c, grid).dominates);
    CHECK(check_fsd(a, c, grid).dominates);
}

TEST_CASE("quantile/cdf round-trip where the density is positive") {
    for (Distribution d : {Distribution::exponential(1.5), Distribution::normal(1.0, 0.7),
                           Distribution::lognormal(0.1, 0.3)}) {
        for (double u : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            const double x = d.quantile(u);
            CHECK(d.quantile(d.cdf(x)) == doctest::Approx(x).epsilon(1e-9));
        }
    }
}

TEST_CASE("grid and analytic representations of Exp(1) agree") {
    Distribution exact = Distribution::exponential(1.0);
    GridSpec spec;
    const int n = 1024;
    const double hi = exact.support_hi();
    for (int i = 0; i <= n; ++i) {
        const double x = hi * i / n;
        spec.nodes.push_back(x);
        spec.values.push_back(std::exp(-x));
    }
    Distribution grid = Distribution::from_grid(spec);

    CHECK(grid.cdf(1.0) == doctest::Approx(exact.cdf(1.0)).epsilon(1e-3));
    CHECK(grid.quantile(0.5) == doctest::Approx(exact.quantile(0.5)).epsilon(1e-3));
    const double mg = expectation(grid, [](double x) { return x; });
    const double ma = expectation(exact, [](double x) { return x; });
    CHECK(mg == doctest::Approx(ma).epsilon(1e-3));
}

TEST_CASE("kernel estimate from uniform samples is flat inside the bulk") {
    oracle::Rng rng(20240811);
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.uniform();
    double bw = 0.0;
    Distribution d = estimate_density_from_samples(xs, 0.0, &bw);
    CHECK(bw > 0.0);
    CHECK_FALSE(d.degenerate());
    double worst = 0.0;
    for (int i = 0; i <= 160; ++i) {
        const double x = 0.1 + 0.8 * i / 160.0;
        worst = std::max(worst, std::fabs(d.density(x) - 1.0));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("kernel estimate from normal samples has median near zero") {
    oracle::Rng rng(77);
    std::vector<double> xs(100000);
    for (double& x : xs) x = rng.normal();
    Distribution d = estimate_density_from_samples(xs);
    CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::fabs(d.cdf(0.0) - 0.5) < 0.01);
}

TEST_CASE("kernel estimate flags constant samples as degenerate") {
    std::vector<double> xs(50, 3.25);
    Distribution d = estimate_density_from_samples(xs);
    CHECK(d.degenerate());
    CHECK(d.support_hi() - d.support_lo() < 1e-6);
    CHECK(expectation(d, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-6));

    std::vector<double> few(10, 1.0);
    CHECK_THROWS_AS((void)estimate_density_from_samples(few), Error);
}

TEST_CASE("affine transform keeps density, cdf and quantile consistent") {
    Distribution base = Distribution::lognormal(0.0, 0.25);
    Distribution t = Distribution::affine(base, 2.0, 5.0);
    const double x = base.quantile(0.3);
    CHECK(t.quantile(0.3) == doctest::Approx(2.0 * x + 5.0).epsilon(1e-10));
    CHECK(t.density(2.0 * x + 5.0) == doctest::Approx(base.density(x) / 2.0).epsilon(1e-10));
    CHECK_THROWS_AS((void)Distribution::affine(base, 0.0, 1.0), Error);
}
