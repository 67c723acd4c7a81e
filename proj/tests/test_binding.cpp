#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spdval/binding_map.hpp"
#include "spdval/errors.hpp"

using namespace spdval;

namespace {

std::vector<double> interior_grid(const Distribution& d, int n) {
    std::vector<double> g;
    for (int i = 1; i < n; ++i)
        g.push_back(d.quantile(static_cast<double>(i) / n));
    return g;
}

} // namespace

TEST_CASE("uniform rescale: K(x) = 2x with constant derivative") {
    BindingMap bm = build_binding_map(Distribution::uniform(0.0, 1.0),
                                      Distribution::uniform(0.0, 2.0));
    for (double x : {0.1, 0.25, 0.5, 0.9}) {
        CHECK(bm.map(x) == doctest::Approx(2.0 * x).epsilon(1e-12));
        CHECK(bm.derivative(x) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(bm.map(0.0) == doctest::Approx(0.0)); // boundary condition
}

TEST_CASE("exponential pair: K(x) = x/2 via analytic composition") {
    Distribution e1 = Distribution::exponential(1.0);
    Distribution e2 = Distribution::exponential(2.0);
    BindingMap bm = build_binding_map(e1, e2);
    // Oracle: F2^{-1}(F1(x)) composed from the closed forms.
    for (double x : {0.2, 0.7, 1.3, 2.5}) {
        const double u = 1.0 - std::exp(-x);
        const double expect = -std::log(1.0 - u) / 2.0;
        CHECK(expect == doctest::Approx(x / 2.0).epsilon(1e-12));
        CHECK(bm.map(x) == doctest::Approx(expect).epsilon(1e-9));
        // K' = e^{-x} / (2 e^{-2(x/2)}) = 1/2 identically.
        CHECK(bm.derivative(x) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("gaussian pair: K(x) = 3 + 2x") {
    BindingMap bm = build_binding_map(Distribution::normal(0.0, 1.0),
                                      Distribution::normal(3.0, 2.0));
    for (double x : {-1.0, 0.0, 1.0})
        CHECK(bm.map(x) == doctest::Approx(3.0 + 2.0 * x).epsilon(1e-9));
}

TEST_CASE("vanishing target density inside the support is rejected") {
    Distribution gap = Distribution::mixture({{Distribution::uniform(0.0, 1.0), 0.5},
                                              {Distribution::uniform(2.0, 3.0), 0.5}});
    CHECK_THROWS_AS((void)build_binding_map(Distribution::uniform(0.0, 1.0), gap), Error);
}

TEST_CASE("measure preservation: identity, linear, exponential") {
    Distribution u = Distribution::uniform(0.0, 1.0);
    CHECK(verify_measure_preserving(build_binding_map(u, u), 100) < 1e-12);

    BindingMap lin = build_binding_map(u, Distribution::uniform(0.0, 2.0));
    CHECK(verify_measure_preserving(lin, 100) < 1e-9);

    BindingMap exp_map =
        build_binding_map(Distribution::exponential(1.0), Distribution::exponential(2.0));
    CHECK(verify_measure_preserving(exp_map, 100) < 1e-6);
}

TEST_CASE("derivative field matches finite differences") {
    BindingMap lin = build_binding_map(Distribution::uniform(0.0, 1.0),
                                       Distribution::uniform(0.0, 2.0));
    std::vector<double> g = interior_grid(lin.source(), 24);
    CHECK(derivative_consistency(lin, g) < 1e-8);

    BindingMap exp_map =
        build_binding_map(Distribution::exponential(1.0), Distribution::exponential(2.0));
    CHECK(derivative_consistency(exp_map, interior_grid(exp_map.source(), 40)) < 1e-4);

    BindingMap ln = build_binding_map(Distribution::lognormal(4.6, 0.2),
                                      Distribution::lognormal(4.6, 0.35));
    CHECK(derivative_consistency(ln, interior_grid(ln.source(), 40)) < 1e-4);
}

TEST_CASE("monotonicity of the map on randomized pairs") {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Distribution p = Distribution::lognormal(rng.uniform(-0.5, 0.5), rng.uniform(0.1, 0.6));
        Distribution q = Distribution::lognormal(rng.uniform(-0.5, 0.5), rng.uniform(0.1, 0.6));
        BindingMap bm = build_binding_map(p, q);
        double prev = -1e300;
        for (int i = 1; i < 60; ++i) {
            const double x = p.quantile(i / 60.0);
            const double k = bm.map(x);
            CHECK(k >= prev - 1e-12);
            prev = k;
        }
    }
}

TEST_CASE("map from a distribution to itself is the identity") {
    Distribution ln = Distribution::lognormal(0.0, 0.3);
    BindingMap bm = build_binding_map(ln, ln);
    for (double u : {0.05, 0.3, 0.5, 0.8, 0.99}) {
        const double x = ln.quantile(u);
        CHECK(bm.map(x) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("change of variables: E_P[g(K(X))] equals E_Q[g(Y)]") {
    Distribution p = Distribution::exponential(1.0);
    Distribution q = Distribution::lognormal(0.2, 0.4);
    BindingMap bm = build_binding_map(p, q);
    for (int deg = 1; deg <= 3; ++deg) {
        auto g = [deg](double y) { return std::pow(y, deg); };
        const double lhs = expectation(p, [&](double x) { return g(bm.map(x)); });
        const double rhs = expectation(q, g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
}
