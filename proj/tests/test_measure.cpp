#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "spdval/errors.hpp"
#include "spdval/signed_measure.hpp"

using namespace spdval;

TEST_CASE("integrate: Lebesgue density, single atom, mixed") {
    SignedMeasure leb = SignedMeasure::from_function([](double) { return 1.0; }, 0.0, 1.0);
    CHECK(integrate([](double k) { return k; }, leb) == doctest::Approx(0.5).epsilon(1e-10));

    SignedMeasure atom = SignedMeasure::atoms_only({{2.0, 3.0}});
    CHECK(integrate([](double k) { return k * k; }, atom) == doctest::Approx(12.0));

    // w(K)=K on [0,1] with an atom (0.5, -1): split integral 0.5 - 1.
    SignedMeasure mixed =
        SignedMeasure::from_function([](double k) { return k; }, 0.0, 1.0)
            .with_atoms({{0.5, -1.0}});
    const double expected =
        oracle::integrate([](double k) { return k; }, 0.0, 1.0) - 1.0;
    CHECK(integrate([](double) { return 1.0; }, mixed) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("total variation: constant sign, atoms only, sign-changing density") {
    SignedMeasure neg = SignedMeasure::from_function([](double) { return -1.0; }, 0.0, 2.0);
    CHECK(total_variation(neg) == doctest::Approx(2.0).epsilon(1e-9));

    SignedMeasure atoms = SignedMeasure::atoms_only({{1.0, -0.5}, {2.0, 0.5}});
    CHECK(total_variation(atoms) == doctest::Approx(1.0));

    SignedMeasure cosw =
        SignedMeasure::from_function([](double k) { return std::cos(k); }, 0.0, M_PI);
    const double expected =
        oracle::integrate([](double k) { return std::fabs(std::cos(k)); }, 0.0, M_PI);
    CHECK(expected == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(total_variation(cosw) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("combine: cancellation, atom merge, linear combination") {
    SignedMeasure rho =
        SignedMeasure::from_function([](double k) { return 1.0 + k; }, 0.0, 1.0)
            .with_atoms({{0.25, 2.0}});
    SignedMeasure zero = combine(rho, 1.0, rho, -1.0);
    CHECK(total_variation(zero) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(zero.atoms().empty());

    SignedMeasure a1 = SignedMeasure::atoms_only({{1.0, 1.0}});
    SignedMeasure a2 = SignedMeasure::atoms_only({{1.0, 2.0}});
    SignedMeasure merged = combine(a1, 1.0, a2, 1.0);
    REQUIRE(merged.atoms().size() == 1);
    CHECK(merged.atoms()[0].weight == doctest::Approx(3.0));

    SignedMeasure u1 = SignedMeasure::from_function([](double) { return 1.0; }, 0.0, 1.0);
    SignedMeasure c = combine(u1, 2.0, u1, -1.0);
    CHECK(c.density(0.5) == doctest::Approx(1.0));
}

TEST_CASE("non-integrable density exhausts the refinement budget") {
    SignedMeasure rho =
        SignedMeasure::from_function([](double k) { return 1.0 / k; }, 0.0, 1.0);
    CHECK_THROWS_AS((void)integrate([](double) { return 1.0; }, rho), spdval::Error);
}

TEST_CASE("bounded integrand inequality and linearity in rho") {
    oracle::Rng rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform(0.0, 1.0);
        const double b = a + rng.uniform(0.5, 2.0);
        const double w0 = rng.uniform(-2.0, 2.0), w1 = rng.uniform(-2.0, 2.0);
        SignedMeasure rho =
            SignedMeasure::from_function([w0, w1](double k) { return w0 + w1 * k; }, a, b)
                .with_atoms({{0.5 * (a + b), rng.uniform(-1.0, 1.0)}});
        const double amp = rng.uniform(0.1, 3.0), freq = rng.uniform(0.5, 4.0);
        auto f = [amp, freq](double k) { return amp * std::sin(freq * k); };
        CHECK(std::fabs(integrate(f, rho)) <= amp * total_variation(rho) + 1e-9);
    }

    SignedMeasure r1 =
        SignedMeasure::from_function([](double k) { return std::exp(-k); }, 0.0, 2.0);
    SignedMeasure r2 =
        SignedMeasure::from_function([](double k) { return k * k; }, 1.0, 3.0)
            .with_atoms({{2.5, 0.7}});
    auto f = [](double k) { return std::cos(k); };
    const double lhs = integrate(f, combine(r1, 1.7, r2, -0.6));
    const double rhs = 1.7 * integrate(f, r1) - 0.6 * integrate(f, r2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}
