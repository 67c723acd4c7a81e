#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spdval/errors.hpp"
#include "spdval/metrics.hpp"

using namespace spdval;

TEST_CASE("both metrics vanish on identical distributions") {
    Distribution p = Distribution::lognormal(0.1, 0.3);
    MeasurePair pair = make_measure_pair(p, p);
    CHECK(std::fabs(relative_entropy(pair)) < 1e-10);
    CHECK(std::fabs(relative_entropy(pair, EntropyVariant::standard_kl)) < 1e-10);
    CHECK(std::fabs(symmetric_distance(pair)) < 1e-10);
}

TEST_CASE("gaussian unit-variance shift: standard KL is m^2/2") {
    // Truncation mass times the log-ratio magnitude must stay far below the
    // assertion tolerance, hence the finer tails here.
    fixtures::ScopedTailTolerance tail(1e-12);
    MeasurePair pair =
        make_measure_pair(Distribution::normal(0.0, 1.0), Distribution::normal(1.0, 1.0));
    CHECK(relative_entropy(pair, EntropyVariant::standard_kl) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("gaussian shift: absolute-log variant matches the quadrature oracle") {
    fixtures::ScopedTailTolerance tail(1e-12);
    Distribution p = Distribution::normal(0.0, 1.0);
    Distribution q = Distribution::normal(1.0, 1.0);
    MeasurePair pair = make_measure_pair(p, q);

    // Oracle: log ratio is 1/2 - x, so the integrand is |1/2 - x|·φ(x).
    const double expected = oracle::integrate(
        [](double x) { return std::fabs(0.5 - x) * oracle::phi(x); }, -9.0, 9.0);
    CHECK(expected == doctest::Approx(0.8955930).epsilon(1e-6)); // frozen oracle value
    CHECK(relative_entropy(pair) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("symmetric distance is exactly symmetric on random lognormal pairs") {
    oracle::Rng rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
        Distribution p = Distribution::lognormal(rng.uniform(-0.1, 0.1), rng.uniform(0.25, 0.5));
        Distribution q = Distribution::lognormal(rng.uniform(-0.1, 0.1), rng.uniform(0.25, 0.5));
        const double pq = symmetric_distance(make_measure_pair(p, q));
        const double qp = symmetric_distance(make_measure_pair(q, p));
        CHECK(std::fabs(pq - qp) <= 1e-12 * std::max(1.0, pq));
    }
}

TEST_CASE("uniform vs tilted density: dual-oracle agreement") {
    GridSpec tilt;
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        tilt.nodes.push_back(x);
        tilt.values.push_back(2.0 * x);
    }
    tilt.interpolation = math::Interp::linear;
    Distribution p = Distribution::uniform(0.0, 1.0);
    Distribution q = Distribution::from_grid(tilt);
    MeasurePair pair = make_measure_pair(p, q);

    auto integrand = [](double x) {
        if (x <= 0.0) return 0.0;
        return std::fabs(std::log(1.0 / (2.0 * x))) * (2.0 * x) / (1.0 + 2.0 * x);
    };
    const double simpson = oracle::integrate(integrand, 0.0, 1.0);
    const double riemann = oracle::riemann(integrand, 0.0, 1.0, 1000000);
    CHECK(std::fabs(simpson - riemann) < 1e-6);
    CHECK(symmetric_distance(pair) == doctest::Approx(simpson).epsilon(1e-5));
}

TEST_CASE("metrics reject non-equivalent pairs") {
    Distribution p = Distribution::uniform(0.0, 1.0);
    Distribution q = Distribution::uniform(0.5, 1.5);
    CHECK_THROWS_AS((void)relative_entropy(make_measure_pair(p, q)), Error);
    CHECK_THROWS_AS((void)symmetric_distance(make_measure_pair(p, q)), Error);
}

TEST_CASE("metrics are strictly positive on separated densities") {
    Distribution p = Distribution::normal(0.0, 1.0);
    Distribution q = Distribution::normal(0.3, 1.0); // sup-norm gap > 0.01 near the modes
    MeasurePair pair = make_measure_pair(p, q);
    CHECK(relative_entropy(pair) > 1e-3);
    CHECK(symmetric_distance(pair) > 1e-3);
}

TEST_CASE("harmonic weight is dominated by the smaller density") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Distribution p = Distribution::lognormal(0.0, rng.uniform(0.25, 0.5));
        Distribution q = Distribution::lognormal(rng.uniform(-0.1, 0.1), rng.uniform(0.25, 0.5));
        MeasurePair pair = make_measure_pair(p, q);
        const double d = symmetric_distance(pair);
        const double bound = oracle::integrate(
            [&](double x) {
                const double fp = p.density(x), fq = q.density(x);
                if (fp <= 0.0 || fq <= 0.0) return 0.0;
                return std::fabs(std::log(fp / fq)) * std::min(fp, fq);
            },
            pair.common_lo, pair.common_hi, 1e-9);
        CHECK(d <= bound + 1e-7);
    }
}
