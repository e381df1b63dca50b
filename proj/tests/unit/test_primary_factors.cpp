#include <doctest.h>

#include <cmath>
#include <random>

#include "phaseret/errors.hpp"
#include "phaseret/primary_factors.hpp"

using namespace phaseret;
using namespace std::complex_literals;

TEST_CASE("primary_factor examples") {
    CHECK(std::abs(primary_factor(0.0, Genus{3}) - 1.0) == 0.0);
    CHECK(std::abs(primary_factor(1.0, Genus{2})) == 0.0);
    // mpmath: 0.5 e^{0.5}
    CHECK(primary_factor(0.5, Genus{1}).real() == doctest::Approx(0.82436063535006407342).epsilon(1e-15));
    CHECK(primary_factor(0.5, Genus{1}).imag() == 0.0);
}

TEST_CASE("log_abs_primary_factor examples") {
    CHECK(log_abs_primary_factor(0.0, Genus{2}) == 0.0);
    CHECK(log_abs_primary_factor(1i, Genus{0}) == doctest::Approx(0.34657359027997265471).epsilon(1e-15));
    CHECK(log_abs_primary_factor(0.5, Genus{1}) == doctest::Approx(-0.19314718055994530942).epsilon(1e-15));
    CHECK_THROWS_AS(log_abs_primary_factor(1.0, Genus{1}), SingularInputError);
}

TEST_CASE("tail_log_bound examples") {
    CHECK(tail_log_bound(0.0, Genus{1}) == 0.0);
    CHECK(tail_log_bound(0.5, Genus{1}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tail_log_bound(0.25, Genus{2}) == doctest::Approx(0.015625 / 2.25).epsilon(1e-15));
}

TEST_CASE("genus range") {
    CHECK_THROWS_AS(Genus{-1}, PreconditionError);
    CHECK_THROWS_AS(Genus{Genus::kMax + 1}, PreconditionError);
    CHECK(Genus{Genus::kMax}.value() == Genus::kMax);
}

TEST_CASE("log_primary_factor matches the direct log for moderate w") {
    for (const Complex w : {Complex{0.3, 0.1}, Complex{-0.2, 0.35}, Complex{0.01, -0.02}, Complex{0.7, 0.5}}) {
        for (int p = 0; p <= 4; ++p) {
            const Complex direct = std::log(primary_factor(w, Genus{p}));
            const Complex fast = log_primary_factor(w, Genus{p});
            CHECK(std::abs(fast - direct) <= 1e-14 * std::max(1.0, std::abs(direct)) + 1e-16);
        }
    }
}

TEST_CASE("mirror symmetry and log/abs consistency on random samples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const Complex z{u(rng), u(rng)};
        if (std::abs(z) > 10.0 || std::abs(z - 1.0) < 1e-3) continue;
        const Genus p{static_cast<int>(i % 4)};
        const double a = std::abs(primary_factor(z, p));
        const double b = std::abs(primary_factor(std::conj(z), p));
        CHECK(std::abs(a - b) <= 1e-13 * a);
        CHECK(std::abs(std::exp(log_abs_primary_factor(z, p)) - a) <= 1e-12 * a);
    }
}

TEST_CASE("tail bound dominates log E on circles") {
    for (const double r : {0.1, 0.25, 0.5}) {
        for (int p = 0; p <= 3; ++p) {
            const double bound = tail_log_bound(r, Genus{p});
            for (int j = 0; j < 720; ++j) {
                const Complex w = std::polar(r, 2.0 * M_PI * j / 720.0);
                CHECK(std::abs(log_primary_factor(w, Genus{p})) <= bound * (1.0 + 1e-12));
            }
        }
    }
}
