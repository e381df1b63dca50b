#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phaseret/ambiguity.hpp"
#include "phaseret/analysis.hpp"
#include "phaseret/errors.hpp"

using namespace phaseret;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

double max_line_deviation(const AmbiguityPair& pair, const std::vector<LineSpec>& lines, long K) {
    double worst = 0.0;
    for (const auto& rep : verify_pair(pair.f, pair.g, lines, K, 1e-8)) worst = std::max(worst, rep.deviation);
    return worst;
}

LineSpec line(Complex anchor, Complex dir, int count = 121) {
    LineSpec l;
    l.anchor = anchor;
    l.direction = dir;
    l.t_min = -3.0;
    l.t_max = 3.0;
    l.count = count;
    l.id = "probe";
    return l;
}

}  // namespace

TEST_CASE("mcdonald_pair examples") {
    PairData d;
    RootSystem Y;
    Y.explicit_roots.push_back({1i, 1});
    auto pair = mcdonald_pair(d, Y);
    // f = 1 - z/i, g = 1 + z/i
    CHECK(std::abs(evaluate(pair.f, 2.0, 0).value - (1.0 - 2.0 / 1i)) < 1e-15);
    CHECK(std::abs(evaluate(pair.g, 2.0, 0).value - (1.0 + 2.0 / 1i)) < 1e-15);
    CHECK(max_line_deviation(pair, {line(0.0, 1.0)}, 0) < 1e-15);

    PairData e;
    e.poly_f = {{0.0, 1.0}};
    e.poly_g = {{0.0, -1.0}};
    pair = mcdonald_pair(e, RootSystem{});
    for (const double x : {-2.0, 0.3, 5.0}) {
        CHECK(std::abs(evaluate(pair.f, x, 0).value) == doctest::Approx(1.0));
        CHECK(std::abs(evaluate(pair.g, x, 0).value) == doctest::Approx(1.0));
    }

    PairData same;
    same.X.explicit_roots.push_back({2.0, 1});
    pair = mcdonald_pair(same, RootSystem{});
    CHECK(std::abs(evaluate(pair.f, 0.7 + 0.4i, 0).value - evaluate(pair.g, 0.7 + 0.4i, 0).value) == 0.0);

    PairData bad;
    bad.poly_f = {{1.0, 0.0}};
    bad.poly_g = {{2.0, 0.0}};
    CHECK_THROWS_AS(mcdonald_pair(bad, RootSystem{}), ConstraintError);
}

TEST_CASE("rational_angle_pair examples") {
    auto pair = rational_angle_pair(kPi / 2, PairData{}, {{1.0 + 1i, 1}});
    for (const Complex z : {Complex{0.3, 0.2}, Complex{2.0, -1.0}}) {
        CHECK(std::abs(evaluate(pair.f, z, 0).value - (1.0 - z * z / ((1.0 + 1i) * (1.0 + 1i)))) < 1e-14);
        CHECK(std::abs(evaluate(pair.g, z, 0).value - (1.0 - z * z / ((1.0 - 1i) * (1.0 - 1i)))) < 1e-14);
    }
    CHECK(pair.constraint.n == 2);

    PairData pinned;
    pinned.poly_f = {{0.2, 0.5}};
    pinned.poly_g = {{0.2, 0.5}};
    pair = rational_angle_pair(kPi / 2, pinned, {});
    CHECK(std::abs(evaluate(pair.f, 1.0 + 2i, 0).value - evaluate(pair.g, 1.0 + 2i, 0).value) < 1e-14);
    CHECK(pair.constraint.pinned == std::vector<int>{1});
    pinned.poly_g = {{0.2, -0.5}};
    CHECK_THROWS_AS(rational_angle_pair(kPi / 2, pinned, {}), ConstraintError);

    pair = rational_angle_pair(kPi / 3, PairData{}, {{2.0 * std::polar(1.0, kPi / 6), 1}});
    CHECK(pair.constraint.n == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(evaluate(pair.f, 2.0 * std::polar(1.0, kPi / 6 + 2.0 * kPi * k / 3), 0).value) < 1e-14);
    }
    CHECK(max_line_deviation(pair, {line(0.0, 1.0, 601), line(0.0, std::polar(1.0, kPi / 3), 601)}, 0) < 1e-10);
    CHECK_THROWS_AS(rational_angle_pair(1.0, PairData{}, {}), PreconditionError);
    CHECK_THROWS_AS(rational_angle_pair(kPi / 3, PairData{}, {{2.0, 1}}), PreconditionError);
}

TEST_CASE("coeff_relation_residual examples") {
    const std::vector<WeightedPoint> yu{{0.5i, 1}};
    for (const double x : {0.0, 1.0, 2.0}) {
        CHECK(std::abs(coeff_relation_residual(1.0, {}, {}, {}, Genus{1}, x, 100000).value) == 0.0);
        const auto r = coeff_relation_residual(1.0, {{0.0, kPi / 2}}, {{0.0, -kPi / 2}}, yu, Genus{1}, x, 100000);
        CHECK(std::abs(r.value) <= 1e-6);
    }
    const auto p = coeff_relation_residual(1.0, {{0.0, kPi / 2 + 0.1}}, {{0.0, -kPi / 2}}, yu, Genus{1}, 0.0, 100000);
    CHECK(p.value == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("parallel_pair examples") {
    PairData d;
    d.p = Genus{1};
    d.poly_f = {{0.0, kPi / 2}};
    d.poly_g = {{0.0, -kPi / 2}};
    const auto pair = parallel_pair(1.0, d, {{0.5i, 1}});
    const auto closed = closed_form_coshsinh(+1);
    CHECK(std::abs(evaluate(pair.f, 0.7 + 0.2i, 2000).value - closed(0.7 + 0.2i)) < 1e-8);

    PairData same;
    same.p = Genus{1};
    const auto trivial = parallel_pair(1.0, same, {});
    CHECK(std::abs(evaluate(trivial.f, 1.0 + 1i, 10).value - evaluate(trivial.g, 1.0 + 1i, 10).value) == 0.0);

    // tau = 1/2, Y_u = {1 + i/4}: b - b' from the series.
    const std::vector<WeightedPoint> yu{{1.0 + 0.25i, 1}};
    const double offset = coeff_relation_rhs(0.5, yu, Genus{1}, 0.0, 1, 1000000).value / 0.5;
    // mpmath oracle for S/tau
    CHECK(offset == doctest::Approx(0.02346689563063479014).epsilon(1e-7));
    PairData h;
    h.p = Genus{1};
    h.poly_f = {{0.0, 0.3}};
    h.poly_g = {{0.0, 0.3 - offset}};
    const auto half = parallel_pair(0.5, h, yu);
    CHECK(max_line_deviation(half, {line(0.0, 1.0, 601), line(0.5i, 1.0, 601)}, 2000) <= 1e-8);

    h.poly_g = {{0.0, 0.3 - offset + 0.01}};
    CHECK_THROWS_AS(parallel_pair(0.5, h, yu), ConstraintError);
}

TEST_CASE("infinite_lines_b_prime examples") {
    auto r = infinite_lines_b_prime(1.0, {{0.5i, 1}}, kPi / 2, 1000000);
    CHECK(std::abs(r.value + kPi / 2) <= 1e-5);
    CHECK(infinite_lines_b_prime(1.0, {}, 0.7, 1000).value == 0.7);
    r = infinite_lines_b_prime(1.0, {{-0.5i, 1}}, -kPi / 2, 1000000);
    CHECK(std::abs(r.value - kPi / 2) <= 1e-5);
}

TEST_CASE("infinite_lines_pair examples") {
    const auto pair = infinite_lines_pair(1.0, 1.0, 0.0, 0.0, 0.0, kPi / 2, RootSystem{}, {{0.5i, 1}}, 1000000);
    std::vector<LineSpec> lines;
    for (int n = -2; n <= 2; ++n) lines.push_back(line(Complex{0.0, double(n)}, 1.0, 61));
    CHECK(max_line_deviation(pair, lines, 2000) <= 1e-8);

    RootSystem X;
    X.explicit_roots.push_back({3.0, 1});
    const auto plain = infinite_lines_pair(1.0, 1.0, 0.0, 0.0, 0.0, 0.4, X, {}, 1000);
    CHECK(std::abs(std::abs(evaluate(plain.f, 1.0 + 0.3i, 10).value) -
                   std::abs(evaluate(plain.g, 1.0 + 0.3i, 10).value)) < 1e-14);

    const auto dbl = infinite_lines_pair(1.0, 1.0, 0.0, 0.0, 0.0, kPi, RootSystem{}, {{0.5i, 2}}, 1000000);
    CHECK(multiplicity_at(dbl.f.roots, 2.5i, 10.0) == 2);
    CHECK(max_line_deviation(dbl, lines, 2000) <= 1e-8);
}

TEST_CASE("universal family examples") {
    const auto one = universal_base(1);
    REQUIRE(one.roots.orbits.size() == 1);
    CHECK(std::abs(one.roots.orbits[0].base - (std::exp(1.0) + 0.5i)) < 1e-15);
    CHECK(std::abs(one.roots.orbits[0].step - 2i) < 1e-15);
    CHECK(std::abs(evaluate(universal_base(0), 1.0 + 1i, 10).value - 1.0) == 0.0);

    const auto three = universal_base(3);
    CHECK(std::abs(evaluate(three, std::exp(2.0) + 0.25i + 1i, 2000).value) == 0.0);

    const auto p1 = universal_partner(1, 1, 1000000);
    // mpmath symmetric-series oracle
    CHECK(p1.b_m == doctest::Approx(0.001228627981356167704).epsilon(1e-6));
    for (int m = 1; m <= 3; ++m) {
        const auto pm = universal_partner(m, 3, 100000);
        const Complex a = std::exp(double(m)) + 1i / (2.0 * m);
        CHECK(std::abs(evaluate(three, a, 2000).value) == 0.0);
        CHECK(std::abs(evaluate(pm.form, a, 2000).value) > 1e-8);
    }
}

TEST_CASE("closed_form_coshsinh examples") {
    const auto F = closed_form_coshsinh(+1);
    CHECK(std::abs(F(0.0) - 1.0) < 1e-15);
    CHECK(std::abs(F(1i) + 1.0) < 1e-15);
    CHECK(std::abs(F(1.0) - Complex{2.509178478658056782, 2.3012989023072948735}) < 1e-14);
}

TEST_CASE("declared lines and constraint validation") {
    PairConstraint c;
    c.kind = PairConstraint::Kind::parallel;
    c.tau = 0.5;
    const auto lines = declared_lines(c, -3, 3, 11);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].id == "R");
    CHECK(lines[1].id == "R+0.5i");
    c.tau = 0.0;
    CHECK_THROWS(c.validate());
}
