// Randomized invariants over generated pairs. Seeds are fixed so failures reproduce.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phaseret/ambiguity.hpp"
#include "phaseret/analysis.hpp"
#include "phaseret/errors.hpp"
#include "phaseret/transforms.hpp"

using namespace phaseret;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kConfigs = 200;
constexpr double kTol = 1e-8;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

LineSpec line(Complex anchor, Complex dir, int count) {
    LineSpec l;
    l.anchor = anchor;
    l.direction = dir;
    l.t_min = -3.0;
    l.t_max = 3.0;
    l.count = count;
    l.id = "probe";
    return l;
}

// X + Y reproduces f, X + conj(Y) reproduces g, and swapping f and g conjugates Y.
void check_recombination(const AmbiguityPair& pair, double radius) {
    const auto d = decompose(pair.f.roots, pair.g.roots, radius);
    const auto sum_f = combine(d.common, d.exclusive);
    const auto sum_g = combine(d.common, mirror_conjugate(d.exclusive));
    for (const auto& p : pair.f.roots.expand(radius)) CHECK(multiplicity_at(sum_f, p.z, radius) == p.multiplicity);
    for (const auto& p : pair.g.roots.expand(radius)) CHECK(multiplicity_at(sum_g, p.z, radius) == p.multiplicity);
    CHECK(sum_f.expand(radius).size() == pair.f.roots.expand(radius).size());
    CHECK(sum_g.expand(radius).size() == pair.g.roots.expand(radius).size());

    const auto rev = decompose(pair.g.roots, pair.f.roots, radius);
    const auto conj_y = mirror_conjugate(d.exclusive);
    for (const auto& p : rev.exclusive.expand(radius)) CHECK(multiplicity_at(conj_y, p.z, radius) == p.multiplicity);
    CHECK(rev.exclusive.expand(radius).size() == conj_y.expand(radius).size());
    CHECK(check_mirror_symmetry(pair.f.roots, pair.g.roots, radius));
}

void check_agreement(const AmbiguityPair& pair, const std::vector<LineSpec>& lines, long K) {
    for (const auto& rep : verify_pair(pair.f, pair.g, lines, K, kTol)) {
        CHECK_MESSAGE(rep.verdict == Verdict::agree, rep.line_id << " deviation " << rep.deviation);
    }
}

// Off the declared lines the pair must be distinguishable: at a root a of f
// whose conjugate is not a root, |f(a)| = 0 while |g(a)| is not.
void check_witness(const AmbiguityPair& pair, Complex a, long K) {
    const auto ef = evaluate(pair.f, a, K);
    const auto eg = evaluate(pair.g, a, K);
    INFO("witness re " << a.real() << " im " << a.imag());
    CHECK(std::abs(ef.value) == 0.0);
    const double tail = std::abs(eg.value) * std::expm1(eg.tail_error_log);
    CHECK(std::abs(eg.value) > 10.0 * (kTol + tail));
}

// Points a with Im a bounded away from the lattice of conjugation-fixed lines.
Complex off_axis_point(Rng& rng, double re_max, double im_lo, double im_hi) {
    const double im = rng.uniform(im_lo, im_hi) * (rng.integer(0, 1) ? 1.0 : -1.0);
    return {rng.uniform(-re_max, re_max), im};
}

}  // namespace

TEST_CASE("single-line pairs") {
    Rng rng(101);
    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        PairData d;
        const int q = rng.integer(0, 3);
        for (int l = 0; l < q; ++l) {
            const double a = rng.uniform(-0.2, 0.2);
            d.poly_f.push_back({a, rng.uniform(-0.5, 0.5)});
            d.poly_g.push_back({a, rng.uniform(-0.5, 0.5)});
        }
        d.phi = rng.uniform(-kPi, kPi);
        d.psi = rng.uniform(-kPi, kPi);
        d.m = rng.integer(0, 2);
        for (int i = rng.integer(0, 2); i > 0; --i) d.X.explicit_roots.push_back({{rng.uniform(-3, 3), 0.0}, 1});
        RootSystem Y;
        const int ny = rng.integer(1, 3);
        for (int i = 0; i < ny; ++i) {
            Y.explicit_roots.push_back({off_axis_point(rng, 3.0, 0.2, 2.5) + Complex{double(4 * i), 0.0},
                                        rng.integer(1, 2)});
        }
        const auto pair = mcdonald_pair(d, Y);
        check_recombination(pair, 20.0);
        check_agreement(pair, {line(0.0, 1.0, 41)}, 0);
        check_witness(pair, Y.explicit_roots[0].z, 0);

        // Uniqueness side: agreement on R cannot extend to an irrational-angle line.
        const double irrational = kPi * std::sqrt(2.0) / 7.0;
        const auto reps = verify_pair(pair.f, pair.g, {line(0.0, std::polar(1.0, irrational), 601)}, 0, kTol);
        const auto v = overall_verdict(reps);
        CHECK(v != Verdict::agree);
    }
    CHECK_THROWS_AS(rational_angle_pair(kPi * std::sqrt(2.0) / 7.0, PairData{}, {}), PreconditionError);
}

TEST_CASE("rational-angle pairs") {
    Rng rng(202);
    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        const int n = rng.integer(2, 6);
        const int k = rng.integer(1, n / 2);
        const double theta = k * kPi / n;
        const int order = *rotation_order(theta);
        PairData d;
        const int q = rng.integer(0, 4);
        for (int l = 1; l <= q; ++l) {
            const double a = rng.uniform(-0.1, 0.1);
            const double b = rng.uniform(-0.3, 0.3);
            d.poly_f.push_back({a, b});
            d.poly_g.push_back({a, l % order == 0 ? rng.uniform(-0.3, 0.3) : b});
        }
        std::vector<WeightedPoint> yu;
        const int ny = rng.integer(1, 2);
        for (int i = 0; i < ny; ++i) {
            // An orbit contains its own conjugate iff arg is a multiple of pi/order.
            const double arg = rng.uniform(0.1, 0.9) * kPi / order * (rng.integer(0, 1) ? 1.0 : -1.0);
            yu.push_back({std::polar(0.6 + 0.9 * i + rng.uniform(0.0, 0.4), arg), rng.integer(1, 2)});
        }
        const auto pair = rational_angle_pair(theta, d, yu);

        for (const int l : pair.constraint.pinned) {
            CHECK(l % order != 0);
            CHECK(pair.f.poly[l - 1].b == pair.g.poly[l - 1].b);
        }
        const auto& Y = pair.decomposition.exclusive;
        const Complex rot = std::polar(1.0, 2.0 * theta);
        for (const auto& p : Y.expand(10.0)) CHECK(multiplicity_at(Y, p.z * rot, 10.0) == p.multiplicity);
        check_recombination(pair, 10.0);
        check_agreement(pair, {line(0.0, 1.0, 41), line(0.0, std::polar(1.0, theta), 41)}, 0);
        check_witness(pair, yu[0].z, 0);
    }
}

TEST_CASE("parallel-line pairs") {
    Rng rng(303);
    constexpr long kSeries = 10000;
    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        const double tau = rng.uniform(0.3, 1.5) * (rng.integer(0, 4) == 0 ? -1.0 : 1.0);
        const double half = std::abs(tau);
        std::vector<WeightedPoint> yu;
        const int ny = rng.integer(1, 2);
        for (int i = 0; i < ny; ++i) {
            yu.push_back({off_axis_point(rng, 1.0, 0.1 * half, 0.9 * half) + Complex{2.5 * i, 0.0}, rng.integer(1, 2)});
        }
        const double S = coeff_relation_rhs(tau, yu, Genus{1}, 0.0, 1, kSeries).value;
        PairData d;
        d.p = Genus{1};
        const double a1 = rng.uniform(-0.2, 0.2);
        const double b = rng.uniform(-1.0, 1.0);
        d.poly_f = {{a1, b}};
        d.poly_g = {{a1, b - S / tau}};
        if (rng.integer(0, 1)) {
            const PolyCoefficient c2{rng.uniform(-0.05, 0.05), rng.uniform(-0.1, 0.1)};
            d.poly_f.push_back(c2);
            d.poly_g.push_back(c2);
        }
        const auto pair = parallel_pair(tau, d, yu, kTol, kSeries);

        const auto& Y = pair.decomposition.exclusive;
        for (const auto& p : Y.expand(8.0)) {
            for (int k = -5; k <= 5; ++k) {
                const Complex shifted = p.z + Complex{0.0, 2.0 * k * tau};
                if (std::abs(shifted) <= 8.0) CHECK(multiplicity_at(Y, shifted, 20.0) == p.multiplicity);
            }
        }
        check_recombination(pair, 8.0);
        check_agreement(pair, {line(0.0, 1.0, 25), line({0.0, tau}, 1.0, 25)}, 500);
        check_witness(pair, yu[0].z, 500);
    }
}

TEST_CASE("infinite-line pairs") {
    Rng rng(404);
    constexpr long kSeries = 10000;
    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        const double tau = rng.uniform(0.3, 1.5);
        std::vector<WeightedPoint> yu;
        const int ny = rng.integer(1, 2);
        for (int i = 0; i < ny; ++i) {
            yu.push_back({off_axis_point(rng, 1.0, 0.1 * tau, 0.9 * tau) + Complex{2.5 * i, 0.0}, rng.integer(1, 2)});
        }
        RootSystem X;
        // Shared roots near 0 make exp(z/x) swamp the witness at negative Re z.
        if (rng.integer(0, 1)) X.explicit_roots.push_back({{rng.uniform(0.5, 3.0) * (rng.integer(0, 1) ? 1 : -1), 0.0}, 1});
        const double b = rng.uniform(-1.0, 1.0);
        const auto pair =
            infinite_lines_pair(tau, 1.0, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-0.2, 0.2), b, X, yu,
                                kSeries);

        const auto& Y = pair.decomposition.exclusive;
        for (const auto& p : Y.expand(8.0)) {
            for (int k = -5; k <= 5; ++k) {
                const Complex shifted = p.z + Complex{0.0, 2.0 * k * tau};
                if (std::abs(shifted) <= 8.0) CHECK(multiplicity_at(Y, shifted, 20.0) == p.multiplicity);
            }
        }
        check_recombination(pair, 8.0);

        // b - b' does not depend on where the relation is probed.
        const double offset = b - pair.g.poly[0].b;
        for (const int n : {1, 2, 3}) {
            for (const double x : {0.0, 1.0, 2.0}) {
                const auto rhs = coeff_relation_rhs(tau, yu, Genus{1}, x, n, kSeries);
                CHECK(std::abs(rhs.value / (n * tau) - offset) <= rhs.tail / (n * tau) + pair.constraint.series_tail);
            }
        }

        if (cfg % 4 == 0) {
            std::vector<LineSpec> lines;
            for (int n = -2; n <= 2; ++n) lines.push_back(line({0.0, n * tau}, 1.0, 25));
            check_agreement(pair, lines, 500);
        }
        check_witness(pair, yu[0].z, 500);
    }
}

TEST_CASE("truncation consistency under K -> 2K") {
    Rng rng(505);
    const std::vector<HadamardForm> forms{coshsinh_pair().f, coshsinh_pair().g, universal_base(3),
                                          universal_partner(2, 3, 100000).form};
    for (int i = 0; i < 100; ++i) {
        const auto& form = forms[static_cast<std::size_t>(i) % forms.size()];
        const Complex z = std::polar(rng.uniform(0.0, 5.0), rng.uniform(-kPi, kPi));
        const auto a = evaluate(form, z, 1000);
        const auto b = evaluate(form, z, 2000);
        CHECK(std::abs(b.value - a.value) <= std::expm1(a.tail_error_log) * std::abs(a.value) + 1e-15);
    }
}

TEST_CASE("conjugate roots leave magnitudes on R unchanged") {
    const auto F = coshsinh_pair().f;
    HadamardForm G = F;
    G.roots = mirror_conjugate(F.roots);
    const auto pf = magnitude_on_line(F, line(0.0, 1.0, 121), 2000);
    const auto pg = magnitude_on_line(G, line(0.0, 1.0, 121), 2000);
    CHECK(agreement_report(pf, pg, kTol).verdict == Verdict::agree);
}

TEST_CASE("verdicts are stable under grid refinement") {
    const auto pair = quartic_pair();
    for (const Complex anchor : {Complex{0.0}, Complex{0.0, 0.5}}) {
        const auto coarse = verify_pair(pair.f, pair.g, {line(anchor, 1.0, 301)}, 0, 1e-12);
        const auto fine = verify_pair(pair.f, pair.g, {line(anchor, 1.0, 601)}, 0, 1e-12);
        CHECK(coarse[0].verdict == fine[0].verdict);
    }
    const auto cs = coshsinh_pair();
    const auto coarse = verify_pair(cs.f, cs.g, {line(1i, 1.0, 301)}, 2000, kTol);
    const auto fine = verify_pair(cs.f, cs.g, {line(1i, 1.0, 601)}, 2000, kTol);
    CHECK(coarse[0].verdict == fine[0].verdict);
}

TEST_CASE("Jensen bound holds for the Fock forms of the example signals") {
    const double pi = kPi;
    const JensenBoundInput gauss{0, Complex{1.0 / std::sqrt(2.0)}, 1.0 / std::sqrt(2.0)};
    const JensenBoundInput cs{0, 1.0, std::sqrt(2.0) * std::exp(pi / 4)};
    const double qn = l2_norm(signals::quartic_preimage());
    const JensenBoundInput quart{0, 1.0, qn * qn};
    for (const double r : {1.0, 2.0, 5.0, 10.0, 50.0}) {
        CHECK(jensen_bound_check(RootSystem{}, gauss, r));
        CHECK(jensen_bound_check(coshsinh_pair().f.roots, cs, r));
        CHECK(jensen_bound_check(coshsinh_pair().g.roots, cs, r));
        CHECK(jensen_bound_check(quartic_pair().f.roots, quart, r));
    }
}
