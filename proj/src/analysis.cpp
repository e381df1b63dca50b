#include "phaseret/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "phaseret/errors.hpp"
#include "phaseret/series.hpp"

namespace phaseret {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

int severity(Verdict v) {
    switch (v) {
        case Verdict::agree:
            return 0;
        case Verdict::inconclusive:
            return 1;
        case Verdict::disagree:
            return 2;
    }
    return 2;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::agree:
            return "agree";
        case Verdict::disagree:
            return "disagree";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

AgreementReport agreement_report(const MagnitudeProfile& pf, const MagnitudeProfile& pg, double tol) {
    if (!(tol > 0.0)) throw PreconditionError("agreement tolerance must be > 0");
    const auto& a = pf.samples;
    const auto& b = pg.samples;
    if (a.size() != b.size() || pf.line.anchor != pg.line.anchor || pf.line.direction != pg.line.direction) {
        throw PreconditionError("agreement_report: profiles are sampled on different grids");
    }
    AgreementReport rep;
    rep.line_id = pf.line.id;
    rep.tolerance = tol;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].x != b[i].x) throw PreconditionError("agreement_report: profiles are sampled on different grids");
        const double scale = 1.0 + a[i].magnitude;
        const double dev = std::abs(a[i].magnitude - b[i].magnitude) / scale;
        rep.tail = std::max(rep.tail, (a[i].tail_error + b[i].tail_error) / scale);
        if (dev > rep.deviation || i == 0) {
            rep.deviation = dev;
            rep.argmax_x = a[i].x;
        }
    }
    rep.witness = pf.line.point(rep.argmax_x);
    rep.combined_tolerance = tol + rep.tail;
    if (rep.deviation <= rep.combined_tolerance) {
        rep.verdict = Verdict::agree;
    } else if (rep.deviation <= 10.0 * rep.tail) {
        rep.verdict = Verdict::inconclusive;
    } else {
        rep.verdict = Verdict::disagree;
    }
    return rep;
}

Verdict overall_verdict(const std::vector<AgreementReport>& reports) {
    Verdict worst = Verdict::agree;
    for (const auto& r : reports) {
        if (severity(r.verdict) > severity(worst)) worst = r.verdict;
    }
    return worst;
}

std::vector<AgreementReport> verify_pair(const HadamardForm& f, const HadamardForm& g,
                                         const std::vector<LineSpec>& lines, long K, double tol) {
    std::vector<AgreementReport> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        out.push_back(agreement_report(magnitude_on_line(f, line, K), magnitude_on_line(g, line, K), tol));
    }
    return out;
}

void JensenBoundInput::validate() const {
    if (k < 0) throw PreconditionError("Jensen input needs k >= 0");
    if (std::abs(lead) == 0.0) throw PreconditionError("Jensen input needs a nonzero lead coefficient");
    if (!(l2_norm_sq > 0.0)) throw PreconditionError("Jensen input needs ||f||^2 > 0");
}

double jensen_c(const JensenBoundInput& in) {
    in.validate();
    const double log_lead = std::log(std::abs(in.lead));
    if (in.k == 0) return std::log(in.l2_norm_sq / std::sqrt(2.0)) - 2.0 * log_lead;
    return std::log(in.l2_norm_sq / (std::sqrt(2.0) * std::exp(static_cast<double>(in.k)))) - 2.0 * log_lead + in.k;
}

double jensen_bound(const JensenBoundInput& in, double r) {
    if (!(r > 0.0)) throw PreconditionError("Jensen bound needs r > 0");
    return kPi * kE * r * r - 2.0 * in.k * std::log(r) + jensen_c(in);
}

long root_count(const RootSystem& roots, double r) {
    long n = roots.origin_multiplicity;
    for (const auto& p : roots.expand(r)) n += p.multiplicity;
    return n;
}

bool jensen_bound_check(const RootSystem& roots, const JensenBoundInput& in, double r) {
    return static_cast<double>(root_count(roots, r)) <= jensen_bound(in, r);
}

RootSystem lattice_roots(double a, double b, double radius) {
    if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("lattice spacings must be positive");
    RootSystem rs;
    const long ja = static_cast<long>(std::floor(radius / a));
    const long jb = static_cast<long>(std::floor(radius / b));
    for (long i = -ja; i <= ja; ++i) {
        for (long j = -jb; j <= jb; ++j) {
            if (i == 0 && j == 0) continue;
            const Complex z{a * static_cast<double>(i), b * static_cast<double>(j)};
            if (std::abs(z) <= radius) rs.explicit_roots.push_back({z, 1});
        }
    }
    rs.origin_multiplicity = 1;
    rs.exact_within = radius;
    return rs;
}

const char* to_string(LatticeRegime v) {
    switch (v) {
        case LatticeRegime::uniqueness_regime:
            return "uniqueness_regime";
        case LatticeRegime::counterexample_regime:
            return "counterexample_regime";
        case LatticeRegime::open_gap:
            return "open_gap";
    }
    return "unknown";
}

LatticeVerdict lattice_density_verdict(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("lattice spacings must be positive");
    LatticeVerdict v;
    v.density_product = a * b;
    if (v.density_product < 1.0 / kE) {
        v.regime = LatticeRegime::uniqueness_regime;
    } else if (v.density_product > 1.0) {
        v.regime = LatticeRegime::counterexample_regime;
    } else {
        v.regime = LatticeRegime::open_gap;
    }
    v.note = "thresholds 1/e and 1 are the ones proved here; sampling results for the Fock space place the sharp "
             "threshold at ab = 1";
    return v;
}

double gamma_integral(double lambda) {
    if (!(lambda > 1.0)) throw PreconditionError("gamma_integral diverges for lambda <= 1");
    const double lg = std::lgamma(0.5 * (lambda - 1.0)) - std::lgamma(0.5 * lambda);
    return 0.5 * std::sqrt(kPi) * std::exp(lg);
}

double gamma_integral_quadrature(double lambda) {
    if (!(lambda > 1.0)) throw PreconditionError("gamma_integral diverges for lambda <= 1");
    // t = tan u: (1+t^2)^{-lambda/2} dt = cos^{lambda-2}(u) du
    boost::math::quadrature::tanh_sinh<double> integrator;
    const auto f = [lambda](double u, double complement) {
        // on the right half boost passes complement = pi/2 - u exactly; cos u = sin(complement)
        const double c = complement > 0.0 ? std::sin(complement) : std::cos(u);
        return std::pow(c, lambda - 2.0);
    };
    return integrator.integrate(f, 0.0, 0.5 * kPi);
}

SeriesValue universal_series_sum(SeriesId id, long K, int m) {
    if (K < 1000) throw PreconditionError("universal_series_sum needs K >= 1000");
    if (id == SeriesId::pi_identity) {
        const auto term = [](long k) {
            const double u = 4.0 * static_cast<double>(k) - 3.0;
            const double v = 4.0 * static_cast<double>(k) + 1.0;
            // log|u/v| = log1p((u - v)(u + v) / v^2) / 2, exact numerator
            return 0.5 * std::log1p(-4.0 * (u + v) / (v * v)) + 4.0 / v;
        };
        const auto s = symmetric_sum(term, K);
        if (!s.converged) throw DivergenceAlarm("pi identity partial sums failed the Cauchy test");
        return {s.value, s.tail, K};
    }
    if (m < 1) throw PreconditionError("b_m needs m >= 1");
    const Complex a{std::exp(static_cast<double>(m)), 0.5 / m};
    const auto bp = infinite_lines_b_prime(1.0 / m, {{a, 1}}, 0.0, K);
    return {-bp.value, bp.tail, K};
}

}  // namespace phaseret
