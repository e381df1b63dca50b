#include "phaseret/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Number of power sums corrected beyond the genus.
constexpr int kTailPowers = 4;

struct LogAccumulator {
    Complex sum{0.0, 0.0};
    double magnitude = 0.0;  // sum of |terms|, for the rounding estimate
    long terms = 0;
    void add(Complex v) {
        sum += v;
        magnitude += std::abs(v);
        ++terms;
    }
};

// Lower bound d(t) = |s| t - |b| on |b + k s| for |k| >= t.
double modulus_floor(const RootOrbit& o, double t) { return std::abs(o.step) * t - std::abs(o.base); }

double min_omitted_modulus(const RootOrbit& o, long K) {
    const double s2 = std::norm(o.step);
    const double vertex = -(o.base * std::conj(o.step)).real() / s2;
    double best = std::numeric_limits<double>::infinity();
    const auto consider = [&](double k) {
        if (std::abs(k) > static_cast<double>(K)) best = std::min(best, std::abs(o.base + k * o.step));
    };
    consider(static_cast<double>(K + 1));
    consider(-static_cast<double>(K + 1));
    consider(std::floor(vertex));
    consider(std::ceil(vertex));
    return best;
}

struct TailCorrection {
    Complex log_correction{0.0, 0.0};
    double error_bound = 0.0;
};

// Log of the omitted factors prod_{|k|>K} E(z/(b+ks); p)^mult, estimated through
// the power sums S_j = sum_{|k|>K} (b+ks)^{-j}, j = p+1..p+kTailPowers, each by the
// midpoint rule: sum_{k>K} h(k) ~ int_{K+1/2}^inf h.
TailCorrection orbit_tail(const RootOrbit& o, Complex z, int p, long K) {
    TailCorrection tc;
    const double zabs = std::abs(z);
    if (zabs == 0.0) return tc;
    const Complex s = o.step;
    const double sabs = std::abs(s);
    const double X = static_cast<double>(K) + 0.5;
    const double D_mid = modulus_floor(o, static_cast<double>(K) - 0.5);
    const double D_end = modulus_floor(o, static_cast<double>(K));
    if (!(D_mid > 0.0) || D_end < 2.0 * zabs) {
        throw InsufficientTruncationError("translation orbit truncated too early for the midpoint tail estimate");
    }
    const Complex up = o.base + X * s;
    const Complex down = o.base - X * s;
    Complex zj = std::pow(z, p + 1);
    for (int j = p + 1; j <= p + kTailPowers; ++j) {
        const Complex S = (std::pow(up, 1 - j) - std::pow(down, 1 - j)) / (static_cast<double>(j - 1) * s);
        tc.log_correction -= static_cast<double>(o.multiplicity) * zj * S / static_cast<double>(j);
        // midpoint-rule error on both half-lines: j |s| D^{-(j+1)} / 12
        const double eps_j = j * sabs * std::pow(D_mid, -(j + 1)) / 12.0;
        tc.error_bound += o.multiplicity * std::pow(zabs, j) * eps_j / j;
        zj *= z;
    }
    // Mercator remainder of the powers beyond p + kTailPowers: |w| <= 1/2 on every omitted root.
    const int n = p + kTailPowers + 1;
    tc.error_bound += o.multiplicity * (2.0 / n) * 2.0 * std::pow(zabs, n) * std::pow(D_end, 1 - n) / ((n - 1) * sabs);
    return tc;
}

}  // namespace

int HadamardForm::poly_degree() const noexcept {
    for (int l = static_cast<int>(poly.size()); l >= 1; --l) {
        if (poly[l - 1].a != 0.0 || poly[l - 1].b != 0.0) return l;
    }
    return 0;
}

void HadamardForm::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("Hadamard form needs r > 0");
    if (!std::isfinite(phi)) throw PreconditionError("Hadamard form phase must be finite");
    if (static_cast<int>(poly.size()) > kMaxPolyDegree) {
        throw PreconditionError("exponent polynomial degree exceeds " + std::to_string(kMaxPolyDegree));
    }
    if (m < 0) throw PreconditionError("origin multiplicity must be >= 0");
    if (roots.origin_multiplicity != 0 && roots.origin_multiplicity != m) {
        throw PreconditionError("root system origin multiplicity disagrees with m");
    }
    for (const auto& o : roots.orbits) {
        if (o.kind == RootOrbit::Kind::translation && p.value() < 1) {
            throw PreconditionError("translation orbits need genus p >= 1 for a convergent product");
        }
    }
    roots.validate(32.0);
}

namespace {

struct LogSum {
    Complex total{0.0, 0.0};  // log f(z), imaginary part unreduced
    double error = 0.0;       // tail bound plus rounding
    bool root_hit = false;
};

LogSum accumulate_log(const HadamardForm& form, Complex z, long K) {
    if (K < 0) throw PreconditionError("truncation count K must be >= 0");
    LogSum out;
    const double zabs = std::abs(z);
    if (form.m > 0 && zabs < kRootHitTol) {
        out.root_hit = true;
        return out;
    }

    LogAccumulator acc;
    const Genus p = form.p;
    const auto add_root = [&](Complex a, int mult) {
        if (std::abs(z - a) < kRootHitTol) {
            out.root_hit = true;
            return false;
        }
        acc.add(static_cast<double>(mult) * log_primary_factor(z / a, p));
        return true;
    };

    for (const auto& root : form.roots.explicit_roots) {
        if (!add_root(root.z, root.multiplicity)) return out;
    }

    double tail_bound = 0.0;
    const double inclusion = std::max(2.0 * zabs, kMinInclusionRadius);
    for (const auto& o : form.roots.orbits) {
        if (o.kind == RootOrbit::Kind::rotation) {
            for (const auto& pt : o.points_within(std::abs(o.base))) {
                if (!add_root(pt.z, pt.multiplicity)) return out;
            }
            continue;
        }
        const double omitted = min_omitted_modulus(o, K);
        if (omitted < inclusion) {
            throw InsufficientTruncationError("orbit root of modulus " + std::to_string(omitted) +
                                              " omitted at K = " + std::to_string(K) +
                                              "; all roots with |a| < " + std::to_string(inclusion) +
                                              " must be included");
        }
        // symmetric order: k = 0, then +-1, +-2, ...
        for (long k = 0; k <= K; ++k) {
            if (!add_root(o.base + static_cast<double>(k) * o.step, o.multiplicity)) return out;
            if (k > 0 && !add_root(o.base - static_cast<double>(k) * o.step, o.multiplicity)) return out;
        }
        const auto tc = orbit_tail(o, z, p.value(), K);
        acc.add(tc.log_correction);
        tail_bound += tc.error_bound;
    }

    Complex poly_part{0.0, 0.0};
    for (int l = static_cast<int>(form.poly.size()); l >= 1; --l) {
        poly_part = z * (poly_part + Complex{form.poly[l - 1].a, form.poly[l - 1].b});
    }
    out.total = acc.sum + poly_part + Complex{std::log(form.r), form.phi};
    if (form.m > 0) out.total += static_cast<double>(form.m) * std::log(z);

    const double rounding = 4.0 * kEps * (acc.magnitude + std::abs(poly_part) + std::abs(out.total)) +
                            2.0 * kEps * static_cast<double>(acc.terms);
    out.error = tail_bound + rounding;
    return out;
}

}  // namespace

Evaluation evaluate(const HadamardForm& form, Complex z, long K) {
    const auto ls = accumulate_log(form, z, K);
    if (ls.root_hit) return {Complex{0.0, 0.0}, 0.0};
    if (ls.total.real() > std::log(std::numeric_limits<double>::max())) {
        throw RangeError("Hadamard product overflows double range", ls.total.real());
    }
    return {std::exp(ls.total), ls.error};
}

LogMagnitude log_magnitude(const HadamardForm& form, Complex z, long K) {
    const auto ls = accumulate_log(form, z, K);
    if (ls.root_hit) throw SingularInputError("log|f| evaluated within 1e-12 of a root");
    return {ls.total.real(), ls.error};
}

void LineSpec::validate() const {
    if (std::abs(std::abs(direction) - 1.0) > 1e-12) throw PreconditionError("line direction must have unit modulus");
    if (count < 2) throw PreconditionError("line grid needs at least 2 points");
    if (!(t_max > t_min)) throw PreconditionError("line grid needs t_max > t_min");
}

double LineSpec::parameter(int i) const {
    if (i == count - 1) return t_max;
    return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

MagnitudeProfile magnitude_on_line(const HadamardForm& form, const LineSpec& line, long K) {
    line.validate();
    MagnitudeProfile prof;
    prof.line = line;
    prof.samples.resize(static_cast<std::size_t>(line.count));
    for (int i = 0; i < line.count; ++i) {
        const double t = line.parameter(i);
        const auto ev = evaluate(form, line.point(t), K);
        const double mag = std::abs(ev.value);
        prof.samples[static_cast<std::size_t>(i)] = {t, mag, mag * std::expm1(ev.tail_error_log)};
    }
    return prof;
}

double order_estimate(const HadamardForm& form) {
    const double q = form.poly_degree();
    if (form.roots.finite()) return q;
    // bisection on the exponent A between "partial sums keep growing" and "they settle"
    constexpr long kRoots = 4096;
    double lo = 0.0, hi = 4.0;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (convergence_exponent_partial(form.roots, mid, kRoots).divergence_suspected) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::max(q, hi);
}

void write_profiles_csv(std::ostream& out, std::span<const MagnitudeProfile> profiles) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << "line_id,x,magnitude,tail_error\n";
    out << std::setprecision(17);
    for (const auto& prof : profiles) {
        for (const auto& s : prof.samples) {
            out << prof.line.id << ',' << s.x << ',' << s.magnitude << ',' << s.tail_error << '\n';
        }
    }
    out.flags(flags);
    out.precision(prec);
}

}  // namespace phaseret
