#include "phaseret/ambiguity.hpp"
#include "phaseret/lines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phaseret/errors.hpp"
#include "phaseret/series.hpp"

namespace phaseret {

namespace {

constexpr double kPi = std::numbers::pi;
// coefficients compared with this relative slack; the constructions copy them verbatim
constexpr double kCoeffTol = 1e-14;
// probe abscissae for the parallel-lines relation
constexpr double kProbeX[] = {-1.0, 0.0, 1.0, 2.0};

bool same_coefficient(double u, double v) { return std::abs(u - v) <= kCoeffTol * std::max(1.0, std::abs(u)); }

const PolyCoefficient& coeff_at(const std::vector<PolyCoefficient>& poly, std::size_t i) {
    static const PolyCoefficient zero{};
    return i < poly.size() ? poly[i] : zero;
}

void check_real_parts(const std::vector<PolyCoefficient>& pf, const std::vector<PolyCoefficient>& pg) {
    const std::size_t q = std::max(pf.size(), pg.size());
    for (std::size_t i = 0; i < q; ++i) {
        if (!same_coefficient(coeff_at(pf, i).a, coeff_at(pg, i).a)) {
            throw ConstraintError("Re c_" + std::to_string(i + 1) + " differs between f and g (" +
                                  std::to_string(coeff_at(pf, i).a) + " vs " + std::to_string(coeff_at(pg, i).a) + ")");
        }
    }
}

double probe_radius(const RootSystem& rs) {
    double r = 8.0;
    for (const auto& p : rs.explicit_roots) r = std::max(r, 2.0 * std::abs(p.z) + 1.0);
    for (const auto& o : rs.orbits) r = std::max(r, 2.0 * std::abs(o.base) + 8.0 * std::abs(o.step) + 1.0);
    return r;
}

// No a in Y with conj(a) in Y: otherwise the point is common, not exclusive.
void check_conjugate_free(const RootSystem& Y) {
    for (const auto& o : Y.orbits) {
        if (o.kind != RootOrbit::Kind::translation) continue;
        if (std::abs(o.step.real()) > kCoincidenceTol) continue;
        const double ratio = 2.0 * o.base.imag() / o.step.imag();
        if (std::abs(ratio - std::round(ratio)) <= 1e-9) {
            throw SymmetryViolationError("translation orbit contains the conjugates of its own points", o.base);
        }
    }
    const auto pts = Y.expand(probe_radius(Y));
    for (const auto& p : pts) {
        const Complex c = std::conj(p.z);
        for (const auto& q : pts) {
            if (std::abs(q.z - c) <= kCoincidenceTol) {
                throw SymmetryViolationError("Y contains a point together with its conjugate", p.z);
            }
        }
    }
}

HadamardForm make_form(double r, double phi, std::vector<PolyCoefficient> poly, int m, Genus p, RootSystem roots) {
    HadamardForm h;
    h.r = r;
    h.phi = phi;
    h.poly = std::move(poly);
    h.m = m;
    h.p = p;
    roots.origin_multiplicity = m;
    h.roots = std::move(roots);
    h.validate();
    return h;
}

void check_pair_data(const PairData& d) {
    if (!(d.r > 0.0)) throw PreconditionError("pair needs r > 0");
    if (!d.X.explicit_roots.empty() || !d.X.orbits.empty()) d.X.validate(probe_radius(d.X));
    check_real_parts(d.poly_f, d.poly_g);
}

AmbiguityPair assemble(const PairData& d, const RootSystem& Y, const RootSystem& Y_u, PairConstraint c) {
    check_pair_data(d);
    check_conjugate_free(Y);
    const double radius = probe_radius(combine(d.X, Y));
    const auto shared = [&](const RootSystem& y) {
        const auto a = d.X.expand(radius);
        const auto b = y.expand(radius);
        for (const auto& p : a) {
            for (const auto& q : b) {
                if (std::abs(p.z - q.z) <= kCoincidenceTol) {
                    throw PreconditionError("X and Y must be disjoint; fold shared points into multiplicities");
                }
            }
        }
    };
    const RootSystem Ybar = mirror_conjugate(Y);
    shared(Y);
    shared(Ybar);

    AmbiguityPair pair;
    pair.f = make_form(d.r, d.phi, d.poly_f, d.m, d.p, combine(d.X, Y));
    pair.g = make_form(d.r, d.psi, d.poly_g, d.m, d.p, combine(d.X, Ybar));
    pair.constraint = std::move(c);
    pair.decomposition.common = d.X;
    pair.decomposition.exclusive = Y;
    pair.decomposition.fundamental = Y_u;
    return pair;
}

void check_multiplicities(const std::vector<WeightedPoint>& pts) {
    for (const auto& p : pts) {
        if (p.multiplicity < 1) throw PreconditionError("Y_u multiplicities must be >= 1");
    }
}

Complex lattice_point(Complex a, double tau, long k) { return a + Complex{0.0, 2.0 * tau * static_cast<double>(k)}; }

// log(|v + d| / |v|) with |v + d|^2 - |v|^2 = Re(d conj(2v + d)). The shift d is
// passed exactly; forming it from two rounded lattice points costs eps per term.
double log_abs_ratio(Complex v, Complex d) {
    const double diff = (d * std::conj(2.0 * v + d)).real();
    return 0.5 * std::log1p(diff / std::norm(v));
}

}  // namespace

void PairConstraint::validate() const {
    switch (kind) {
        case Kind::single_line:
            return;
        case Kind::rational_angle: {
            const auto n_min = rotation_order(theta);
            if (!n_min || *n_min != n) {
                throw PreconditionError("rational_angle constraint needs n minimal with n*theta in pi*N");
            }
            return;
        }
        case Kind::parallel:
        case Kind::infinite_lines:
            if (tau == 0.0 || !std::isfinite(tau)) throw PreconditionError("line spacing tau must be nonzero");
            return;
    }
}

const char* to_string(PairConstraint::Kind kind) {
    switch (kind) {
        case PairConstraint::Kind::single_line:
            return "single_line";
        case PairConstraint::Kind::rational_angle:
            return "rational_angle";
        case PairConstraint::Kind::parallel:
            return "parallel";
        case PairConstraint::Kind::infinite_lines:
            return "infinite_lines";
    }
    return "unknown";
}

std::vector<LineSpec> declared_lines(const PairConstraint& c, double t_min, double t_max, int count, int n_lo,
                                     int n_hi) {
    const auto line = [&](Complex anchor, Complex dir, std::string id) {
        LineSpec l;
        l.anchor = anchor;
        l.direction = dir;
        l.t_min = t_min;
        l.t_max = t_max;
        l.count = count;
        l.id = std::move(id);
        return l;
    };
    std::vector<LineSpec> out;
    out.push_back(line({0.0, 0.0}, {1.0, 0.0}, "R"));
    switch (c.kind) {
        case PairConstraint::Kind::single_line:
            break;
        case PairConstraint::Kind::rational_angle:
            out.push_back(line({0.0, 0.0}, std::polar(1.0, c.theta), "rot(" + format_number(c.theta) + ")"));
            break;
        case PairConstraint::Kind::parallel:
            out.push_back(line({0.0, c.tau}, {1.0, 0.0}, horizontal_line_id(c.tau)));
            break;
        case PairConstraint::Kind::infinite_lines:
            out.clear();
            for (int n = n_lo; n <= n_hi; ++n) {
                out.push_back(line({0.0, n * c.tau}, {1.0, 0.0}, horizontal_line_id(n * c.tau)));
            }
            break;
    }
    return out;
}

AmbiguityPair mcdonald_pair(const PairData& data, const RootSystem& Y) {
    PairConstraint c;
    c.kind = PairConstraint::Kind::single_line;
    return assemble(data, Y, Y, c);
}

AmbiguityPair rational_angle_pair(double theta, const PairData& data, const std::vector<WeightedPoint>& Y_u) {
    if (!(theta > 0.0) || theta > kPi / 2.0 + 1e-15) {
        throw PreconditionError("rational angle theta must lie in (0, pi/2]");
    }
    const auto n = rotation_order(theta);
    if (!n) throw PreconditionError("theta = " + std::to_string(theta) + " is not a rational multiple of pi");
    check_multiplicities(Y_u);

    PairConstraint c;
    c.kind = PairConstraint::Kind::rational_angle;
    c.theta = theta;
    c.n = *n;
    const std::size_t q = std::max(data.poly_f.size(), data.poly_g.size());
    for (std::size_t i = 0; i < q; ++i) {
        const int l = static_cast<int>(i) + 1;
        if (l % *n == 0) continue;
        if (coeff_at(data.poly_f, i).b != coeff_at(data.poly_g, i).b) {
            throw ConstraintError("b'_" + std::to_string(l) + " must equal b_" + std::to_string(l) +
                                  " since theta*l is not in pi*Z");
        }
        c.pinned.push_back(l);
    }

    RootSystem Y, Yu;
    const double tol = 1e-12;
    for (const auto& a : Y_u) {
        const double arg = std::arg(a.z);
        if (std::abs(a.z) <= kCoincidenceTol) throw PreconditionError("Y_u points must be nonzero");
        if (!(arg >= -theta - tol && arg < theta - tol)) {
            throw PreconditionError("Y_u point outside the sector arg in [-theta, theta)");
        }
        if (std::abs(arg) <= tol || std::abs(arg + theta) <= tol) {
            throw PreconditionError("Y_u point on R or on e^{-i theta}R: its orbit contains its own conjugate");
        }
        Y.orbits.push_back(RootOrbit::rotation(a.z, theta, a.multiplicity));
        Yu.explicit_roots.push_back(a);
    }
    return assemble(data, Y, Yu, c);
}

SeriesValue coeff_relation_rhs(double tau, const std::vector<WeightedPoint>& Y_u, Genus p, double x, int n, long K) {
    if (tau == 0.0) throw PreconditionError("coefficient relation needs tau != 0");
    check_multiplicities(Y_u);
    const Complex z{x, n * tau};
    const Complex shift{0.0, -2.0 * tau * n};
    const int pv = p.value();
    const auto poly_part = [pv](Complex w) {
        Complex acc{0.0, 0.0};
        for (int l = pv; l >= 1; --l) acc = w * (acc + 1.0 / static_cast<double>(l));
        return acc.real();
    };
    SeriesValue out;
    out.K = K;
    for (const auto& a : Y_u) {
        const auto term = [&](long k) {
            const Complex ak = lattice_point(a.z, tau, k);
            const Complex akn = lattice_point(a.z, tau, k - n);
            return log_abs_ratio(ak, shift) + poly_part(z / ak) - poly_part(z / std::conj(akn));
        };
        const auto s = symmetric_sum(term, K);
        out.value += a.multiplicity * s.value;
        out.tail += a.multiplicity * s.tail;
    }
    return out;
}

SeriesValue coeff_relation_residual(double tau, const std::vector<PolyCoefficient>& poly_f,
                                    const std::vector<PolyCoefficient>& poly_g, const std::vector<WeightedPoint>& Y_u,
                                    Genus p, double x, long K) {
    const Complex z{x, tau};
    double lhs = 0.0;
    Complex zl{1.0, 0.0};
    const std::size_t q = std::max(poly_f.size(), poly_g.size());
    for (std::size_t i = 0; i < q; ++i) {
        zl *= z;
        lhs += (coeff_at(poly_f, i).b - coeff_at(poly_g, i).b) * zl.imag();
    }
    auto rhs = coeff_relation_rhs(tau, Y_u, p, x, 1, K);
    return {lhs - rhs.value, rhs.tail, K};
}

AmbiguityPair parallel_pair(double tau, const PairData& data, const std::vector<WeightedPoint>& Y_u, double tol,
                            long K) {
    if (tau == 0.0) throw PreconditionError("parallel lines need tau != 0");
    if (data.p.value() < 1 && !Y_u.empty()) throw PreconditionError("translation orbits need genus p >= 1");
    const double half = std::abs(tau);
    RootSystem Y, Yu;
    for (const auto& a : Y_u) {
        if (!(a.z.imag() >= -half && a.z.imag() < half)) {
            throw PreconditionError("Y_u point outside the strip R + i[-tau, tau)");
        }
        Y.orbits.push_back(RootOrbit::translation(a.z, {0.0, 2.0 * tau}, a.multiplicity));
        Yu.explicit_roots.push_back(a);
    }
    check_multiplicities(Y_u);

    PairConstraint c;
    c.kind = PairConstraint::Kind::parallel;
    c.tau = tau;
    for (const double x : kProbeX) {
        const auto res = coeff_relation_residual(tau, data.poly_f, data.poly_g, Y_u, data.p, x, K);
        if (std::abs(res.value) > tol + res.tail) {
            throw ConstraintError("coefficient relation violated at x = " + std::to_string(x) +
                                  ": residual " + std::to_string(res.value));
        }
        c.series_K = K;
        c.series_tail = std::max(c.series_tail, res.tail);
    }
    if (!data.poly_f.empty() || !data.poly_g.empty()) {
        c.series_value = coeff_at(data.poly_f, 0).b - coeff_at(data.poly_g, 0).b;
    }
    return assemble(data, Y, Yu, c);
}

SeriesValue infinite_lines_b_prime(double tau, const std::vector<WeightedPoint>& Y_u, double b, long K) {
    if (tau == 0.0) throw PreconditionError("infinite lines need tau != 0");
    check_multiplicities(Y_u);
    const double half = std::abs(tau);
    SeriesValue out;
    out.K = K;
    const Complex shift{0.0, -2.0 * tau};
    double S = 0.0;
    for (const auto& a : Y_u) {
        if (!(a.z.imag() >= -half && a.z.imag() < half)) {
            throw PreconditionError("Y_u point outside the strip R + i[-tau, tau)");
        }
        const auto term = [&](long k) {
            const Complex ak = lattice_point(a.z, tau, k);
            return log_abs_ratio(ak, shift) - 2.0 * tau * (1.0 / ak).imag();
        };
        const auto s = symmetric_sum(term, K);
        if (!s.converged) {
            throw DivergenceAlarm("series for b' failed the Cauchy test at K = " + std::to_string(K));
        }
        S += a.multiplicity * s.value;
        out.tail += a.multiplicity * s.tail;
    }
    out.value = b - S / tau;
    out.tail /= half;
    return out;
}

AmbiguityPair infinite_lines_pair(double tau, double r, double phi, double psi, double a1, double b, const RootSystem& X,
                                  const std::vector<WeightedPoint>& Y_u, long K) {
    const auto bp = infinite_lines_b_prime(tau, Y_u, b, K);
    PairData d;
    d.r = r;
    d.phi = phi;
    d.psi = psi;
    d.poly_f = {{a1, b}};
    d.poly_g = {{a1, bp.value}};
    d.p = Genus{1};
    d.X = X;

    RootSystem Y, Yu;
    for (const auto& a : Y_u) {
        Y.orbits.push_back(RootOrbit::translation(a.z, {0.0, 2.0 * tau}, a.multiplicity));
        Yu.explicit_roots.push_back(a);
    }
    PairConstraint c;
    c.kind = PairConstraint::Kind::infinite_lines;
    c.tau = tau;
    c.series_K = K;
    c.series_value = b - bp.value;
    c.series_tail = bp.tail;
    return assemble(d, Y, Yu, c);
}

HadamardForm universal_base(int N_max) {
    if (N_max < 0) throw PreconditionError("universal_base needs N_max >= 0");
    RootSystem rs;
    for (int n = 1; n <= N_max; ++n) {
        rs.orbits.push_back(RootOrbit::translation({std::exp(static_cast<double>(n)), 0.5 / n}, {0.0, 2.0 / n}));
    }
    return make_form(1.0, 0.0, {}, 0, Genus{1}, std::move(rs));
}

UniversalPartner universal_partner(int m, int N_max, long K) {
    if (m < 1 || m > N_max) throw PreconditionError("universal_partner needs 1 <= m <= N_max");
    const double tau = 1.0 / m;
    const Complex a{std::exp(static_cast<double>(m)), 0.5 / m};
    // b_m = m * S(a, tau) = (b - b') with b = 0
    const auto bp = infinite_lines_b_prime(tau, {{a, 1}}, 0.0, K);
    UniversalPartner out;
    out.b_m = -bp.value;
    out.tail = bp.tail;

    HadamardForm g = universal_base(N_max);
    auto& orbit = g.roots.orbits[static_cast<std::size_t>(m - 1)];
    orbit.base = std::conj(orbit.base);
    g.poly = {{0.0, -out.b_m}};
    g.validate();
    out.form = std::move(g);
    return out;
}

std::function<Complex(Complex)> closed_form_coshsinh(int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("closed_form_coshsinh sign must be +1 or -1");
    return [sign](Complex z) {
        const Complex w = 0.5 * kPi * z;
        return std::cosh(w) + static_cast<double>(sign) * Complex{0.0, 1.0} * std::sinh(w);
    };
}

AmbiguityPair coshsinh_pair() {
    PairData d;
    d.poly_f = {{0.0, kPi / 2.0}};
    d.poly_g = {{0.0, -kPi / 2.0}};
    d.p = Genus{1};
    RootSystem Y;
    Y.orbits.push_back(RootOrbit::translation({0.0, 0.5}, {0.0, 2.0}));
    RootSystem Yu;
    Yu.explicit_roots.push_back({{0.0, 0.5}, 1});
    PairConstraint c;
    c.kind = PairConstraint::Kind::infinite_lines;
    c.tau = 1.0;
    c.series_value = kPi;
    return assemble(d, Y, Yu, c);
}

AmbiguityPair quartic_pair() { return rational_angle_pair(kPi / 2.0, PairData{}, {{{1.0, 1.0}, 1}}); }

}  // namespace phaseret
