#include "phaseret/root_multiset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

constexpr double kAngleTol = 1e-12;

// Merge coincident points (within kCoincidenceTol) by adding multiplicities.
// Hash grid with cell size kCoincidenceTol: a point can only coincide with
// points in its own or a neighbouring cell.
std::vector<WeightedPoint> merge_points(std::vector<WeightedPoint> pts) {
    struct CellHash {
        std::size_t operator()(const std::pair<long long, long long>& c) const noexcept {
            return std::hash<long long>{}(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
        }
    };
    std::unordered_map<std::pair<long long, long long>, std::size_t, CellHash> cells;
    cells.reserve(pts.size());
    std::vector<WeightedPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        const long long cx = static_cast<long long>(std::floor(p.z.real() / kCoincidenceTol));
        const long long cy = static_cast<long long>(std::floor(p.z.imag() / kCoincidenceTol));
        bool merged = false;
        for (long long dx = -1; dx <= 1 && !merged; ++dx) {
            for (long long dy = -1; dy <= 1 && !merged; ++dy) {
                const auto it = cells.find({cx + dx, cy + dy});
                if (it != cells.end() && std::abs(out[it->second].z - p.z) <= kCoincidenceTol) {
                    out[it->second].multiplicity += p.multiplicity;
                    merged = true;
                }
            }
        }
        if (!merged) {
            cells.emplace(std::pair{cx, cy}, out.size());
            out.push_back(p);
        }
    }
    return out;
}

void sort_by_modulus(std::vector<WeightedPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
        const double ra = std::abs(a.z), rb = std::abs(b.z);
        if (ra != rb) return ra < rb;
        return std::arg(a.z) < std::arg(b.z);
    });
}

// Points sorted by (re, im); runs of equal real part are searched by imaginary part.
int lookup(const std::vector<WeightedPoint>& sorted_by_re, Complex z) {
    const auto by_re = [](const WeightedPoint& p, double v) { return p.z.real() < v; };
    const auto by_im = [](const WeightedPoint& p, double v) { return p.z.imag() < v; };
    auto it = std::lower_bound(sorted_by_re.begin(), sorted_by_re.end(), z.real() - kCoincidenceTol, by_re);
    int m = 0;
    while (it != sorted_by_re.end() && it->z.real() <= z.real() + kCoincidenceTol) {
        const double re = it->z.real();
        const auto run_end = std::upper_bound(it, sorted_by_re.end(), re,
                                              [](double v, const WeightedPoint& p) { return v < p.z.real(); });
        for (auto jt = std::lower_bound(it, run_end, z.imag() - kCoincidenceTol, by_im);
             jt != run_end && jt->z.imag() <= z.imag() + kCoincidenceTol; ++jt) {
            if (std::abs(jt->z - z) <= kCoincidenceTol) m += jt->multiplicity;
        }
        it = run_end;
    }
    return m;
}

std::vector<WeightedPoint> sorted_by_re(std::vector<WeightedPoint> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const WeightedPoint& a, const WeightedPoint& b) {
                  if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
                  return a.z.imag() < b.z.imag();
              });
    return pts;
}

// Expansion radius usable for a disk-bounded check: the caller's radius,
// clipped to where the system is exact.
double effective_radius(const RootSystem& rs, double radius) { return std::min(radius, rs.exact_within); }

}  // namespace

std::optional<int> rotation_order(double angle, int max_order) {
    for (int n = 1; n <= max_order; ++n) {
        const double t = n * angle / std::numbers::pi;
        if (std::abs(t - std::round(t)) <= kAngleTol * n) return n;
    }
    return std::nullopt;
}

RootOrbit RootOrbit::translation(Complex base, Complex step, int multiplicity) {
    if (std::abs(step) == 0.0) throw PreconditionError("translation orbit step must be nonzero");
    if (multiplicity < 1) throw PreconditionError("orbit multiplicity must be >= 1");
    RootOrbit o;
    o.kind = Kind::translation;
    o.base = base;
    o.step = step;
    o.multiplicity = multiplicity;
    return o;
}

RootOrbit RootOrbit::rotation(Complex base, double angle, int multiplicity) {
    if (multiplicity < 1) throw PreconditionError("orbit multiplicity must be >= 1");
    if (std::abs(base) == 0.0) throw PreconditionError("rotation orbit base must be nonzero");
    const auto n = rotation_order(angle);
    if (!n) {
        throw PreconditionError("rotation orbit angle " + std::to_string(angle) +
                                " is not a rational multiple of pi; no finite orbit exists");
    }
    RootOrbit o;
    o.kind = Kind::rotation;
    o.base = base;
    o.angle = angle;
    o.order = *n;
    o.multiplicity = multiplicity;
    return o;
}

std::vector<WeightedPoint> RootOrbit::points_within(double radius, long k_max) const {
    std::vector<WeightedPoint> out;
    if (kind == Kind::rotation) {
        if (std::abs(base) > radius) return out;
        for (int k = 0; k < order; ++k) {
            out.push_back({base * std::polar(1.0, 2.0 * k * angle), multiplicity});
        }
        return out;
    }
    // |base + k step|^2 <= R^2 is a quadratic inequality in k.
    const double s2 = std::norm(step);
    const double b = (base * std::conj(step)).real();
    const double c = std::norm(base) - radius * radius;
    const double disc = b * b - s2 * c;
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    long k_lo = static_cast<long>(std::floor((-b - sq) / s2)) - 1;
    long k_hi = static_cast<long>(std::ceil((-b + sq) / s2)) + 1;
    if (k_max >= 0) {
        k_lo = std::max(k_lo, -k_max);
        k_hi = std::min(k_hi, k_max);
    }
    for (long k = k_lo; k <= k_hi; ++k) {
        const Complex z = base + static_cast<double>(k) * step;
        if (std::abs(z) <= radius) out.push_back({z, multiplicity});
    }
    return out;
}

bool RootSystem::finite() const noexcept {
    return std::none_of(orbits.begin(), orbits.end(),
                        [](const RootOrbit& o) { return o.kind == RootOrbit::Kind::translation; });
}

std::vector<WeightedPoint> RootSystem::expand(double radius) const {
    std::vector<WeightedPoint> pts;
    for (const auto& p : explicit_roots) {
        if (std::abs(p.z) <= radius && std::abs(p.z) > kCoincidenceTol) pts.push_back(p);
    }
    for (const auto& o : orbits) {
        for (const auto& p : o.points_within(radius)) {
            if (std::abs(p.z) > kCoincidenceTol) pts.push_back(p);
        }
    }
    auto merged = merge_points(std::move(pts));
    sort_by_modulus(merged);
    return merged;
}

void RootSystem::validate(double radius) const {
    if (origin_multiplicity < 0) throw PreconditionError("origin multiplicity must be >= 0");
    std::size_t raw = 0;
    for (const auto& p : explicit_roots) {
        if (p.multiplicity < 1) throw PreconditionError("explicit root multiplicities must be >= 1");
        if (std::abs(p.z) <= kCoincidenceTol) {
            throw PreconditionError("explicit roots at the origin belong in origin_multiplicity");
        }
        if (std::abs(p.z) <= radius) ++raw;
    }
    for (const auto& o : orbits) {
        if (o.multiplicity < 1) throw PreconditionError("orbit multiplicities must be >= 1");
        const auto pts = o.points_within(radius);
        for (const auto& p : pts) {
            if (std::abs(p.z) <= kCoincidenceTol) throw PreconditionError("orbit passes through the origin");
        }
        raw += pts.size();
    }
    const auto merged = expand(radius);
    if (merged.size() != raw) {
        // find a witness for the message
        std::vector<WeightedPoint> all;
        for (const auto& p : explicit_roots)
            if (std::abs(p.z) <= radius) all.push_back({p.z, 1});
        for (const auto& o : orbits)
            for (const auto& p : o.points_within(radius)) all.push_back({p.z, 1});
        for (const auto& m : merge_points(all)) {
            if (m.multiplicity > 1) {
                throw SymmetryViolationError("duplicate root after orbit expansion", m.z);
            }
        }
        throw PreconditionError("duplicate roots after orbit expansion");
    }
}

RootSystem combine(const RootSystem& a, const RootSystem& b) {
    RootSystem out = a;
    out.explicit_roots.insert(out.explicit_roots.end(), b.explicit_roots.begin(), b.explicit_roots.end());
    out.orbits.insert(out.orbits.end(), b.orbits.begin(), b.orbits.end());
    out.origin_multiplicity += b.origin_multiplicity;
    out.exact_within = std::min(a.exact_within, b.exact_within);
    return out;
}

int multiplicity_at(const RootSystem& rs, Complex z, double truncation_radius) {
    if (truncation_radius < std::abs(z)) {
        throw PreconditionError("multiplicity_at: truncation radius must be >= |z|");
    }
    if (std::abs(z) <= kCoincidenceTol) return rs.origin_multiplicity;
    int m = 0;
    for (const auto& p : rs.explicit_roots) {
        if (std::abs(p.z - z) <= kCoincidenceTol) m += p.multiplicity;
    }
    for (const auto& o : rs.orbits) {
        if (o.kind == RootOrbit::Kind::translation) {
            const double k = std::round(((z - o.base) * std::conj(o.step)).real() / std::norm(o.step));
            if (std::abs(o.base + k * o.step - z) <= kCoincidenceTol) m += o.multiplicity;
        } else {
            for (const auto& p : o.points_within(std::abs(o.base))) {
                if (std::abs(p.z - z) <= kCoincidenceTol) m += o.multiplicity;
            }
        }
    }
    return m;
}

RootSystem mirror_conjugate(const RootSystem& rs) {
    RootSystem out = rs;
    for (auto& p : out.explicit_roots) p.z = std::conj(p.z);
    for (auto& o : out.orbits) {
        o.base = std::conj(o.base);
        o.step = std::conj(o.step);
        o.angle = -o.angle;
    }
    return out;
}

std::optional<Complex> mirror_symmetry_witness(const RootSystem& f, const RootSystem& g, double radius) {
    if (!(radius > 0.0)) throw PreconditionError("mirror symmetry check needs a positive radius");
    if (f.origin_multiplicity != g.origin_multiplicity) return Complex{0.0, 0.0};
    const double r = std::min(effective_radius(f, radius), effective_radius(g, radius));
    auto symmetrized = [r](const RootSystem& rs) {
        auto pts = rs.expand(r);
        const auto n = pts.size();
        for (std::size_t i = 0; i < n; ++i) pts.push_back({std::conj(pts[i].z), pts[i].multiplicity});
        return sorted_by_re(merge_points(std::move(pts)));
    };
    const auto sf = symmetrized(f);
    const auto sg = symmetrized(g);
    for (const auto& p : sf) {
        if (lookup(sg, p.z) != p.multiplicity) return p.z;
    }
    for (const auto& p : sg) {
        if (lookup(sf, p.z) != p.multiplicity) return p.z;
    }
    return std::nullopt;
}

bool check_mirror_symmetry(const RootSystem& f, const RootSystem& g, double radius) {
    return !mirror_symmetry_witness(f, g, radius).has_value();
}

AmbiguityDecomposition decompose(const RootSystem& f, const RootSystem& g, double radius) {
    if (auto w = mirror_symmetry_witness(f, g, radius)) {
        throw SymmetryViolationError("root multisets are not mirror symmetric; no Mc Donald decomposition", *w);
    }
    const double r = std::min(effective_radius(f, radius), effective_radius(g, radius));
    const auto ef = f.expand(r);
    const auto eg = sorted_by_re(g.expand(r));

    AmbiguityDecomposition d;
    for (const auto& p : ef) {
        const int mg = lookup(eg, p.z);
        const int common = std::min(p.multiplicity, mg);
        if (common > 0) d.common.explicit_roots.push_back({p.z, common});
        if (p.multiplicity > mg) d.exclusive.explicit_roots.push_back({p.z, p.multiplicity - mg});
    }
    d.common.exact_within = r;
    d.exclusive.exact_within = r;
    d.fundamental = d.exclusive;
    return d;
}

namespace {

// Reduce v into [-half, half) modulo 2*half, snapping the right endpoint to the left.
double reduce_half_open(double v, double half) {
    double r = v - 2.0 * half * std::floor((v + half) / (2.0 * half));
    if (r >= half - kAngleTol * std::max(1.0, half)) r -= 2.0 * half;
    return r;
}

bool in_half_open(double v, double half) {
    const double tol = kAngleTol * std::max(1.0, half);
    return v >= -half - tol && v < half - tol;
}

}  // namespace

RootSystem rotation_fundamental_domain(const RootSystem& y, double theta, int n) {
    const auto n_min = rotation_order(theta);
    if (!n_min || *n_min != n) {
        throw PreconditionError("rotation_fundamental_domain: n must be the smallest integer with n*theta in pi*N");
    }
    if (!y.finite() && !std::isfinite(y.exact_within)) {
        throw PreconditionError("rotation_fundamental_domain: translation orbits are not rotation invariant");
    }
    double radius = y.exact_within;
    if (!std::isfinite(radius)) {
        radius = 0.0;
        for (const auto& p : y.explicit_roots) radius = std::max(radius, std::abs(p.z));
        for (const auto& o : y.orbits) radius = std::max(radius, std::abs(o.base));
        radius = radius * (1.0 + 1e-12) + kCoincidenceTol;
    }
    const auto pts = y.expand(radius);
    const auto index = sorted_by_re(pts);
    const Complex rot = std::polar(1.0, 2.0 * theta);

    RootSystem out;
    out.exact_within = y.exact_within;
    for (const auto& p : pts) {
        if (lookup(index, p.z * rot) != p.multiplicity) {
            throw SymmetryViolationError("exclusive roots are not invariant under rotation by 2*theta", p.z);
        }
        // theta <= pi/2, so the sector never straddles the branch cut of arg
        if (in_half_open(std::arg(p.z), theta)) out.explicit_roots.push_back(p);
    }
    return out;
}

RootSystem translation_fundamental_domain(const RootSystem& y, double tau) {
    if (tau == 0.0) throw PreconditionError("translation_fundamental_domain: tau must be nonzero");
    const double half = std::abs(tau);
    const Complex period{0.0, 2.0 * half};

    RootSystem out;
    out.exact_within = y.exact_within;
    for (const auto& o : y.orbits) {
        if (o.kind != RootOrbit::Kind::translation) continue;
        const double j = 2.0 * half / o.step.imag();
        if (std::abs(o.step.real()) > kCoincidenceTol || std::abs(j - std::round(j)) > 1e-9) {
            throw SymmetryViolationError("translation orbit is not invariant under 2i*tau", o.base);
        }
        const long reps = std::abs(std::lround(j));
        const double s = std::abs(o.step.imag());
        // representative with imaginary part in [-tau, tau), then the reps-1 others above it
        const double im0 = reduce_half_open(o.base.imag(), half);
        for (long k = 0; k < reps; ++k) {
            const double im = reduce_half_open(im0 + k * s, half);
            out.explicit_roots.push_back({Complex{o.base.real(), im}, o.multiplicity});
        }
    }

    // Everything else must be a disk-truncated invariant set.
    RootSystem rest = y;
    rest.orbits.erase(std::remove_if(rest.orbits.begin(), rest.orbits.end(),
                                     [](const RootOrbit& o) { return o.kind == RootOrbit::Kind::translation; }),
                      rest.orbits.end());
    rest.origin_multiplicity = 0;
    if (!rest.explicit_roots.empty() || !rest.orbits.empty()) {
        if (!std::isfinite(y.exact_within)) {
            const Complex w = rest.explicit_roots.empty() ? rest.orbits.front().base : rest.explicit_roots.front().z;
            throw SymmetryViolationError("a finite root set cannot be invariant under translation by 2i*tau", w);
        }
        const double radius = y.exact_within;
        const auto pts = rest.expand(radius);
        const auto index = sorted_by_re(pts);
        for (const auto& p : pts) {
            for (const Complex shift : {period, -period}) {
                const Complex q = p.z + shift;
                if (std::abs(q) <= radius - kCoincidenceTol && lookup(index, q) != p.multiplicity) {
                    throw SymmetryViolationError("exclusive roots are not invariant under translation by 2i*tau", p.z);
                }
            }
            if (in_half_open(p.z.imag(), half)) out.explicit_roots.push_back(p);
        }
    }
    return out;
}

std::vector<WeightedPoint> smallest_roots(const RootSystem& rs, long count) {
    if (count < 1) return {};
    double radius = 1.0;
    for (const auto& p : rs.explicit_roots) radius = std::max(radius, std::abs(p.z));
    if (rs.finite()) {
        for (const auto& o : rs.orbits) radius = std::max(radius, std::abs(o.base));
        auto pts = rs.expand(radius * (1.0 + 1e-12) + kCoincidenceTol);
        if (static_cast<long>(pts.size()) > count) pts.resize(static_cast<std::size_t>(count));
        return pts;
    }
    std::vector<WeightedPoint> pts;
    for (int guard = 0; guard < 200; ++guard) {
        pts = rs.expand(radius);
        if (static_cast<long>(pts.size()) >= count) break;
        radius *= 2.0;
    }
    if (static_cast<long>(pts.size()) > count) pts.resize(static_cast<std::size_t>(count));
    return pts;
}

ConvergencePartial convergence_exponent_partial(const RootSystem& rs, double exponent, long count) {
    if (!(exponent > 0.0)) throw PreconditionError("convergence exponent test needs A > 0");
    if (count < 1) throw PreconditionError("convergence exponent test needs K >= 1");
    const auto pts = smallest_roots(rs, count);

    ConvergencePartial out;
    out.terms = static_cast<long>(pts.size());
    std::vector<double> terms(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        terms[i] = pts[i].multiplicity / std::pow(std::abs(pts[i].z), exponent);
        if (!(terms[i] >= 0.0)) out.monotone = false;
    }
    // largest-modulus terms first
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    out.value = sum;

    // dyadic blocks (n/4, n/2] and (n/2, n]: a convergent tail must shrink
    const std::size_t n = terms.size();
    if (n >= 64 && !rs.finite()) {
        double last = 0.0, prev = 0.0;
        for (std::size_t i = n / 2; i < n; ++i) last += terms[i];
        for (std::size_t i = n / 4; i < n / 2; ++i) prev += terms[i];
        out.divergence_suspected = last >= 0.98 * prev;
    }
    return out;
}

}  // namespace phaseret
