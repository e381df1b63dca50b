#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "phaseret/primary_factors.hpp"

namespace phaseret {

/// Absolute distance below which two roots are treated as the same point.
inline constexpr double kCoincidenceTol = 1e-10;

struct WeightedPoint {
    Complex z;
    int multiplicity = 1;
};

/// A symbolic family of roots sharing one multiplicity.
///
/// translation: { base + k * step : k in Z }  (infinite; step = 2i*tau for the
///              parallel-line constructions)
/// rotation:    { base * e^{2ik*angle} : k = 0..order-1 } where order is the
///              smallest n >= 1 with n*angle in pi*Z. Irrational angles have no
///              finite orbit and are rejected by the factory.
struct RootOrbit {
    enum class Kind { translation, rotation };

    Kind kind = Kind::translation;
    Complex base{0.0, 0.0};
    Complex step{0.0, 0.0};
    double angle = 0.0;
    int order = 1;
    int multiplicity = 1;

    static RootOrbit translation(Complex base, Complex step, int multiplicity = 1);
    static RootOrbit rotation(Complex base, double angle, int multiplicity = 1);

    /// Points with |z| <= radius. For translation orbits only k in [-k_max, k_max]
    /// are considered when k_max >= 0.
    std::vector<WeightedPoint> points_within(double radius, long k_max = -1) const;
};

/// Smallest n in [1, max_order] with n*angle in pi*Z (within 1e-12), if any.
std::optional<int> rotation_order(double angle, int max_order = 100000);

/// Root multiset M : C -> N0 as explicit points plus symbolic orbits.
///
/// exact_within marks systems produced by disk-bounded operations (e.g.
/// decompose): their contents are only meaningful inside that disk.
struct RootSystem {
    std::vector<WeightedPoint> explicit_roots;
    std::vector<RootOrbit> orbits;
    int origin_multiplicity = 0;
    double exact_within = std::numeric_limits<double>::infinity();

    bool empty() const noexcept { return explicit_roots.empty() && orbits.empty() && origin_multiplicity == 0; }
    bool finite() const noexcept;

    /// Nonzero roots with |z| <= radius, coincident points merged, sorted by
    /// (modulus, argument).
    std::vector<WeightedPoint> expand(double radius) const;

    /// Throws PreconditionError on nonpositive multiplicities, orbit points at
    /// the origin, or duplicate points inside |z| <= radius.
    void validate(double radius) const;
};

/// Union of multisets (multiplicities add).
RootSystem combine(const RootSystem& a, const RootSystem& b);

int multiplicity_at(const RootSystem& rs, Complex z, double truncation_radius);

RootSystem mirror_conjugate(const RootSystem& rs);

/// A point z in |z| <= radius with M_f(z)+M_f(conj z) != M_g(z)+M_g(conj z).
std::optional<Complex> mirror_symmetry_witness(const RootSystem& f, const RootSystem& g, double radius);
bool check_mirror_symmetry(const RootSystem& f, const RootSystem& g, double radius);

struct AmbiguityDecomposition {
    RootSystem common;       // X: min(m_f, m_g) on shared roots
    RootSystem exclusive;    // Y: m_f - M_g where positive
    RootSystem fundamental;  // Y_u: representatives of Y under the constraint's symmetry group
};

/// Disk-bounded decomposition; results carry exact_within = radius and
/// fundamental = exclusive (trivial symmetry group).
AmbiguityDecomposition decompose(const RootSystem& f, const RootSystem& g, double radius);

/// Representatives of Y under rotation by e^{2i theta}, chosen in the sector
/// arg in [-theta, theta). n must be the smallest integer with n*theta in pi*N.
RootSystem rotation_fundamental_domain(const RootSystem& y, double theta, int n);

/// Representatives of Y under translation by 2i*tau, chosen in R + i[-|tau|, |tau|).
RootSystem translation_fundamental_domain(const RootSystem& y, double tau);

struct ConvergencePartial {
    double value = 0.0;
    long terms = 0;                   // distinct roots summed
    bool monotone = true;             // partial sums nondecreasing in K
    bool divergence_suspected = false;  // last dyadic block did not shrink
};

/// sum m(a)/|a|^A over the K smallest-modulus nonzero roots.
ConvergencePartial convergence_exponent_partial(const RootSystem& rs, double exponent, long count);

/// The `count` smallest-modulus nonzero roots (fewer if the system is finite).
std::vector<WeightedPoint> smallest_roots(const RootSystem& rs, long count);

}  // namespace phaseret
