#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "phaseret/primary_factors.hpp"
#include "phaseret/root_multiset.hpp"

namespace phaseret {

/// c_l = a + i b, the coefficient of z^l in the exponent polynomial.
struct PolyCoefficient {
    double a = 0.0;
    double b = 0.0;
    friend bool operator==(const PolyCoefficient&, const PolyCoefficient&) = default;
};

/// An entire function in Hadamard form
///
///   f(z) = r e^{i phi} exp(sum_l c_l z^l) z^m prod_{a} E(z/a; p)^{mult(a)}
///
/// with the product running over the nonzero roots in `roots`. Translation
/// orbits are evaluated with symmetric k-ranges, which is what gives the
/// conditionally convergent lattice products their meaning.
struct HadamardForm {
    static constexpr int kMaxPolyDegree = 4;

    double r = 1.0;
    double phi = 0.0;
    std::vector<PolyCoefficient> poly;
    int m = 0;
    Genus p{};
    RootSystem roots;

    int poly_degree() const noexcept;
    void validate() const;
};

/// Lower bound on the modulus of omitted orbit roots: max(2|z|, kMinInclusionRadius).
inline constexpr double kMinInclusionRadius = 4.0;
/// |z - a| below this is a root hit.
inline constexpr double kRootHitTol = 1e-12;

struct Evaluation {
    Complex value;
    /// Bound on |log(f_exact(z) / value)|: omitted-factor remainder after the
    /// tail correction, plus accumulated rounding.
    double tail_error_log = 0.0;
};

/// Evaluates `form` at z with translation orbits truncated to k in [-K, K].
/// The omitted power sums sum_{|k|>K} (a + k s)^{-j} are added back through
/// their Euler-Maclaurin estimate. Throws InsufficientTruncationError if some
/// omitted root has |a| < max(2|z|, 4).
Evaluation evaluate(const HadamardForm& form, Complex z, long K);

struct LogMagnitude {
    double value = 0.0;
    double tail_error = 0.0;
};

/// log|f(z)|. Throws SingularInputError within kRootHitTol of a root.
LogMagnitude log_magnitude(const HadamardForm& form, Complex z, long K);

struct LineSpec {
    Complex anchor{0.0, 0.0};
    Complex direction{1.0, 0.0};
    double t_min = -1.0;
    double t_max = 1.0;
    int count = 2;
    std::string id;

    void validate() const;
    double parameter(int i) const;
    Complex point(double t) const { return anchor + t * direction; }
};

struct ProfileSample {
    double x = 0.0;
    double magnitude = 0.0;
    double tail_error = 0.0;  // absolute bound on the magnitude error
};

struct MagnitudeProfile {
    LineSpec line;
    std::vector<ProfileSample> samples;
};

MagnitudeProfile magnitude_on_line(const HadamardForm& form, const LineSpec& line, long K);

/// Heuristic upper estimate of the order: max(poly degree, estimated exponent
/// of convergence of the roots). Not a certified computation.
double order_estimate(const HadamardForm& form);

/// CSV with header line_id,x,magnitude,tail_error; 17 significant digits.
void write_profiles_csv(std::ostream& out, std::span<const MagnitudeProfile> profiles);

}  // namespace phaseret
