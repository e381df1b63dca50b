#pragma once

#include <functional>
#include <vector>

#include "phaseret/hadamard.hpp"
#include "phaseret/root_multiset.hpp"

namespace phaseret {

/// Which set of lines a pair is built to agree on, plus the coefficient data
/// the construction pinned or derived.
struct PairConstraint {
    enum class Kind { single_line, rational_angle, parallel, infinite_lines };

    Kind kind = Kind::single_line;
    double theta = 0.0;  // rational_angle
    int n = 1;           // rational_angle: smallest n with n*theta in pi*N
    double tau = 0.0;    // parallel, infinite_lines

    /// Polynomial degrees l whose b_l had to be equal in f and g.
    std::vector<int> pinned;

    /// Series-derived offset b - b' (parallel with q = 1, infinite_lines, universal).
    long series_K = 0;
    double series_value = 0.0;
    double series_tail = 0.0;

    void validate() const;
};

const char* to_string(PairConstraint::Kind kind);

struct AmbiguityPair {
    HadamardForm f;
    HadamardForm g;
    PairConstraint constraint;
    AmbiguityDecomposition decomposition;
};

/// The lines a constraint promises agreement on, each sampled on [t_min, t_max].
/// infinite_lines yields R + i n tau for n in [n_lo, n_hi].
std::vector<LineSpec> declared_lines(const PairConstraint& c, double t_min, double t_max, int count, int n_lo = -2,
                                     int n_hi = 2);

/// Shared f/g data; poly_f and poly_g differ only in their imaginary parts.
struct PairData {
    double r = 1.0;
    double phi = 0.0;
    double psi = 0.0;
    std::vector<PolyCoefficient> poly_f;
    std::vector<PolyCoefficient> poly_g;
    int m = 0;
    Genus p{};
    RootSystem X;
};

/// f has roots X + Y, g has roots X + conj(Y). Requires Re c_l = Re c'_l and no
/// point of Y whose conjugate is also in Y.
AmbiguityPair mcdonald_pair(const PairData& data, const RootSystem& Y);

/// Roots e^{2ik theta} a, k = 0..n-1, for each a in Y_u (weights from its
/// multiplicities). Y_u points must lie in the sector arg in (-theta, theta) and
/// off R. b'_l = b_l is required whenever n does not divide l.
AmbiguityPair rational_angle_pair(double theta, const PairData& data, const std::vector<WeightedPoint>& Y_u);

struct SeriesValue {
    double value = 0.0;
    double tail = 0.0;
    long K = 0;
};

/// Right-hand side of the parallel-lines coefficient relation on the line
/// R + i n tau at abscissa x: sum over a in Y_u of m(a) times the symmetric
/// series in k of log|a_{k-n}/a_k| + sum_{l<=p} Re[(z/a_k)^l - (z/conj a_{k-n})^l]/l,
/// with a_k = a + 2ki tau and z = x + i n tau.
SeriesValue coeff_relation_rhs(double tau, const std::vector<WeightedPoint>& Y_u, Genus p, double x, int n = 1,
                               long K = 100000);

/// LHS - RHS of the coefficient relation at x on R + i tau, where
/// LHS = sum_l (b_l - b'_l) Im[(x + i tau)^l].
SeriesValue coeff_relation_residual(double tau, const std::vector<PolyCoefficient>& poly_f,
                                    const std::vector<PolyCoefficient>& poly_g, const std::vector<WeightedPoint>& Y_u,
                                    Genus p, double x, long K = 100000);

/// Translation orbits a + 2i tau Z for a in Y_u; g uses conj(a). Throws
/// ConstraintError if |residual| exceeds tol + tail at any probe abscissa.
AmbiguityPair parallel_pair(double tau, const PairData& data, const std::vector<WeightedPoint>& Y_u, double tol = 1e-8,
                            long K = 100000);

/// b' = b - S / tau with S = sum_a m(a) sum_k (log|a_{k-1}/a_k| - 2 tau Im 1/a_k).
/// Throws DivergenceAlarm if the symmetric partial sums fail the Cauchy test.
SeriesValue infinite_lines_b_prime(double tau, const std::vector<WeightedPoint>& Y_u, double b, long K = 1000000);

/// Order-one pair (p = 1, q = 1) agreeing on R + i tau Z: f has c_1 = a1 + i b,
/// g has c_1 = a1 + i b'.
AmbiguityPair infinite_lines_pair(double tau, double r, double phi, double psi, double a1, double b, const RootSystem& X,
                                  const std::vector<WeightedPoint>& Y_u, long K = 1000000);

/// F with translation orbits e^n + i/(2n) + (2i/n) Z, n = 1..N_max, p = 1.
HadamardForm universal_base(int N_max);

struct UniversalPartner {
    HadamardForm form;
    double b_m = 0.0;
    double tail = 0.0;
};

/// G_m: F with orbit m conjugated and an extra factor e^{-i b_m z}, so that
/// |F| = |G_m| on R + (i/m) Z.
UniversalPartner universal_partner(int m, int N_max, long K = 1000000);

/// cosh(pi z/2) + sign * i sinh(pi z/2).
std::function<Complex(Complex)> closed_form_coshsinh(int sign);

/// The cosh/sinh pair as Hadamard forms: roots +-i/2 + 2iZ, b = +-pi/2, p = 1.
AmbiguityPair coshsinh_pair();

/// 1 - z^2/(1+i)^2 and its conjugate-root partner.
AmbiguityPair quartic_pair();

}  // namespace phaseret
