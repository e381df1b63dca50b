#pragma once

#include <string>
#include <vector>

#include "phaseret/ambiguity.hpp"
#include "phaseret/hadamard.hpp"

namespace phaseret {

enum class Verdict { agree, disagree, inconclusive };
const char* to_string(Verdict v);

/// Magnitude comparison of two profiles sampled on the same line.
///
/// deviation = max_i ||f_i| - |g_i|| / (1 + |f_i|); tail is the largest
/// per-sample bound (tail_f + tail_g) / (1 + |f_i|). With combined = tol + tail:
/// agree if deviation <= combined; inconclusive if deviation > combined but
/// deviation <= 10 * tail (truncation could still explain it); else disagree.
struct AgreementReport {
    std::string line_id;
    double deviation = 0.0;
    double argmax_x = 0.0;
    Complex witness{0.0, 0.0};
    double tolerance = 0.0;
    double tail = 0.0;
    double combined_tolerance = 0.0;
    Verdict verdict = Verdict::agree;
};

AgreementReport agreement_report(const MagnitudeProfile& pf, const MagnitudeProfile& pg, double tol);

/// Worst verdict across lines: disagree > inconclusive > agree.
Verdict overall_verdict(const std::vector<AgreementReport>& reports);

/// Samples f and g on every line and compares them.
std::vector<AgreementReport> verify_pair(const HadamardForm& f, const HadamardForm& g,
                                         const std::vector<LineSpec>& lines, long K, double tol);

struct JensenBoundInput {
    int k = 0;                      // origin root multiplicity of Bf
    Complex lead{1.0, 0.0};         // lim_{z->0} Bf(z) / z^k
    double l2_norm_sq = 1.0;        // ||f||_2^2

    void validate() const;
};

double jensen_c(const JensenBoundInput& in);

/// pi e r^2 - 2k log r + c.
double jensen_bound(const JensenBoundInput& in, double r);

/// Roots in |z| <= r with multiplicity, the origin included.
long root_count(const RootSystem& roots, double r);

/// root_count(roots, r) <= jensen_bound(in, r).
bool jensen_bound_check(const RootSystem& roots, const JensenBoundInput& in, double r);

/// The lattice a Z + i b Z inside |z| <= radius: explicit nonzero points plus
/// origin multiplicity 1.
RootSystem lattice_roots(double a, double b, double radius);

enum class LatticeRegime { uniqueness_regime, counterexample_regime, open_gap };
const char* to_string(LatticeRegime v);

struct LatticeVerdict {
    LatticeRegime regime = LatticeRegime::open_gap;
    double density_product = 0.0;  // ab
    std::string note;
};

/// ab < 1/e: uniqueness; ab > 1: counterexample; otherwise open. The note
/// records that the sharp threshold ab <= 1 is known from the sampling literature.
LatticeVerdict lattice_density_verdict(double a, double b);

/// int_0^inf (1+t^2)^{-lambda/2} dt = (sqrt(pi)/2) Gamma((lambda-1)/2) / Gamma(lambda/2).
double gamma_integral(double lambda);

/// The same integral by tanh-sinh quadrature of int_0^{pi/2} cos^{lambda-2}(u) du.
double gamma_integral_quadrature(double lambda);

enum class SeriesId { pi_identity, b_m };

/// pi_identity: sum_k (log|(4k-3)/(4k+1)| + 4/(4k+1)) = pi.
/// b_m: m sum_k (log|a_{k-1}/a_k| - (2/m) Im 1/a_k), a_k = e^m + i/(2m) + 2ik/m.
SeriesValue universal_series_sum(SeriesId id, long K, int m = 1);

}  // namespace phaseret
