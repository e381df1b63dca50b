#include "phaseret/series.hpp"

#include <cmath>
#include <limits>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

// Neumaier compensated accumulator.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Euler-Maclaurin expansions of sum_{k>K} k^{-2} and k^{-4}.
double zeta2_tail(double K) { return 1.0 / K - 0.5 / (K * K) + 1.0 / (6.0 * K * K * K) - 1.0 / (30.0 * std::pow(K, 5)); }
double zeta4_tail(double K) { return 1.0 / (3.0 * K * K * K) - 0.5 / std::pow(K, 4) + 1.0 / (3.0 * std::pow(K, 5)); }

struct Extrapolation {
    double remainder = 0.0;
    double uncertainty = 0.0;
};

// Fit T(k) = c2/k^2 + c4/k^4 through the paired terms at K and K/2. Adjacent
// nodes would be ill-conditioned: the paired terms carry rounding of relative
// size eps*k from the cancellation of t(k) against t(-k).
Extrapolation extrapolate(double t_far, double t_mid, long K, double pair_rounding) {
    const double k1 = static_cast<double>(K);
    const double k0 = static_cast<double>(K / 2);
    const double A = t_far * k1 * k1;
    const double B = t_mid * k0 * k0;
    const double c4 = (A - B) / (1.0 / (k1 * k1) - 1.0 / (k0 * k0));
    const double c2 = A - c4 / (k1 * k1);
    Extrapolation e;
    e.remainder = c2 * zeta2_tail(k1) + c4 * zeta4_tail(k1);
    // discarded k^{-6} term, plus the pairing rounding carried through remainder ~ t K
    e.uncertainty = std::abs(c4 * zeta4_tail(k1)) / (k1 * k1) + std::abs(e.remainder - A * zeta2_tail(k1)) / k1 +
                    pair_rounding * k1;
    return e;
}

}  // namespace

SeriesResult symmetric_sum(const std::function<double(long)>& term, long K) {
    if (K < 16) throw PreconditionError("symmetric_sum requires K >= 16");
    Accumulator acc;
    double abs_sum = 0.0;
    const double t0 = term(0);
    acc.add(t0);
    abs_sum += std::abs(t0);

    const long half = K / 2;
    const long quarter = half / 2;
    double half_partial = 0.0;
    double t_quarter = 0.0, t_half = 0.0, t_full = 0.0;
    double round_half = 0.0, round_full = 0.0;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    for (long k = 1; k <= K; ++k) {
        const double a = term(k);
        const double b = term(-k);
        const double paired = a + b;
        acc.add(paired);
        abs_sum += std::abs(a) + std::abs(b);
        if (k == quarter) t_quarter = paired;
        if (k == half) {
            t_half = paired;
            half_partial = acc.value();
            round_half = 4.0 * kEps * (std::abs(a) + std::abs(b));
        }
        if (k == K) {
            t_full = paired;
            round_full = 4.0 * kEps * (std::abs(a) + std::abs(b));
        }
    }

    SeriesResult r;
    r.K = K;
    r.partial = acc.value();
    const auto full = extrapolate(t_full, t_half, K, round_full);
    const auto coarse = extrapolate(t_half, t_quarter, half, round_half);
    r.value = r.partial + full.remainder;
    // compensated accumulation leaves the per-term evaluation error, ~eps each
    const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * abs_sum +
                            std::numeric_limits<double>::epsilon() * static_cast<double>(2 * K + 1) * std::abs(t0);
    r.tail = full.uncertainty + rounding;

    const double coarse_value = half_partial + coarse.remainder;
    const double coarse_tail = coarse.uncertainty + rounding;
    const double gap = std::abs(r.value - coarse_value);
    r.converged = std::isfinite(r.value) && gap <= std::max(1e-6 * (1.0 + std::abs(r.value)), 100.0 * coarse_tail);
    return r;
}

}  // namespace phaseret
