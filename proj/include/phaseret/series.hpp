#pragma once

#include <functional>

namespace phaseret {

/// Result of a symmetric partial sum sum_{k=-K}^{K} t(k) with extrapolated remainder.
struct SeriesResult {
    double value = 0.0;    // partial + extrapolated remainder
    double partial = 0.0;  // plain symmetric partial sum
    double tail = 0.0;     // error estimate for `value`
    long K = 0;
    bool converged = true;  // Cauchy test between K/2 and K
};

/// Symmetric summation of a series whose paired terms t(k) + t(-k) decay like
/// c2/k^2 + c4/k^4 (true for every term analytic in 1/k). The paired terms are
/// accumulated in increasing k with compensated summation, so the result is
/// independent of scheduling. Requires K >= 16.
SeriesResult symmetric_sum(const std::function<double(long)>& term, long K);

}  // namespace phaseret
