#include "phaseret/primary_factors.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

// sum_{l=1}^p z^l / l, Horner from l = p down to 1.
Complex truncated_log_series(Complex z, int p) {
    Complex acc{0.0, 0.0};
    for (int l = p; l >= 1; --l) {
        acc = z * (acc + 1.0 / static_cast<double>(l));
    }
    return acc;
}

constexpr double kSeriesRadius = 0.25;

}  // namespace

Genus::Genus(int p) : p_(p) {
    if (p < 0 || p > kMax) {
        throw PreconditionError("genus must lie in [0, " + std::to_string(kMax) + "], got " + std::to_string(p));
    }
}

Complex primary_factor(Complex z, Genus p) {
    const Complex one_minus = 1.0 - z;
    if (p.value() == 0) {
        return one_minus;
    }
    const Complex exponent = truncated_log_series(z, p.value());
    // exp overflows past ~709.78
    if (exponent.real() > std::log(std::numeric_limits<double>::max())) {
        throw RangeError("primary factor exponent overflows", std::abs(exponent));
    }
    return one_minus * std::exp(exponent);
}

double log_abs_primary_factor(Complex z, Genus p) {
    if (z == Complex{1.0, 0.0}) {
        throw SingularInputError("log|E(z;p)| has a pole at z = 1");
    }
    return std::log(std::abs(1.0 - z)) + truncated_log_series(z, p.value()).real();
}

Complex log_primary_factor(Complex w, Genus p) {
    const double r2 = std::norm(w);
    if (r2 < kSeriesRadius * kSeriesRadius) {
        // log E(w;p) = -w^{p+1} sum_{i>=0} w^i / (p+1+i), Horner over the n terms with |w|^n <= 1e-17
        const int pv = p.value();
        int n = 1;
        if (r2 > 0.0) n = std::min(60, static_cast<int>(std::ceil(2.0 * std::log(1e-17) / std::log(r2))));
        Complex acc{1.0 / static_cast<double>(pv + n), 0.0};
        for (int j = pv + n - 1; j >= pv + 1; --j) acc = acc * w + 1.0 / static_cast<double>(j);
        Complex lead = w;
        for (int i = 0; i < pv; ++i) lead *= w;
        return -lead * acc;
    }
    if (w == Complex{1.0, 0.0}) {
        throw SingularInputError("log E(w;p) has a pole at w = 1");
    }
    return std::log(1.0 - w) + truncated_log_series(w, p.value());
}

double tail_log_bound(double w_abs, Genus p) {
    if (!(w_abs >= 0.0) || w_abs > 0.5) {
        throw PreconditionError("tail_log_bound requires 0 <= |w| <= 1/2, got " + std::to_string(w_abs));
    }
    const int n = p.value() + 1;
    return std::pow(w_abs, n) / (n * (1.0 - w_abs));
}

}  // namespace phaseret
