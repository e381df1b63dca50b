#pragma once

#include <complex>

namespace phaseret {

using Complex = std::complex<double>;

/// Genus of a Weierstrass primary factor. Capped at kMax.
class Genus {
public:
    static constexpr int kMax = 8;

    constexpr Genus() = default;
    explicit Genus(int p);

    constexpr int value() const noexcept { return p_; }
    friend constexpr bool operator==(Genus, Genus) = default;

private:
    int p_ = 0;
};

/// E(z;p) = (1-z) exp(sum_{l=1}^p z^l / l).
Complex primary_factor(Complex z, Genus p);

/// log|E(z;p)| = log|1-z| + Re sum_{l=1}^p z^l / l. Throws SingularInputError at z = 1.
double log_abs_primary_factor(Complex z, Genus p);

/// Principal-branch complex log of E(w;p), accurate for small |w| where the
/// leading terms cancel. Requires w != 1.
Complex log_primary_factor(Complex w, Genus p);

/// Upper bound on |log E(w;p)| over the circle |w| = w_abs, valid for w_abs <= 1/2:
/// w_abs^{p+1} / ((p+1)(1 - w_abs)).
double tail_log_bound(double w_abs, Genus p);

}  // namespace phaseret
