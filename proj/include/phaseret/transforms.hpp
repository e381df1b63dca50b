#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "phaseret/primary_factors.hpp"

namespace phaseret {

/// Integration window [-T, T] with a uniform rule.
struct QuadratureSpec {
    enum class Rule { trapezoid, midpoint };

    double half_width = 8.0;
    int nodes = 1024;
    Rule rule = Rule::trapezoid;

    void validate() const;
    double spacing() const;
    /// Largest |z| for which the Bargmann integrand's cancellation, of relative
    /// size e^{pi |z|^2 / 2}, stays below 1e-8 / eps.
    double z_max() const;
};

/// An L^2 signal: a closed-form evaluator, or uniform samples on a symmetric
/// grid. Sampled signals are integrated on their own nodes; no interpolation.
struct SignalSamples {
    double t_min = 0.0;
    double t_max = 0.0;
    std::vector<Complex> values;
    std::function<Complex(double)> evaluator;

    static SignalSamples from_evaluator(std::function<Complex(double)> f);
    static SignalSamples from_samples(double t_min, double t_max, std::vector<Complex> values);

    bool has_evaluator() const noexcept { return static_cast<bool>(evaluator); }
    void validate() const;
    Complex operator()(double t) const;
};

/// Gf(x, w) = int f(t) e^{-pi (t-x)^2} e^{-2 pi i t w} dt.
/// Throws ResolutionError if the integrand is not below 1e-14 of its peak at
/// the window edges, or if (x, w) is outside what the node spacing resolves.
Complex gabor_transform(const SignalSamples& f, double x, double omega, const QuadratureSpec& q = {});

/// Bf(z) = int f(t) e^{2 pi t z - pi t^2 - pi z^2 / 2} dt. Throws ResolutionError
/// for |z| > q.z_max().
Complex bargmann_transform(const SignalSamples& f, Complex z, const QuadratureSpec& q = {});

/// |Gf(x, -w) - e^{pi i x w} Bf(x + i w) e^{-pi |z|^2 / 2}|.
double gabor_bargmann_residual(const SignalSamples& f, double x, double omega, const QuadratureSpec& q = {});

/// Preimage of an entire function F under the Bargmann transform.
///
/// F = sum alpha_n z^n is read off a circle of radius sqrt(N/pi) with 4N nodes;
/// z^n maps to sqrt(n!/pi^n) h_n, where h_n are the Bargmann preimages of the
/// Fock orthonormal basis, h_0 = sqrt(2) e^{-pi t^2} and
/// h_{n+1} = 2t sqrt(pi/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}.
class InverseBargmann {
public:
    explicit InverseBargmann(std::function<Complex(Complex)> F, int degree = 64);

    Complex operator()(double t) const;
    SignalSamples signal() const;

    int degree() const noexcept { return static_cast<int>(fock_.size()) - 1; }
    /// Taylor coefficients alpha_n.
    const std::vector<Complex>& taylor() const noexcept { return taylor_; }
    /// Coefficients c_n = alpha_n sqrt(n!/pi^n) in the Fock orthonormal basis.
    const std::vector<Complex>& fock_coefficients() const noexcept { return fock_; }
    /// sqrt(sum |c_n|^2).
    double fock_norm() const;

private:
    std::vector<Complex> taylor_;
    std::vector<Complex> fock_;
};

Complex inverse_bargmann(const std::function<Complex(Complex)>& F, double t, int degree = 64);

/// |F(z)| <= norm_estimate * e^{pi |z|^2 / 2}.
bool fock_reproducing_check(const std::function<Complex(Complex)>& F, double norm_estimate, Complex z);

/// (int |F(x+iy)|^2 e^{-pi (x^2+y^2)} dx dy)^{1/2} by a tensor trapezoid rule on [-L, L]^2.
double fock_norm_quadrature(const std::function<Complex(Complex)>& F, double half_width = 6.0, int nodes = 241);

/// ||f||_2 by the quadrature rule of q (or the sample grid).
double l2_norm(const SignalSamples& f, const QuadratureSpec& q = {});

namespace signals {

/// e^{-pi t^2}; Bargmann image 1/sqrt(2).
SignalSamples gaussian();
/// (2 pi + (4 pi t^2 - 1) i) / (sqrt(2) pi) e^{-pi t^2}; Bargmann image 1 - z^2/(1+i)^2.
SignalSamples quartic_preimage();
/// sqrt(2) e^{-pi (1/8 + t^2)} (cosh pi t + sign i sinh pi t); Bargmann image
/// cosh(pi z/2) + sign i sinh(pi z/2).
SignalSamples coshsinh(int sign);

}  // namespace signals

/// CSV with header t,re,im on the uniform grid [t_min, t_max] x count; 17 digits.
void write_signal_csv(std::ostream& out, const SignalSamples& f, double t_min, double t_max, int count);

}  // namespace phaseret
