#include "phaseret/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "phaseret/errors.hpp"

namespace phaseret {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEdgeDecay = 1e-14;
// the Gaussian window must be negligible this far inside the edge
constexpr double kWindowMargin = 4.0;

struct Node {
    double t;
    double w;
    Complex f;
};

// Quadrature nodes with signal values; sampled signals use their own grid.
std::vector<Node> nodes_for(const SignalSamples& f, const QuadratureSpec& q) {
    std::vector<Node> out;
    if (!f.has_evaluator()) {
        f.validate();
        const std::size_t n = f.values.size();
        const double h = (f.t_max - f.t_min) / static_cast<double>(n - 1);
        out.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double w = (j == 0 || j + 1 == n) ? 0.5 * h : h;
            out.push_back({f.t_min + h * static_cast<double>(j), w, f.values[j]});
        }
        return out;
    }
    q.validate();
    const double T = q.half_width;
    const double h = q.spacing();
    out.reserve(static_cast<std::size_t>(q.nodes));
    for (int j = 0; j < q.nodes; ++j) {
        double t, w = h;
        if (q.rule == QuadratureSpec::Rule::trapezoid) {
            t = -T + h * j;
            if (j == 0 || j == q.nodes - 1) w = 0.5 * h;
        } else {
            t = -T + h * (j + 0.5);
        }
        out.push_back({t, w, f.evaluator(t)});
    }
    return out;
}

double window_half_width(const SignalSamples& f, const QuadratureSpec& q) {
    return f.has_evaluator() ? q.half_width : std::min(-f.t_min, f.t_max);
}

double node_spacing(const SignalSamples& f, const QuadratureSpec& q) {
    return f.has_evaluator() ? q.spacing() : (f.t_max - f.t_min) / static_cast<double>(f.values.size() - 1);
}

// Integrates f(t) * kernel(t); the kernel's modulus is supplied separately so the
// edge check sees the true envelope rather than an oscillating value.
template <class Kernel, class Envelope>
Complex integrate(const std::vector<Node>& nodes, Kernel kernel, Envelope envelope) {
    Complex sum{0.0, 0.0};
    double peak = 0.0;
    for (const auto& n : nodes) {
        sum += n.w * n.f * kernel(n.t);
        peak = std::max(peak, std::abs(n.f) * envelope(n.t));
    }
    const double edge = std::max(std::abs(nodes.front().f) * envelope(nodes.front().t),
                                 std::abs(nodes.back().f) * envelope(nodes.back().t));
    if (peak > 0.0 && edge > kEdgeDecay * peak) {
        throw ResolutionError("integrand has not decayed at the window edge (ratio " + std::to_string(edge / peak) +
                              "); widen the window");
    }
    return sum;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(half_width >= 4.0)) throw PreconditionError("quadrature half-width must be >= 4");
    if (nodes < 128) throw PreconditionError("quadrature needs at least 128 nodes");
}

double QuadratureSpec::spacing() const {
    return rule == Rule::trapezoid ? 2.0 * half_width / (nodes - 1) : 2.0 * half_width / nodes;
}

double QuadratureSpec::z_max() const {
    const double growth = std::sqrt(2.0 * std::log(1e-8 / kEps) / kPi);
    return std::min(growth, half_width - kWindowMargin);
}

SignalSamples SignalSamples::from_evaluator(std::function<Complex(double)> f) {
    SignalSamples s;
    s.evaluator = std::move(f);
    return s;
}

SignalSamples SignalSamples::from_samples(double t_min, double t_max, std::vector<Complex> values) {
    SignalSamples s;
    s.t_min = t_min;
    s.t_max = t_max;
    s.values = std::move(values);
    s.validate();
    return s;
}

void SignalSamples::validate() const {
    if (has_evaluator()) return;
    if (values.size() < 16) throw PreconditionError("sampled signal needs at least 16 samples");
    if (!(t_max > t_min)) throw PreconditionError("sampled signal needs t_max > t_min");
    if (std::abs(t_min + t_max) > 1e-12 * (t_max - t_min)) {
        throw PreconditionError("sampled signal grid must be symmetric about 0");
    }
}

Complex SignalSamples::operator()(double t) const {
    if (has_evaluator()) return evaluator(t);
    validate();
    const double h = (t_max - t_min) / static_cast<double>(values.size() - 1);
    const double j = (t - t_min) / h;
    const double r = std::round(j);
    if (std::abs(j - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(values.size())) {
        throw PreconditionError("sampled signal evaluated off its grid");
    }
    return values[static_cast<std::size_t>(r)];
}

Complex gabor_transform(const SignalSamples& f, double x, double omega, const QuadratureSpec& q) {
    const double T = window_half_width(f, q);
    const double h = node_spacing(f, q);
    if (std::abs(x) > T - kWindowMargin) {
        throw ResolutionError("Gabor point x = " + std::to_string(x) + " too close to the window edge");
    }
    if (std::abs(omega) > 0.25 / h) {
        throw ResolutionError("frequency " + std::to_string(omega) + " exceeds the node spacing's resolution");
    }
    const auto nodes = nodes_for(f, q);
    return integrate(
        nodes,
        [&](double t) { return std::exp(Complex{-kPi * (t - x) * (t - x), -2.0 * kPi * t * omega}); },
        [&](double t) { return std::exp(-kPi * (t - x) * (t - x)); });
}

Complex bargmann_transform(const SignalSamples& f, Complex z, const QuadratureSpec& q) {
    const double zmax = f.has_evaluator() ? q.z_max() : std::min(QuadratureSpec{}.z_max(), window_half_width(f, q) - kWindowMargin);
    if (std::abs(z) > zmax) {
        throw ResolutionError("|z| = " + std::to_string(std::abs(z)) + " exceeds the resolvable " + std::to_string(zmax));
    }
    // 2 pi t z - pi t^2 - pi z^2/2 = -pi (t - z)^2 + pi z^2 / 2
    const auto nodes = nodes_for(f, q);
    const Complex inner = integrate(
        nodes, [&](double t) { return std::exp(-kPi * (t - z) * (t - z)); },
        [&](double t) { return std::exp(-kPi * ((t - z.real()) * (t - z.real()) - z.imag() * z.imag())); });
    return inner * std::exp(0.5 * kPi * z * z);
}

double gabor_bargmann_residual(const SignalSamples& f, double x, double omega, const QuadratureSpec& q) {
    const Complex z{x, omega};
    const Complex lhs = gabor_transform(f, x, -omega, q);
    const Complex rhs = std::exp(Complex{0.0, kPi * x * omega}) * bargmann_transform(f, z, q) *
                        std::exp(-0.5 * kPi * std::norm(z));
    return std::abs(lhs - rhs);
}

InverseBargmann::InverseBargmann(std::function<Complex(Complex)> F, int degree) {
    if (degree < 8) throw PreconditionError("inverse Bargmann needs degree >= 8");
    const int N = degree;
    const int M = 4 * N;
    const double R = std::sqrt(N / kPi);
    std::vector<Complex> samples(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) samples[static_cast<std::size_t>(j)] = F(std::polar(R, 2.0 * kPi * j / M));

    taylor_.resize(static_cast<std::size_t>(N + 1));
    fock_.resize(static_cast<std::size_t>(N + 1));
    double log_scale = 0.0;  // log(R^n) - log sqrt(n!/pi^n) accumulated in n
    for (int n = 0; n <= N; ++n) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < M; ++j) {
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * kPi * static_cast<double>(j) * n / M);
        }
        acc /= static_cast<double>(M);  // alpha_n R^n
        if (n > 0) log_scale += std::log(R) - 0.5 * std::log(n / kPi);
        taylor_[static_cast<std::size_t>(n)] = acc * std::exp(-n * std::log(R));
        fock_[static_cast<std::size_t>(n)] = acc * std::exp(-log_scale);
    }

    // Fock membership: the top coefficients must carry a negligible share of the norm.
    double total = 0.0, top = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double c2 = std::norm(fock_[static_cast<std::size_t>(n)]);
        total += c2;
        if (n > N - 8) top += c2;
    }
    if (!std::isfinite(total) || top > 1e-16 * total + 1e-300) {
        throw DivergenceAlarm("Fock coefficients do not decay by degree " + std::to_string(N) +
                              "; F is not numerically in the Fock space at this degree");
    }
}

Complex InverseBargmann::operator()(double t) const {
    const double g = std::sqrt(2.0) * std::exp(-kPi * t * t);
    double h_prev = 0.0;
    double h = g;
    Complex sum = fock_[0] * h;
    for (std::size_t n = 0; n + 1 < fock_.size(); ++n) {
        const double dn = static_cast<double>(n);
        const double h_next = 2.0 * t * std::sqrt(kPi / (dn + 1.0)) * h - std::sqrt(dn / (dn + 1.0)) * h_prev;
        h_prev = h;
        h = h_next;
        sum += fock_[n + 1] * h;
    }
    return sum;
}

SignalSamples InverseBargmann::signal() const {
    return SignalSamples::from_evaluator([self = *this](double t) { return self(t); });
}

double InverseBargmann::fock_norm() const {
    double s = 0.0;
    for (const auto& c : fock_) s += std::norm(c);
    return std::sqrt(s);
}

Complex inverse_bargmann(const std::function<Complex(Complex)>& F, double t, int degree) {
    return InverseBargmann(F, degree)(t);
}

bool fock_reproducing_check(const std::function<Complex(Complex)>& F, double norm_estimate, Complex z) {
    return std::abs(F(z)) <= norm_estimate * std::exp(0.5 * kPi * std::norm(z));
}

double fock_norm_quadrature(const std::function<Complex(Complex)>& F, double half_width, int nodes) {
    if (!(half_width > 0.0) || nodes < 3) throw PreconditionError("Fock quadrature needs L > 0 and >= 3 nodes");
    const double h = 2.0 * half_width / (nodes - 1);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double x = -half_width + h * i;
        const double wx = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
        for (int j = 0; j < nodes; ++j) {
            const double y = -half_width + h * j;
            const double wy = (j == 0 || j == nodes - 1) ? 0.5 : 1.0;
            sum += wx * wy * std::norm(F({x, y})) * std::exp(-kPi * (x * x + y * y));
        }
    }
    return std::sqrt(sum * h * h);
}

double l2_norm(const SignalSamples& f, const QuadratureSpec& q) {
    double s = 0.0;
    for (const auto& n : nodes_for(f, q)) s += n.w * std::norm(n.f);
    return std::sqrt(s);
}

namespace signals {

SignalSamples gaussian() {
    return SignalSamples::from_evaluator([](double t) { return Complex{std::exp(-kPi * t * t), 0.0}; });
}

SignalSamples quartic_preimage() {
    return SignalSamples::from_evaluator([](double t) {
        return Complex{2.0 * kPi, 4.0 * kPi * t * t - 1.0} / (std::sqrt(2.0) * kPi) * std::exp(-kPi * t * t);
    });
}

SignalSamples coshsinh(int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("coshsinh signal sign must be +1 or -1");
    return SignalSamples::from_evaluator([sign](double t) {
        const double env = std::sqrt(2.0) * std::exp(-kPi * (0.125 + t * t));
        return env * Complex{std::cosh(kPi * t), sign * std::sinh(kPi * t)};
    });
}

}  // namespace signals

void write_signal_csv(std::ostream& out, const SignalSamples& f, double t_min, double t_max, int count) {
    if (count < 2 || !(t_max > t_min)) throw PreconditionError("signal export needs count >= 2 and t_max > t_min");
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << "t,re,im\n" << std::setprecision(17);
    for (int i = 0; i < count; ++i) {
        const double t = (i == count - 1) ? t_max : t_min + (t_max - t_min) * i / (count - 1);
        const Complex v = f(t);
        out << t << ',' << v.real() << ',' << v.imag() << '\n';
    }
    out.flags(flags);
    out.precision(prec);
}

}  // namespace phaseret
