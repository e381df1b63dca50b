#!/usr/bin/env python3
"""Independent high-precision reference values frozen into the C++ tests.

Every value here is computed with mpmath at 30 significant digits, by a route
that shares no code with the library: symmetric series use mpmath.nsum over
paired +k/-k terms, closed forms use mpmath special functions.
"""
import mpmath as mp

mp.mp.dps = 30


def translation_series(a, tau):
    """sum_k log|(a+2(k-1)i tau)/(a+2k i tau)| - 2 tau Im 1/(a+2k i tau), symmetric."""
    def t(k):
        c = a + 2j * k * tau
        cm = a + 2j * (k - 1) * tau
        return mp.log(abs(cm / c)) - 2 * tau * mp.im(1 / c)
    return t(0) + mp.nsum(lambda k: t(k) + t(-k), [1, mp.inf])


def main():
    # Series identity: sum log|(4k-3)/(4k+1)| + 4/(4k+1) = pi
    s = translation_series(mp.mpc(0, 0.5), 1)
    print("pi_identity", mp.nstr(s, 25), "pi", mp.nstr(mp.pi, 25))

    # b' for tau=1, Y_u={i/2}, b=pi/2
    print("b_prime_coshsinh", mp.nstr(mp.pi / 2 - s, 25))

    # universal family: b_m = m * S(e^m + i/(2m), tau = 1/m)
    for m in (1, 2, 3):
        a = mp.e ** m + mp.mpc(0, 1) / (2 * m)
        S = translation_series(a, mp.mpf(1) / m)
        print("b_%d" % m, mp.nstr(m * S, 25))

    # tau = 1/2, Y_u = {1 + i/4}: b - b' = S / tau
    S = translation_series(mp.mpc(1, 0.25), mp.mpf(1) / 2)
    print("b_minus_bprime_tau_half", mp.nstr(S / mp.mpf(0.5), 25))

    # tau = 1, Y_u = {-i/2}, b = -pi/2  ->  b'
    S = translation_series(mp.mpc(0, -0.5), 1)
    print("b_prime_conj", mp.nstr(-mp.pi / 2 - S, 25))

    # lattice sum sum 1/|i/2 + 2ik|^2
    L = mp.nsum(lambda k: 4 / (4 * k + 1) ** 2, [-mp.inf, mp.inf])
    print("lattice_sum", mp.nstr(L, 25), "pi^2/4", mp.nstr(mp.pi ** 2 / 4, 25))

    # gamma integral
    for lam in (1.5, 2, 2.5, 3, 5):
        lam = mp.mpf(lam)
        cf = mp.sqrt(mp.pi) / 2 * mp.gamma((lam - 1) / 2) / mp.gamma(lam / 2)
        q = mp.quad(lambda t: (1 + t * t) ** (-lam / 2), [0, 1, mp.inf])
        print("gamma_integral", lam, mp.nstr(cf, 25), mp.nstr(q, 25))

    # cosh/sinh closed form at z = 1
    z = 1
    F = mp.cosh(mp.pi * z / 2) + 1j * mp.sinh(mp.pi * z / 2)
    print("coshsinh_at_1", mp.nstr(F, 20), "log|F|", mp.nstr(mp.log(abs(F)), 20))

    # primary factor and log-abs examples
    print("E(0.5;1)", mp.nstr(0.5 * mp.e ** 0.5, 20))
    print("log|E(0.5;1)|", mp.nstr(mp.log(0.5) + 0.5, 20))
    print("log sqrt5", mp.nstr(mp.log(mp.sqrt(5)), 20))

    # off-line Gabor discrepancy for the cosh/sinh pair at (x, omega) = (0, 1/2):
    # |Gf(0, 1/2)| = |F(-i/2)| e^{-pi/8}, F = cosh(pi z/2) +- i sinh(pi z/2)
    zz = mp.mpc(0, -0.5)
    Ff = mp.cosh(mp.pi * zz / 2) + 1j * mp.sinh(mp.pi * zz / 2)
    Fg = mp.cosh(mp.pi * zz / 2) - 1j * mp.sinh(mp.pi * zz / 2)
    w = mp.e ** (-mp.pi * abs(zz) ** 2 / 2)
    print("gabor_offline", mp.nstr(abs(Ff) * w, 20), mp.nstr(abs(Fg) * w, 20))


if __name__ == "__main__":
    main()
