#!/usr/bin/env python3
"""Emit Taylor coefficients (in x = p - 1/2) of the Riemann-Siegel
correction terms C0..C4 as a C++ include file.

    python3 tools/gen_rs_coefficients.py > src/zeta/riemann_siegel_coeffs.inc
"""
import mpmath as mp

mp.mp.dps = 60
DEGREE = 72   # Taylor degree of Psi; C4 needs 12 derivatives
KEEP = 48     # coefficients kept per correction term


def psi(x):
    p = x + mp.mpf(1) / 2
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def fmt(v):
    # drop round-off residue of odd/even coefficients that vanish identically
    if abs(v) < mp.mpf(10) ** -40:
        return "0.0"
    return mp.nstr(v, 20, min_fixed=0, max_fixed=0)


def main():
    base = mp.taylor(psi, 0, DEGREE)  # base[n] = Psi^(n)(1/2)/n!

    def deriv(m):
        # Taylor coefficients of Psi^(m) about x = 0
        return [base[n + m] * mp.factorial(n + m) / mp.factorial(n)
                for n in range(DEGREE - m + 1)]

    pi = mp.pi
    terms = {
        0: [(1, 0)],
        1: [(-1 / (96 * pi**2), 3)],
        2: [(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)],
        3: [(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5),
            (-1 / (5308416 * pi**6), 9)],
        4: [(1 / (128 * pi**2), 0), (19 / (24576 * pi**4), 4),
            (11 / (5898240 * pi**6), 8), (1 / (2038431744 * pi**8), 12)],
    }
    print("// Generated by tools/gen_rs_coefficients.py; do not edit.")
    print(f"// Taylor coefficients in x = p - 1/2, {KEEP} terms each.")
    print(f"inline constexpr int kRsTerms = {KEEP};")
    print("inline constexpr double kRsCoeffs[5][kRsTerms] = {")
    for k in range(5):
        acc = [mp.mpf(0)] * (DEGREE + 1)
        for scale, m in terms[k]:
            for n, c in enumerate(deriv(m)):
                acc[n] += scale * c
        vals = ", ".join(fmt(acc[n]) for n in range(KEEP))
        print(f"    {{{vals}}},")
    print("};")


if __name__ == "__main__":
    main()
