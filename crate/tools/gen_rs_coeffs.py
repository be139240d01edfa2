"""Generate Taylor tables for the Riemann-Siegel correction coefficients.

Each C_k(p), p = frac(sqrt(t / 2pi)), is a linear combination of derivatives
of Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p). The tables store C_k as a
power series in x = p - 1/2, truncated once terms fall below 1e-20 on
|x| <= 1/2.

Usage: python3 tools/gen_rs_coeffs.py > crates/core/src/special_fn/rs_coeffs.rs
"""
import mpmath as mp

mp.mp.dps = 120
NTERMS = 90


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def psi_series():
    # Cauchy integral on a circle of radius 1 around p = 1/2. Psi is entire.
    m = 512
    r = mp.mpf(1)
    vals = [psi(mp.mpf(1) / 2 + r * mp.expjpi(2 * mp.mpf(j) / m)) for j in range(m)]
    coeffs = []
    for k in range(NTERMS):
        s = mp.fsum(vals[j] * mp.expjpi(-2 * mp.mpf(j * k) / m) for j in range(m))
        coeffs.append(mp.re(s) / m / r**k)
    return coeffs


def deriv(series, order):
    # coefficients of the order-th derivative
    out = []
    for k in range(order, len(series)):
        out.append(series[k] * mp.factorial(k) / mp.factorial(k - order))
    return out


def combo(series, terms):
    n = len(series)
    out = [mp.mpf(0)] * n
    for scale, order in terms:
        d = deriv(series, order)
        for k, v in enumerate(d):
            out[k] += scale * v
    return out


def main():
    a = psi_series()
    pi2 = mp.pi**2
    tables = {
        "C0": combo(a, [(1, 0)]),
        "C1": combo(a, [(-1 / (96 * pi2), 3)]),
        "C2": combo(a, [(1 / (64 * pi2), 2), (1 / (18432 * pi2**2), 6)]),
        "C3": combo(
            a,
            [
                (-1 / (64 * pi2), 1),
                (-1 / (3840 * pi2**2), 5),
                (-1 / (5308416 * pi2**3), 9),
            ],
        ),
        "C4": combo(
            a,
            [
                (1 / (128 * pi2), 0),
                (mp.mpf(19) / (24576 * pi2**2), 4),
                (mp.mpf(11) / (5898240 * pi2**3), 8),
                (1 / (2038431744 * pi2**4), 12),
            ],
        ),
    }
    print("// Generated by tools/gen_rs_coeffs.py. Do not edit by hand.")
    print("// Power series in x = p - 1/2 for the Riemann-Siegel correction terms.")
    print()
    for name, coeffs in tables.items():
        keep = []
        for c in coeffs:
            keep.append(mp.mpf(0) if abs(c) < mp.mpf(10) ** -60 else c)
        # trim trailing terms negligible on |x| <= 1/2
        while keep and abs(keep[-1]) * mp.mpf(0.5) ** (len(keep) - 1) < mp.mpf(10) ** -21:
            keep.pop()
        print(f"pub(crate) const {name}: [f64; {len(keep)}] = [")
        for c in keep:
            if c == 0:
                print("    0.0,")
            else:
                print(f"    {mp.nstr(c, 20, min_fixed=-1, max_fixed=-1, show_zero_exponent=True)},")
        print("];")
        print()


if __name__ == "__main__":
    main()
