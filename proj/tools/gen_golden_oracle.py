#!/usr/bin/env python3
"""Offline high-precision oracles frozen into golden/.

Run once; the C++ tests only read the JSON files this writes.

  golden/special.json   Gamma-based constants at 50 digits, printed with 15
                        significant digits; fields whose exact value lies
                        within 3 ulps of a rounding boundary are listed
                        under near_tie
  golden/oracles.json   independent quadrature values: the angular kernel by
                        a dense trapezoid rule, the weighted operator on a
                        plateau bump by brute-force 2D polar quadrature
"""

import json
import math
import pathlib

import mpmath as mp
from scipy import integrate

mp.mp.dps = 50
ROOT = pathlib.Path(__file__).resolve().parent.parent / "golden"


def g15(x):
    return float(mp.nstr(mp.mpf(x), 15, min_fixed=-mp.inf, max_fixed=mp.inf))


def s15(x):
    return "%.15g" % g15(x)


NEAR_TIE_ULPS = 3


def near_tie(x):
    # True when x sits within NEAR_TIE_ULPS double ulps of a 15-digit rounding
    # boundary, so a double that close may print either neighbour
    x = abs(mp.mpf(x))
    if x == 0:
        return False
    e = mp.floor(mp.log10(x))
    unit = mp.mpf(10) ** (e - 14)
    m = x / unit
    frac = m - mp.floor(m)
    return abs(frac - mp.mpf("0.5")) * unit < NEAR_TIE_ULPS * math.ulp(float(x))


def cns(N, s):
    return 2 ** (2 * s) * mp.pi ** (-mp.mpf(N) / 2) * s * mp.gamma((N + 2 * s) / 2) / mp.gamma(1 - s)


def c_s(tau, N, s):
    return 2 ** (2 * s) * mp.gamma((N + tau) / 2) * mp.gamma((2 * s - tau) / 2) * mp.rgamma(-tau / 2) * mp.rgamma(
        (N - 2 * s + tau) / 2)


def mu0(N, s):
    return -(2 ** (2 * s)) * mp.gamma((N + 2 * s) / 4) ** 2 / mp.gamma((N - 2 * s) / 4) ** 2


def riesz(N, s):
    return 2 ** (2 * s) * mp.pi ** (mp.mpf(N) / 2) * mp.gamma(s) / mp.gamma((N - 2 * s) / 2)


def omega(N):
    return 2 * mp.pi ** (mp.mpf(N) / 2) / mp.gamma(mp.mpf(N) / 2)


def tau_plus(N, s, mu):
    # c_s + mu is decreasing on [mid, 2s): plain bisection
    lo, hi = (2 * s - N) / mp.mpf(2), 2 * s - mp.mpf("1e-30")
    for _ in range(200):
        m = (lo + hi) / 2
        if c_s(m, N, s) + mu > 0:
            lo = m
        else:
            hi = m
    return (lo + hi) / 2


def special():
    pairs = [(2, "0.5"), (3, "0.5"), (3, "0.75"), (2, "0.25"), (4, "0.3"), (5, "0.9")]
    records = []
    for N, s_str in pairs:
        # evaluate at the doubles the C++ side parses, not at the decimals
        s = mp.mpf(float(s_str))
        mid = (2 * s - N) / 2
        taus = [s - mp.mpf(N) / 4, mid, -mp.mpf(N) + mp.mpf("0.3"), 2 * s - mp.mpf("0.2"), mp.mpf("-0.5")]
        for tau in taus:
            if not (-N < tau < 2 * s):
                continue
            tau = mp.mpf(float(s15(tau)))
            vals = {"c_s": c_s(tau, N, s), "mu0": mu0(N, s), "cns": cns(N, s), "riesz_delta": riesz(N, s),
                    "omega": omega(N)}
            rec = {"N": N, "s": float(s_str), "tau": s15(tau)}
            rec.update({k: s15(v) for k, v in vals.items()})
            rec["near_tie"] = [k for k, v in vals.items() if near_tie(v)]
            records.append(rec)
    lgamma = []
    for x in ["0.5", "1", "5", "0.1", "7.25", "-0.5", "-3.7", "-49.5", "49.9", "1e-5"]:
        v = mp.log(abs(mp.gamma(mp.mpf(float(x)))))
        lgamma.append({"x": x, "value": s15(v), "sign": 1 if mp.gamma(mp.mpf(x)) > 0 else -1, "near_tie": near_tie(v)})
    return {"schema": 1, "kind": "special", "digits": 15, "near_tie_ulps": NEAR_TIE_ULPS, "records": records,
            "gamma_ln": lgamma}


def kernel_trapezoid(N, s, r, rho, n=10 ** 6):
    # N = 2 only: int_0^{2pi} (r^2 + rho^2 - 2 r rho cos t)^{-(N+2s)/2} dt
    h = 2 * math.pi / n
    acc = 0.0
    for k in range(n):
        t = k * h
        acc += (r * r + rho * rho - 2 * r * rho * math.cos(t)) ** (-(N + 2 * s) / 2)
    return acc * h


def bump(r, R):
    q = r / R
    return (1 - q * q) ** 3 if q < 1 else 0.0


def weighted_polar(N, s, mu, R, r):
    # C PV int (xi(x) - xi(z)) |z|^tau |x - z|^{-2-2s} dz in polar coordinates around x
    assert N == 2 and s == 0.5
    tp = float(tau_plus(N, mp.mpf(s), mu))
    C = float(cns(N, mp.mpf(s)))
    x0 = bump(r, R)

    def g(rho):
        def ang(phi):
            zx = r + rho * math.cos(phi)
            zy = rho * math.sin(phi)
            z = math.hypot(zx, zy)
            return (x0 - bump(z, R)) * z ** tp

        # integrand symmetric in phi; kinks where |z| = R
        pts = []
        if rho > 0:
            c = (R * R - r * r - rho * rho) / (2 * r * rho)
            if -1 < c < 1:
                pts.append(math.acos(c))
        v, _ = integrate.quad(ang, 0, math.pi, points=pts or None, limit=400, epsabs=1e-15, epsrel=1e-13)
        return 2 * v * rho ** (1 - N - 2 * s)

    cuts = [0.0, R - r, r, R + r]
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        v, _ = integrate.quad(g, a, b, limit=400, epsabs=1e-14, epsrel=1e-12)
        total += v
    v, _ = integrate.quad(g, R + r, math.inf, limit=400, epsabs=1e-14, epsrel=1e-12)
    total += v
    return {"N": N, "s": s, "mu": mu, "R": R, "r": r, "tau_plus": tp, "value": C * total}


def oracles():
    return {
        "schema": 1,
        "kind": "oracles",
        "sphere_kernel": [{"N": 2, "s": 0.5, "r": 1.0, "rho": 2.0, "nodes": 10 ** 6,
                           "value": kernel_trapezoid(2, 0.5, 1.0, 2.0)}],
        "weighted_frac_lap": [weighted_polar(2, 0.5, 1.0, 0.25, 0.1)],
    }


def main():
    ROOT.mkdir(exist_ok=True)
    (ROOT / "special.json").write_text(json.dumps(special(), indent=2) + "\n")
    (ROOT / "oracles.json").write_text(json.dumps(oracles(), indent=2) + "\n")


if __name__ == "__main__":
    main()
