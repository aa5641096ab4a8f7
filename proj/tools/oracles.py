#!/usr/bin/env python3
"""Regenerates tests/oracle_values.hpp from numpy/scipy.

The frozen values are computed without touching the C++ code: scipy's polar
and expm, numpy's SVD, and a direct re-implementation of the documented
counter RNG. Run from the repo root: python3 tools/oracles.py > tests/oracle_values.hpp
"""

import numpy as np
import scipy.linalg as sla
from scipy.optimize import minimize

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix(z):
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK
    z ^= z >> 31
    return z


class CounterRng:
    def __init__(self, seed, stream=0):
        self.key = mix(seed ^ mix(((stream + 1) * GAMMA) & MASK))
        self.counter = 0

    def next_u64(self):
        self.counter += 1
        return mix((self.key + self.counter * GAMMA) & MASK)

    def uniform(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def symmetric(self):
        return 2.0 * self.uniform() - 1.0

    def complex(self):
        re = self.symmetric()
        im = self.symmetric()
        return complex(re, im)

    def vector(self, n, scale=1.0):
        return np.array([self.complex() * scale for _ in range(n)])

    def matrix(self, r, c, scale=1.0):
        return np.array([[self.complex() * scale for _ in range(c)] for _ in range(r)])


def duality_coeffs(u, p):
    nu = np.linalg.norm(u, p)
    sgn = np.array([np.conj(z) / abs(z) if z != 0 else 0 for z in u])
    return nu * (np.abs(u) / nu) ** (p - 1) * sgn


def kuelbs_gram(dim, p, extra, seed):
    seeds = [np.eye(dim)[k].astype(complex) for k in range(dim)]
    rng = CounterRng(seed, 0x6B75656C)
    seeds += [rng.vector(dim) for _ in range(extra)]
    w = np.array([2.0 ** -(k + 1) for k in range(len(seeds))])
    w /= w.sum()
    q = p / (p - 1)
    g = np.zeros((dim, dim), complex)
    for t, u in zip(w, seeds):
        c = duality_coeffs(u, p)
        f = c / np.linalg.norm(c, q)
        g += t * np.outer(np.conj(f), f)
    return g


def lp_norm_2x2(a, p):
    def neg(x):
        v = np.array([np.cos(x[0]), np.sin(x[0]) * np.exp(1j * x[1])])
        v = v / np.linalg.norm(v, p)
        return -np.linalg.norm(a @ v, p)

    best = 0.0
    for t in np.linspace(0, np.pi / 2, 41):
        for ph in np.linspace(0, 2 * np.pi, 41):
            r = minimize(neg, [t, ph], method="Nelder-Mead", options={"xatol": 1e-14, "fatol": 1e-16, "maxiter": 4000})
            best = max(best, -r.fun)
    return best


def cpp_complex(z):
    return "{%.17g, %.17g}" % (z.real, z.imag)


def cpp_matrix(name, m):
    rows = ",\n    ".join("{" + ", ".join(cpp_complex(z) for z in row) + "}" for row in m)
    return "inline const dst::Matrix %s{\n    %s};\n" % (name, rows)


def cpp_reals(name, xs):
    return "inline const std::vector<double> %s{%s};\n" % (name, ", ".join("%.17g" % x for x in xs))


def main():
    a = np.array([[1 + 2j, -0.5, 0.3j], [0.2, 2 - 1j, 1], [-1, 0.5 + 0.5j, 0.7]])
    u, t = sla.polar(a, side="right")
    sigma = np.linalg.svd(a, compute_uv=False)
    uexp = u @ sla.expm(-t)
    lam = 10.0
    a_lam = lam * a @ np.linalg.inv(lam * np.eye(3) + t)

    rng = CounterRng(42, 0)
    u64 = [rng.next_u64() for _ in range(4)]
    rng7 = CounterRng(0, 7)
    unif = [rng7.uniform() for _ in range(3)]

    g = kuelbs_gram(3, 3.0, 2, 7)
    b = np.array([[1.0, 2.0], [-0.5, 1.0]])
    norm_b3 = lp_norm_2x2(b, 3.0)

    out = []
    out.append("// Generated by tools/oracles.py; do not edit by hand.\n#pragma once\n\n#include <cstdint>\n#include <vector>\n\n#include \"dst/matrix.hpp\"\n\nnamespace oracle {\n\n")
    out.append(cpp_matrix("kA", a))
    out.append(cpp_reals("kSigma", sigma))
    out.append(cpp_matrix("kPolarU", u))
    out.append(cpp_matrix("kPolarT", t))
    out.append(cpp_matrix("kUExpMinusT", uexp))
    out.append("inline constexpr double kBaireLambda = %.17g;\n" % lam)
    out.append(cpp_matrix("kBaireAlambda", a_lam))
    out.append("inline const std::vector<std::uint64_t> kRngSeed42{%s};\n" % ", ".join("0x%016xULL" % x for x in u64))
    out.append(cpp_reals("kRngSeed0Stream7Uniform", unif))
    out.append(cpp_matrix("kKuelbsGramP3Dim3Extra2Seed7", g))
    out.append(cpp_matrix("kLpMatrix", b.astype(complex)))
    out.append("inline constexpr double kLpMatrixNormP3 = %.17g;\n" % norm_b3)
    out.append("\n}  // namespace oracle\n")
    print("".join(out), end="")


if __name__ == "__main__":
    main()
