"""Independent reference values for the C++ unit tests.

Uses numpy/scipy only (no code shared with the library). Run with
`python3 tests/oracles/compute_oracles.py`; the printed numbers are frozen
into the corresponding tests.
"""
import itertools
import math

import numpy as np
from scipy.linalg import expm, logm
from scipy.optimize import brentq


def entropy(p):
    p = np.asarray(p, dtype=float)
    p = p[p > 1e-300]
    return float(-(p * np.log(p)).sum())


def gibbs(beta, eps):
    w = np.exp(-beta * (np.asarray(eps) - min(eps)))
    return w / w.sum()


def ergotropy_brute(rho, eps):
    r = np.sort(np.linalg.eigvalsh(rho))[::-1]
    return float(np.real(np.trace(np.diag(eps) @ rho)) - np.dot(eps, r))


def incoherent_brute(rho, eps):
    pops = np.real(np.diag(rho))
    best = -np.inf
    for perm in itertools.permutations(range(len(eps))):
        best = max(best, float(np.dot(eps, pops - pops[list(perm)])))
    return best


def relent(rho, sigma):
    return float(np.real(np.trace(rho @ (logm(rho) - logm(sigma)))))


def beta_star(spec, eps):
    s = entropy(spec)
    return brentq(lambda b: entropy(gibbs(b, eps)) - s, 0.0, 200.0, xtol=1e-15)


print("== 2x2 running example")
rho = np.array([[0.3, 0.2], [0.2, 0.7]])
eps = np.array([0.0, 1.0])
ev = np.linalg.eigvalsh(rho)
print("eig", repr(ev))
print("S(rho)", entropy(ev), "S(delta)", entropy([0.3, 0.7]), "C", entropy([0.3, 0.7]) - entropy(ev))
E = ergotropy_brute(rho, eps)
Ei = incoherent_brute(rho, eps)
print("E", E, "Ei", Ei, "Ec", E - Ei)
print("entropy diag(0.7828,0.2172)", entropy([0.7828, 0.2172]))

print("== gibbs qutrit beta=1", repr(gibbs(1.0, [0, 1, 2])))

print("== bound ergotropy qutrit eps=(0,.5,1) spec (.5,.3,.2)")
eps3 = np.array([0.0, 0.5, 1.0])
spec = np.array([0.5, 0.3, 0.2])
bs = beta_star(spec, eps3)
g = gibbs(bs, eps3)
print("beta*", bs, "bound", float(np.dot(eps3, spec - g)), "relent form", relent(np.diag(spec), np.diag(g)) / bs)

print("== three-level closed form (0.5,0.3), R=0.3, eps3=1")
eps3 = np.array([0.0, 0.3, 1.0])
spec = np.array([0.5, 0.3, 0.2])
bs = beta_star(spec, eps3)
g = gibbs(bs, eps3)
print("beta*", bs, "delta_ec", float(np.dot(eps3, spec - g)))

print("== qutrit lower-bound family beta=1 eps=(0,1,2)")
g1, g2, g3 = gibbs(1.0, [0, 1, 2])
print("g", g1, g2, g3, "Ei(c=0)", (2 - 1) * (g2 - g3), "sqrt(g1 g3)", math.sqrt(g1 * g3))
c = 0.1
rho = np.array([[g1, c, 0], [c, g3, 0], [0, 0, g2]])
E = ergotropy_brute(rho, np.array([0, 1, 2.0]))
Ei = incoherent_brute(rho, np.array([0, 1, 2.0]))
print("c=0.1 E", E, "Ei", Ei, "Ec", E - Ei)

print("== GAD scan, gamma=0.1, rho11=1/3, maximal coherence")
r11 = 1 / 3
r12 = math.sqrt(r11 * (1 - r11))
rho0 = np.array([[r11, r12], [r12, 1 - r11]])


def ec_qubit(rho):
    eps = np.array([0.0, 1.0])
    return ergotropy_brute(rho, eps) - incoherent_brute(rho, eps)


def gad(rho, q, gamma):
    ks = [
        math.sqrt(q) * np.array([[1, 0], [0, math.sqrt(1 - gamma)]]),
        math.sqrt(q) * np.array([[0, math.sqrt(gamma)], [0, 0]]),
        math.sqrt(1 - q) * np.array([[math.sqrt(1 - gamma), 0], [0, 1]]),
        math.sqrt(1 - q) * np.array([[0, 0], [math.sqrt(gamma), 0]]),
    ]
    return sum(k @ rho @ k.conj().T for k in ks)


ec0 = ec_qubit(rho0)
print("Ec(rho0)", ec0)
qs = np.linspace(0, 1, 201)
diffs = np.array([ec0 - ec_qubit(gad(rho0, q, 0.1)) for q in qs])
print("min diff", diffs.min(), "at q", qs[diffs.argmin()], "n negative", int((diffs < 0).sum()))
print("diff at q=0, 0.5, 1:", diffs[0], diffs[100], diffs[200])
neg = qs[diffs < 0]
print("negative q range", neg.min() if len(neg) else None, neg.max() if len(neg) else None)

print("== displaced thermal (N=120, sign convention e^{a alpha - alpha* a^dag})")


def displaced_thermal(alpha, nbar, n):
    a = np.diag(np.sqrt(np.arange(1, n)), 1).astype(complex)
    d = expm(alpha * a - np.conj(alpha) * a.conj().T)
    if nbar == 0:
        th = np.zeros(n)
        th[0] = 1
    else:
        k = np.arange(n)
        th = nbar**k / (nbar + 1) ** (k + 1)
        th /= th.sum()
    return d @ np.diag(th) @ d.conj().T


def ec_bosonic(alpha, nbar, n=120):
    rho = displaced_thermal(alpha, nbar, n)
    eps = np.arange(n, dtype=float)
    r = np.sort(np.clip(np.linalg.eigvalsh(rho), 0, None))[::-1]
    pops = np.real(np.diag(rho))
    e = float(np.dot(eps, pops) - np.dot(eps, r))
    ei = float(np.dot(eps, pops) - np.dot(eps, np.sort(pops)[::-1]))
    return float(np.dot(eps, pops)), e, ei, e - ei


for alpha, nbar in [(0.05, 0.0), (0.05, 1.0), (1.0, 0.0), (1.0, 1.0), (3.0, 0.0), (5.0, 0.0)]:
    print(alpha, nbar, ec_bosonic(alpha, nbar))
_, _, _, ec3 = ec_bosonic(3.0, 0.0)
_, _, _, ec5 = ec_bosonic(5.0, 0.0)
print("slope 3..5", math.log(ec5 / ec3) / math.log(5 / 3))
