"""Seeded randomized search for the frozen regression fixtures used in the
C++ tests. Re-run to regenerate; the values printed are pasted verbatim.

1. V in S_2 and unitary U with N(U V U^+) > 1.
2. (theta, U), 2x2, with |g(U theta U^+) - g(theta)| >= 1e-3, where g is
   computed by a dense phase scan (a_0 = 1, a_1 on a fine circle, optimal b
   in closed form: g = max_a sum_s |(a^T theta)_s|).
"""
import numpy as np

rng = np.random.default_rng(20240611)


def haar(d):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / abs(np.diag(r)))


def ball_rows(d):
    v = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * (rng.random((d, 1)) ** (1 / (2 * d)))


def cap(v):
    return np.linalg.norm(v, axis=1).max()


def g_scan(t, n=200000):
    ph = np.exp(2j * np.pi * np.arange(n) / n)
    w0 = t[0, :][None, :]
    w = w0 + ph[:, None] * t[1, :][None, :]
    return np.abs(w).sum(axis=1).max()


for _ in range(1000):
    v, u = ball_rows(2), haar(2)
    c = cap(u @ v @ u.conj().T)
    if c > 1.05:
        break
np.set_printoptions(precision=17)
print("V =", repr(v)); print("U =", repr(u)); print("cap(V) =", cap(v), "cap(UVU+) =", c)

for _ in range(1000):
    t = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    u = haar(2)
    g0, g1 = g_scan(t), g_scan(u @ t @ u.conj().T)
    if abs(g0 - g1) > 0.05:
        break
print("theta =", repr(t)); print("U2 =", repr(u)); print("g(theta) =", repr(g0), "g(U theta U+) =", repr(g1))
