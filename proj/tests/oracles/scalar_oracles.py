"""Independent high-precision oracles for the frozen constants used in the C++ tests.

Run: python3 tests/oracles/scalar_oracles.py
"""
from mpmath import mp, mpf, findroot, log, exp, sqrt, quad, inf, factorial, e

mp.dps = 40


def truncated_root(M):
    L = log(1 + mpf(M))
    f = lambda c: c - 1 - log(c) - L
    # bisection on (1, big)
    lo, hi = mpf(1), mpf(2)
    while f(hi) < 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def factorial_bound(M, n):
    return exp((factorial(n) * log(1 + mpf(M))) ** (mpf(1) / n))


def C(p):
    p = mpf(p)
    if p == 0:
        return e
    return (1 - p) ** (-1 / p)


def g_L(s):
    s = mpf(s)
    if s <= mpf(1) / 2:
        return s * s - 1
    if s <= 1:
        return mpf(3) / 2 * (s - 1)
    return min(s - 1, mpf(1))


if __name__ == "__main__":
    for M in ["1e-12", "0.5", "1", "2", str(e - 1)]:
        print("hardy_truncated", M, mp.nstr(truncated_root(mpf(M)), 20))
    for M, n in [(1, 2), (1, 3), (e - 1, 2)]:
        print("factorial_bound", M, n, mp.nstr(factorial_bound(M, n), 20))
    for p in [-2, -1, -0.5, 0, mpf(1) / 3, 0.5, 0.75]:
        print("C", p, mp.nstr(C(p), 20))
    K = quad(lambda s: g_L(s) / s**2, [1, 2, inf])
    print("K(gL)", mp.nstr(K, 20), "ln2", mp.nstr(log(2), 20))
    print("int_0^1 ln(1/t)", mp.nstr(quad(lambda t: -log(t), [0, 1]), 20))
