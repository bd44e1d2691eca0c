"""Reference values frozen into the test-suite.

Everything here is computed with mpmath at high working precision, directly
from the defining series or from closed forms. None of it imports mlradii, so
the numbers stay independent of the code they check.

    python scripts/compute_oracles.py            # fast values
    python scripts/compute_oracles.py --scan     # also the slow fine-grid scans
"""
import argparse

import mpmath as mp

mp.mp.dps = 60


def phi(om, be, ga, x, order=0, terms=None):
    """Direct summation of the three-parameter series (or its derivative)."""
    om, be, ga, x = map(mp.mpf, (om, be, ga, x))
    total = mp.mpf(0)
    k = order
    small = 0
    while True:
        c = mp.rf(ga, k) / (mp.factorial(k) * mp.gamma(om * k + be))
        c *= mp.factorial(k) / mp.factorial(k - order)
        t = c * x ** (k - order)
        total += t
        k += 1
        if terms is not None:
            if k - order >= terms:
                break
            continue
        if abs(t) < mp.mpf(10) ** (-mp.mp.dps + 5) * max(abs(total), 1e-30):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return total


def lam(om, be, ga, r, order=0):
    """lambda(r) = phi(-r^2) and its r-derivatives."""
    r = mp.mpf(r)
    return mp.diff(lambda s: phi(om, be, ga, -s * s), r, order) if order else phi(om, be, ga, -r * r)


def bisect(f, a, b, n=200):
    fa = f(a)
    for _ in range(n):
        m = (a + b) / 2
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def grid_sign_changes(f, lo, hi, step):
    out = []
    x = mp.mpf(lo)
    fx = f(x)
    while x < hi:
        y = x + step
        fy = f(y)
        if (fx > 0) != (fy > 0):
            out.append((float(x), float(y)))
        x, fx = y, fy
    return out


def fast():
    print("== ml_core")
    print("phi(1.5,1.2,2.5,-2) 200 terms      ", mp.nstr(phi(1.5, 1.2, 2.5, -2, terms=200), 20))
    print("phi'(1.5,1.2,2.5,-2) 200 terms     ", mp.nstr(phi(1.5, 1.2, 2.5, -2, 1, terms=200), 20))
    print("phi''(1.5,1.2,2.5,-2) 200 terms    ", mp.nstr(phi(1.5, 1.2, 2.5, -2, 2, terms=200), 20))
    r = mp.mpf("0.5")
    st = 1 - 2 * r**2 * phi(1.5, 1, 1, -r * r, 1) / phi(1.5, 1, 1, -r * r)
    print("starlike G (1.5,1,1) r=0.5          ", mp.nstr(st, 20))
    r = mp.mpf("0.3")
    cv = (mp.cos(r) * (1 - r * r) - 3 * r * mp.sin(r)) / (mp.cos(r) - r * mp.sin(r))
    print("convex G (2,1,1) r=0.3 closed form  ", mp.nstr(cv, 20))
    r = mp.mpf(1)
    print("J(0.5) G (2,2,1) r=1                ", mp.nstr(0.5 * r * mp.cot(r) + 0.5 * (1 - r * mp.tan(r)), 20))
    # F-normalisation (3,1.5,2) at r=0.7, directly from f = (z^b G(b) phi(-z^2))^(1/b)
    om, be, ga = 3, mp.mpf("1.5"), 2
    f = lambda z: (z**be * mp.gamma(be) * phi(om, be, ga, -z * z)) ** (1 / be)
    r = mp.mpf("0.7")
    print("starlike F (3,1.5,2) r=0.7          ", mp.nstr(r * mp.diff(f, r) / f(r), 20))
    print("convex  F (3,1.5,2) r=0.7           ", mp.nstr(1 + r * mp.diff(f, r, 2) / mp.diff(f, r), 20))
    h = lambda z: z * mp.gamma(be) * phi(om, be, ga, -z)
    print("starlike H (3,1.5,2) r=0.7          ", mp.nstr(r * mp.diff(h, r) / h(r), 20))
    print("convex  H (3,1.5,2) r=0.7           ", mp.nstr(1 + r * mp.diff(h, r, 2) / mp.diff(h, r), 20))

    print("== closed-form radii for g = sin z")
    print("r tan r = 1                         ", mp.nstr(bisect(lambda r: r * mp.tan(r) - 1, mp.mpf("0.5"), mp.mpf("1.2")), 20))
    print("r tan r = 1/2                       ", mp.nstr(bisect(lambda r: r * mp.tan(r) - 0.5, mp.mpf("0.1"), mp.mpf("1.2")), 20))
    print("r tan r = 0.5/1.5 (eta=.5,rho=0)    ", mp.nstr(bisect(lambda r: r * mp.tan(r) - 1 / mp.mpf(1.5), mp.mpf("0.1"), mp.mpf("1.2")), 20))
    print("r cot r + 1 - r tan r = 0           ", mp.nstr(bisect(lambda r: r * mp.cot(r) + 1 - r * mp.tan(r), mp.mpf("0.9"), mp.mpf("1.5")), 20))
    print("tan r = 2r                          ", mp.nstr(bisect(lambda r: mp.tan(r) - 2 * r, mp.mpf("0.5"), mp.mpf("1.5")), 20))
    s = mp.sin(mp.pi / 4)
    strong = bisect(lambda r: (1 - s) * r * mp.coth(r) - (1 + s) * r * mp.cot(r), mp.mpf("1.0"), mp.mpf("1.5"))
    print("strong rho=.5 closed form           ", mp.nstr(strong, 20))
    print("starlike rho=0.3: r cot r = 0.3      ", mp.nstr(bisect(lambda r: r * mp.cot(r) - 0.3, mp.mpf("0.5"), mp.mpf("1.57")), 20))
    print("== h = sqrt(z) sin sqrt(z), f = sqrt(z sin z)")
    sH = bisect(lambda s: mp.tan(s) + s, mp.mpf("1.6"), mp.mpf("3.1"))
    print("starlike H (2,2,1): s^2, tan s=-s   ", mp.nstr(sH**2, 20))
    print("starlike F (2,2,1): tan r=-r        ", mp.nstr(sH, 20))
    hh = lambda z: mp.sqrt(z) * mp.sin(mp.sqrt(z))
    cH = mp.findroot(lambda r: 1 + r * mp.diff(hh, r, 2) / mp.diff(hh, r), 1.5)
    print("convex H (2,2,1)                    ", mp.nstr(cH, 20))
    ff = lambda z: mp.sqrt(z * mp.sin(z))
    cF = mp.findroot(lambda r: 1 + r * mp.diff(ff, r, 2) / mp.diff(ff, r), 1.0)
    print("convex F (2,2,1)                    ", mp.nstr(cF, 20))

    print("== strong starlike direct summation oracle (lambda_n = n pi)")
    N = 100000
    sf = float(s)
    import numpy as np
    l2 = (np.arange(1, N + 1) * np.pi) ** 2

    def psi(r):
        return 2 * np.sum(r * r * (l2 + r * r * sf) / (l2 * l2 - r**4)) - sf

    a, b = 1.0, 3.0
    for _ in range(200):
        m = (a + b) / 2
        if psi(m) < 0:
            a = m
        else:
            b = m
    print("N=1e5 truncated root                ", repr(a))

    print("== zero-sum cross-check, r=1")
    for n in (10, 200, 1000, 2000):
        tr = 1 - sum(2 / ((k * mp.pi) ** 2 - 1) for k in range(1, n + 1))
        print(f"  N={n:5d} |r cot r - truncated| =", mp.nstr(abs(mp.cot(1) - tr), 15))

    print("== lemma / sector")
    z = mp.mpc(0, 1)
    print("|i/(2-i) - i/(3-i)|                 ", mp.nstr(abs(z / (2 - z) - z / (3 - z)), 20))
    c, R = mp.mpc(1, 0.2), mp.mpf(0.5)
    worst = max(abs(mp.arg(c + R * mp.expjpi(2 * mp.mpf(k) / 10000))) for k in range(10000))
    print("disk c=1+0.2i R=.5 max|arg| vs pi/4 ", mp.nstr(worst, 15), mp.nstr(mp.pi / 4, 15))
    print("condition value                     ", mp.nstr(mp.sin(mp.pi / 4) - 0.2 * mp.cos(mp.pi / 4), 15))

    print("== (3,1,1) and (3,1.5,1) zeros")
    for be in (1, 1.5):
        lz = [mp.findroot(lambda r: lam(3, be, 1, r), x0) for x0 in (1.5, 2.5, 3.5)]
        print(f"  (3,{be},1) zeros near guesses", [mp.nstr(v, 17) for v in lz])


def slow():
    print("== (1.5,1,1) fine-grid scans, step 1e-3 on (0, 20)")
    mp.mp.dps = 40
    br = grid_sign_changes(lambda r: phi(1.5, 1, 1, -r * r), mp.mpf("1e-3"), 20, mp.mpf("1e-3"))
    print("  lambda brackets:", br)
    gp = lambda r: phi(1.5, 1, 1, -r * r) - 2 * r * r * phi(1.5, 1, 1, -r * r, 1)
    print("  g' brackets:", grid_sign_changes(gp, mp.mpf("1e-3"), 20, mp.mpf("1e-3")))
    print("== (3,1,1) lambda and g' sign changes, step 1e-2 on (0, 40)")
    br = grid_sign_changes(lambda r: phi(3, 1, 1, -r * r), mp.mpf("1e-2"), 40, mp.mpf("1e-2"))
    print("  lambda:", br)
    zs = [bisect(lambda r: phi(3, 1, 1, -r * r), mp.mpf(a), mp.mpf(b), 80) for a, b in br[:6]]
    print("  lambda zeros:", [mp.nstr(v, 17) for v in zs])
    gp = lambda r: phi(3, 1, 1, -r * r) - 2 * r * r * phi(3, 1, 1, -r * r, 1)
    br = grid_sign_changes(gp, mp.mpf("1e-2"), 40, mp.mpf("1e-2"))
    zs = [bisect(gp, mp.mpf(a), mp.mpf(b), 80) for a, b in br[:6]]
    print("  g' zeros:", [mp.nstr(v, 17) for v in zs])


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--scan", action="store_true")
    args = ap.parse_args()
    fast()
    if args.scan:
        slow()
