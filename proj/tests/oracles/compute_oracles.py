"""Independent high-precision reference values frozen into the C++ tests.

Uses mpmath directly on the closed forms; shares no code with the library.
Run: python3 tests/oracles/compute_oracles.py
"""
from mpmath import fsum, mp, mpf, gamma, cos, sin, pi, sqrt, ncdf, findroot, diff, log, quad, exp, inf

mp.dps = 40


def kappa(a):
    return a if a < 1 else 2 - a


def G_trig(lam, a):
    return 2 / pi * cos(kappa(a) / a * lam * pi / 2) * sin(pi * lam / 2) * gamma(1 - lam / a) * gamma(lam)


def G_ratio(lam, a):
    return gamma(1 - lam / a) / gamma(1 - lam)


def g(lam, a):
    G = G_ratio if a < 1 else G_trig
    return (G(2 * a * lam, a) / G(a * lam, a) ** 2 - 1) / lam ** 2


def lam_star(a, guess):
    return findroot(lambda l: diff(lambda t: g(t, a), l), guess)


def D_gm(a, k):
    kap = kappa(a)
    return (cos(kap * pi / (2 * k)) ** k / cos(kap * pi / 2)) * (
        2 / pi * sin(pi * a / (2 * k)) * gamma(1 - mpf(1) / k) * gamma(a / k)) ** k


def main():
    a = mpf('0.5')
    print("G(-1,0.5) ratio/trig(-1+1e-20)", G_ratio(-1, a), G_trig(mpf(-1) + mpf('1e-20'), a))
    print("G(-2,0.5)", G_ratio(-2, a))
    print("G(-0.37,0.7) ratio, trig", G_ratio(mpf('-0.37'), mpf('0.7')), G_trig(mpf('-0.37'), mpf('0.7')))
    print("G(0.3,1.5) trig", G_trig(mpf('0.3'), mpf('1.5')))
    print("g(-1,0.9)", g(mpf(-1), mpf('0.9')), 2 * gamma(mpf('1.9')) ** 2 / gamma(mpf('2.8')) - 1)
    print("g(-2,0.5)", g(mpf(-2), a))
    for al, guess in [('0.5', -2), ('0.9', -10), ('0.99', -115), ('0.999', -1100), ('0.9999', -11000), ('0.01', -1), ('0.1', -1), ('0.3', -1.5)]:
        al = mpf(al)
        ls = lam_star(al, guess)
        print("lambda*", al, ls, "g*", g(ls, al), "V_gm printed", pi ** 2 * (1 - al ** 2),
              "V_gm/6", pi ** 2 / 6 * (1 - al ** 2))
    for al in ['1.5', '1.2', '1.9']:
        al = mpf(al)
        lo, hi = -1 / (2 * al), mpf('0.5')
        # scan
        best = min(((g(lo + (hi - lo) * i / 400, al), lo + (hi - lo) * i / 400) for i in range(1, 400) if abs(lo + (hi - lo) * i / 400) > 1e-6))
        print("alpha>1 scan", al, best)
    print("1/D_gm(0.5,2)", 1 / D_gm(a, 2))
    print("HM(0.5,k=2,x=[1,1])", 2 * cos(pi / 4) / gamma(mpf('1.5')) / 2 * (1 - (mpf(1) / 2) * (2 * gamma(mpf('1.5')) ** 2 / gamma(2) - 1)))
    print("levy pdf(1,1)", 1 / sqrt(2 * pi) * exp(mpf(-0.5)))
    print("levy cdf(1,1)", 2 * (1 - ncdf(1)))
    print("1+3^0.99", 1 + mpf(3) ** mpf('0.99'))
    print("H([1,3])", -(mpf(1) / 4) * log(mpf(1) / 4) - (mpf(3) / 4) * log(mpf(3) / 4))
    print("E|Z|^-1 alpha=0.3,0.7,1.5", [G_ratio(-1, mpf(x)) / cos(mpf(x) * pi / 2) ** (-1 / mpf(x)) for x in ['0.3', '0.7']],
          G_trig(mpf(-0.5), mpf('1.5')) / cos(mpf('0.5') * pi / 2) ** (mpf(-0.5) / mpf('1.5')))

    estimator_fixtures()


def op(x, a, lam):
    G = G_ratio if a < 1 else G_trig
    k = len(x)
    r = cos(kappa(a) * pi / 2) ** lam * fsum(v ** (lam * a) for v in x) / k / G(a * lam, a)
    return r ** (1 / lam) * (1 - (mpf(1) / k) * (1 / (2 * lam)) * (1 / lam - 1) * (G(2 * a * lam, a) / G(a * lam, a) ** 2 - 1))


def estimator_fixtures():
    x = [mpf(v) for v in ('0.7', '2.5', '1.3', '9.0', '0.05')]
    k = len(x)
    for a in (mpf('0.9'), mpf('1.5')):
        print("GM", a, exp(fsum(a / k * log(v) for v in x)) / D_gm(a, k))
    a = mpf('0.9')
    print("HM 0.9", k * cos(a * pi / 2) / gamma(1 + a) / fsum(v ** (-a) for v in x)
          * (1 - (mpf(1) / k) * (2 * gamma(1 + a) ** 2 / gamma(1 + 2 * a) - 1)))
    print("OP 0.9", op(x, a, mpf('-11.237129752454374')))
    print("OP 1.5 lambda=0.16184", op(x, mpf('1.5'), mpf('0.16184')))


main()
