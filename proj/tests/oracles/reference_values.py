"""Offline oracle for the frozen expected values in the C++ unit tests.

Everything here is computed with mpmath / sympy at 40 significant digits,
independently of the library code paths.  Re-run with

    python3 tests/oracles/reference_values.py

and compare against the constants in tests/*.cpp.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def kummer_m(b, c, s):
    # plain series with an explicit tail bound: terms eventually decrease
    # geometrically with ratio < 1/2, so the tail is bounded by the last term
    total, term, n = mp.mpf(1), mp.mpf(1), 0
    while True:
        term *= (b + n) / (c + n) * s / (n + 1)
        n += 1
        total += term
        if n > 200 or (n > 2 * abs(s) and abs(term) < mp.mpf(10) ** -38):
            break
    return total


def varphi(dim, alpha, beta, s):
    c = mp.mpf(dim - alpha) / (2 - alpha)
    return mp.e ** (-s) * kummer_m(c - beta, c, mp.mpf(s))


def phi_weight(dim, alpha, beta, r, t):
    s = mp.mpf(r) ** (2 - alpha) / ((2 - alpha) ** 2 * t)
    return mp.mpf(t) ** (-beta) * varphi(dim, alpha, beta, s)


def show(name, value):
    print(f"{name:48s} {mp.nstr(value, 20)}")


show("gamma(4.5)", mp.gamma(4.5))
show("M(0.5,1.5;1)", kummer_m(mp.mpf("0.5"), mp.mpf("1.5"), 1))
show("U(1,1;2)  [e^2 E1(2)]", mp.e ** 2 * mp.e1(2))
show("varphi N=3 a=0 b=0.5 s=1", varphi(3, 0, mp.mpf("0.5"), 1))
show("varphi' N=3 a=0 b=0.5 s=1 (recurrence)",
     mp.mpf("0.5") * (varphi(3, 0, mp.mpf("1.5"), 1) - varphi(3, 0, mp.mpf("0.5"), 1)))
show("varphi' N=3 a=0 b=0.5 s=1 (numeric diff)",
     mp.diff(lambda s: varphi(3, 0, mp.mpf("0.5"), s), 1))
show("Phi N=3 a=0 b=0.5 r=1 t=4", phi_weight(3, 0, mp.mpf("0.5"), 1, 4))
show("-1.5 Phi_2.5 N=3 a=0 r=1 t=1", -mp.mpf("1.5") * phi_weight(3, 0, mp.mpf("2.5"), 1, 1))
show("d/dt Phi_1.5 N=3 a=0 r=1 t=1 (numeric)",
     mp.diff(lambda t: phi_weight(3, 0, mp.mpf("1.5"), 1, t), 1))
a, b = mp.mpf("0.5"), mp.mpf("0.4")
show("trace N=2 a=.5 b=.4 r=1.5 (limit)",
     mp.gamma(1) / mp.gamma(1 - b) * (2 - a) ** (2 * b) * mp.mpf("1.5") ** (-(2 - a) * b))
show("trace N=2 a=.5 b=.4 r=1.5 (stated formula)",
     mp.gamma(1) / mp.gamma(1 - b) * mp.mpf("1.5") ** ((2 - a) * b))
# large argument: use mpmath's own 1F1 rather than the truncated series
sb = mp.mpf("1.5") ** (2 - a) / ((2 - a) ** 2 * mp.mpf("1e-4"))
show("Phi N=2 a=.5 b=.4 r=1.5 t=1e-4",
     mp.mpf("1e-4") ** (-b) * mp.e ** (-sb) * mp.hyp1f1(1 - b, 1, sb))
show("max_s e^-s (1+s)^1.5", mp.mpf("1.5") ** mp.mpf("1.5") * mp.e ** mp.mpf("-0.5"))

# bump b(r) = amp (1 - xi^2)^4, xi = (r - center)/width, on |xi| < 1
r = sp.symbols("r", positive=True)
center, width, amp = sp.Rational(2), sp.Rational(1, 2), sp.Rational(1)
xi = (r - center) / width
bump = amp * (1 - xi**2) ** 4
lo, hi = center - width, center + width
show("int bump^2 4 pi r^2 dr (c=2,w=.5)",
     mp.mpf(sp.N(sp.integrate(bump**2 * 4 * sp.pi * r**2, (r, lo, hi)), 40)))
show("int bump'^2 4 pi r^2 dr (c=2,w=.5)",
     mp.mpf(sp.N(sp.integrate(sp.diff(bump, r) ** 2 * 4 * sp.pi * r**2, (r, lo, hi)), 40)))
lap = sp.diff(bump, r, 2) + 2 / r * sp.diff(bump, r)
show("-(b''+2b'/r) at r=2.1", mp.mpf(sp.N(-lap.subs(r, sp.Rational(21, 10)), 40)))

# sine profile on [1, 3]: u = sin(pi (r-1)/2), Dirichlet energy in N = 3
sine = sp.sin(sp.pi * (r - 1) / 2)
show("int (sine')^2 4 pi r^2 dr on [1,3]",
     mp.mpf(sp.N(sp.integrate(sp.diff(sine, r) ** 2 * 4 * sp.pi * r**2, (r, 1, 3)), 40)))
show("annulus volume N=3 [1,5]", 4 * mp.pi / 3 * (5**3 - 1))
show("int bump'^2 r^2 4 pi r^2 dr (gamma=2 data norm)",
     mp.mpf(sp.N(sp.integrate(sp.diff(bump, r) ** 2 * r**2 * 4 * sp.pi * r**2, (r, lo, hi)), 40)))
show("int bump^2 4 pi r^(3/2) dr (alpha=1/2 measure)",
     mp.mpf(sp.N(sp.integrate(bump**2 * 4 * sp.pi * r ** sp.Rational(3, 2), (r, lo, hi)), 40)))
