"""Recomputes the frozen reference values in oracle_values.hpp at 50 digits with mpmath.

Run from the repository root:  python3 tests/oracles/freeze.py > tests/oracle_values.hpp
The formulas are written out independently of the C++ sources.
"""
import mpmath as mp

mp.mp.dps = 50
I = mp.mpc(0, 1)


def qn(n, q):
    if n == 0:
        return mp.mpc(0)
    return sum(q ** (n - 1 - 2 * j) for j in range(n))


class Params:
    def __init__(self, q, g, alpha=I, alpha_t=1, gamma=1, gamma_bar=1):
        self.q, self.g = mp.mpc(q), mp.mpc(g)
        self.alpha, self.alpha_t = mp.mpc(alpha), mp.mpc(alpha_t)
        self.gamma, self.gamma_bar = mp.mpc(gamma), mp.mpc(gamma_bar)
        qd = self.q - 1 / self.q
        self.gt = mp.sqrt(self.g ** 2 / (1 - self.g ** 2 * qd ** 2))
        self.xi = -I * self.gt * qd
        self.qh = mp.sqrt(self.q)


def shortening(xm, M, p):
    q, xi = p.q, p.xi
    s = q ** M * (q ** M * (xm + 1 / xm) + (q ** M - q ** -M) * xi + I * qn(M, q) / p.gt)
    d = mp.sqrt(s * s - 4)
    r = [(s + d) / 2, (s - d) / 2]
    r.sort(key=lambda x: -abs(x))
    return r


class Kin:
    pass


def labels(xp, xm, M, V, gamma, p, alpha):
    s = mp.sqrt(p.g / qn(M, p.q))
    qM2 = p.qh ** M
    xi, gt, g = p.xi, p.gt, p.g
    a = s * gamma
    b = s * alpha / gamma * (xm - xp) / xm
    c = s * gamma / (alpha * V) * I * gt * qM2 / (g * (xp + xi))
    d = s * gt * qM2 * V / (I * g * gamma) * (xp - xm) / (xi * xp + 1)
    return a, b, c, d


def kin(xp, xm, M, p, gamma, U=None, V=None):
    k = Kin()
    q, xi = p.q, p.xi
    k.M, k.xp, k.xm, k.gamma = M, xp, xm, gamma
    k.U = mp.sqrt(q ** -M * (xp + xi) / (xm + xi)) if U is None else U
    k.V = mp.sqrt(q ** -M * (xi * xp + 1) / (xi * xm + 1)) if V is None else V
    # spectral parameter from U, V (the C++ side uses the theta form; they agree on shell)
    k.z = (1 - k.U ** 2 * k.V ** 2) / (k.V ** 2 - k.U ** 2)
    k.a, k.b, k.c, k.d = labels(xp, xm, M, k.V, gamma, p, p.alpha)
    return k


def reflect(k, p, gamma_partner):
    xi = p.xi
    xpr = -(k.xm + xi) / (xi * k.xm + 1)
    xmr = -(k.xp + xi) / (xi * k.xp + 1)
    return kin(xpr, xmr, k.M, p, gamma_partner, U=1 / k.U, V=k.V)


def closed(k, p):
    r = reflect(k, p, p.gamma_bar)
    M, q, z = k.M, p.q, k.z
    C = [r.gamma / k.gamma]
    for n in range(1, M):
        C.append(C[-1] * (q ** M - q ** (2 * n) / z) / (q ** M - q ** (2 * n) * z))
    Cm = lambda n: C[n] if 0 <= n < M else 0
    A, B, D, E = [], [], [], []
    for n in range(M + 1):
        N = qn(n, q) * r.b * r.c + qn(M - n, q) * r.a * r.d
        A.append((Cm(n - 1) * qn(n, q) * r.b * k.c + Cm(n) * qn(M - n, q) * k.a * r.d) / N)
        D.append(qn(n, q) * qn(M - n, q) * (Cm(n) * k.a * r.c - Cm(n - 1) * r.a * k.c) / N)
        if 1 <= n <= M - 1:
            B.append((Cm(n) * qn(n, q) * k.b * r.c + Cm(n - 1) * qn(M - n, q) * r.a * k.d) / N)
            E.append((Cm(n) * k.b * r.d - Cm(n - 1) * r.b * k.d) / N)
        else:
            B.append(mp.mpc(0))
            E.append(mp.mpc(0))
    return dict(A=A, B=B, C=C, D=D, E=E)


def rational(xp, xm, M, g, alpha, gam, gb):
    u = (xp + 1 / xp + xm + 1 / xm) / 2
    C = [gb / gam]
    for n in range(1, M):
        C.append(C[-1] * (2 * I * g * u - M + 2 * n) / (-2 * I * g * u - M + 2 * n))
    Cm = lambda n: C[n] if 0 <= n < M else 0
    A, B, D, E = [], [], [], []
    for n in range(M + 1):
        N = n + (M - n) * xm * xp
        A.append(gam / gb * xm / (xp * N) * ((M - n) * Cm(n) * xp ** 2 - n * Cm(n - 1)))
        D.append(gam * gb / alpha * n * (M - n) * (Cm(n) * xp + Cm(n - 1) * xm) / (N * (xp - xm)))
        if 1 <= n <= M - 1:
            B.append(gb / gam * xp / (xm * N) * ((M - n) * Cm(n - 1) * xm ** 2 - n * Cm(n)))
            E.append(alpha / (gam * gb) * (xm - xp) / N * (Cm(n) * xp + Cm(n - 1) * xm))
        else:
            B.append(mp.mpc(0))
            E.append(mp.mpc(0))
    return dict(A=A, B=B, C=C, D=D, E=E, u=u)


def c(z):
    z = mp.mpc(z)
    return "C{%s, %s}" % (mp.nstr(z.real, 20, min_fixed=-5, max_fixed=5),
                          mp.nstr(z.imag, 20, min_fixed=-5, max_fixed=5))


def arr(name, values):
    return "inline const std::vector<C> %s{%s};" % (name, ", ".join(c(v) for v in values))


out = ["// Generated by tests/oracles/freeze.py (mpmath, 50 digits). Do not edit by hand.",
       "#pragma once", "", "#include <complex>", "#include <vector>", "",
       "namespace oracle {", "", "using C = std::complex<double>;", ""]

p = Params(1.2, 0.5)
out += ["// couplings at q = 1.2, g = 0.5",
        "inline const C couplings_g_tilde = %s;" % c(p.gt),
        "inline const C couplings_xi = %s;" % c(p.xi), ""]

p = Params(1.1, 0.4)
r = shortening(mp.mpc(2, 1), 1, p)
out += ["// shortening roots at x- = 2+i, M = 1, q = 1.1, g = 0.4 (larger modulus first)",
        arr("shortening_roots", r), ""]

p = Params(1.05, 0.6)
xm = mp.mpc(1.3, 0.4)
k = kin(shortening(xm, 2, p)[0], xm, 2, p, 1)
out += ["// central elements and labels at x- = 1.3+0.4i, M = 2, q = 1.05, g = 0.6, gamma = 1",
        "inline const C central_x_plus = %s;" % c(k.xp),
        "inline const C central_U = %s;" % c(k.U),
        "inline const C central_V = %s;" % c(k.V),
        "inline const C central_z = %s;" % c(k.z),
        arr("central_labels", [k.a, k.b, k.c, k.d]), ""]

# closed-form K at a complex parameter point with non-default alpha, alpha~, gamma, gamma_bar
kp = dict(q=mp.mpc(1.3, 0.2), g=mp.mpc(0.7, 0.1), alpha=mp.mpc(0.6, 0.8), alpha_t=mp.mpc(0.9, 0.3),
          gamma=mp.mpc(1.1, 0.3), gamma_bar=mp.mpc(0.8, -0.2))
p = Params(**kp)
xm = mp.mpc(0.8, 0.6)
out.append("// closed-form K: q = 1.3+0.2i, g = 0.7+0.1i, alpha = 0.6+0.8i, alpha~ = 0.9+0.3i,")
out.append("// gamma = 1.1+0.3i, gamma_bar = 0.8-0.2i, x- = 0.8+0.6i")
for M in (2, 3):
    k = kin(shortening(xm, M, p)[0], xm, M, p, p.gamma)
    co = closed(k, p)
    out.append("inline const C kmatrix_M%d_z = %s;" % (M, c(k.z)))
    for key in "ABCDE":
        out.append(arr("kmatrix_M%d_%s" % (M, key), co[key]))
out.append("")

g = mp.mpc(0.5)
xm = mp.mpc(0.8, 0.5)
M = 3
s = xm + 1 / xm + I * M / g
d = mp.sqrt(s * s - 4)
xp0 = max([(s + d) / 2, (s - d) / 2], key=abs)
gam = mp.sqrt(I * (xm - xp0))
rat = rational(xp0, xm, M, g, I, gam, gam)
out += ["// rational limit, M = 3, g = 0.5, alpha = i, x- = 0.8+0.5i, x+ the larger rational root,",
        "// gamma = gamma_bar = sqrt(i (x- - x+))",
        "inline const C rational_x_plus = %s;" % c(xp0),
        "inline const C rational_u = %s;" % c(rat["u"])]
for key in "ABCDE":
    out.append(arr("rational_%s" % key, rat[key]))
out += ["", "}  // namespace oracle"]
print("\n".join(out))
