"""Builds the rational Jordan-decomposition corpus for the parabolic tests.

Each entry is p = g (h0 u0 e0) g^-1 with h0, u0, e0 pairwise commuting,
h0 positive diagonal, u0 unipotent and e0 a rational rotation, and g a
product of parabolic factors. The script checks every defining property
with sympy before writing p and the expected factors.

Usage: python3 jordan_corpus.py > ../data/matrices/jordan_corpus.txt
"""
import sympy as sp


def form(n):
    N = n + 2
    S = sp.zeros(N, N)
    S[0, N - 1] = S[N - 1, 0] = 1
    S[1, N - 2] = S[N - 2, 1] = 1
    for i in range(2, N - 2):
        S[i, i] = 1
    return S


def middle_form(n):
    J = sp.zeros(n, n)
    J[0, n - 1] = J[n - 1, 0] = 1
    for i in range(1, n - 1):
        J[i, i] = 1
    return J


def exp_g1(z, n):
    N = n + 2
    z = sp.Matrix([z])
    J = middle_form(n)
    g = sp.eye(N)
    g[0, 1:N - 1] = z
    g[1:N - 1, N - 1] = -J * z.T
    g[0, N - 1] = -(z * J * z.T)[0] / 2
    return g


def g0(x, M):
    N = M.shape[0] + 2
    g = sp.zeros(N, N)
    g[0, 0] = x
    g[1:N - 1, 1:N - 1] = M
    g[N - 1, N - 1] = 1 / sp.Integer(x)
    return g


def lorentz_boost(n, s):
    """exp of the middle g_beta-type element; here diag(s, I, 1/s) in the middle."""
    M = sp.eye(n)
    M[0, 0] = s
    M[n - 1, n - 1] = 1 / sp.Integer(s) if isinstance(s, int) else 1 / s
    return M


def middle_null_rotation(n, t):
    """exp of t (e_2 -> e_1 in the middle block), preserving J."""
    J = middle_form(n)
    X = sp.zeros(n, n)
    X[0, 1] = t
    X[1, n - 1] = -t
    assert X.T * J + J * X == sp.zeros(n, n)
    return sp.eye(n) + X + X * X / 2


def rotation(N, i, j, c, s):
    R = sp.eye(N)
    R[i, i] = c
    R[j, j] = c
    R[i, j] = -s
    R[j, i] = s
    return R


def check(p, h, u, e, n):
    S = form(n)
    N = n + 2
    for m in (p, h, u, e):
        assert m.T * S * m == S
        assert all(m[i, 0] == 0 for i in range(1, N))
    assert h * u * e == p
    assert h * u == u * h and h * e == e * h and u * e == e * u
    assert (u - sp.eye(N)) ** N == sp.zeros(N, N)
    assert h.is_diagonalizable()
    for ev in h.eigenvals():
        assert ev.is_real and ev > 0
    for ev in e.eigenvals():
        assert sp.simplify(sp.Abs(ev) - 1) == 0
    assert e.is_diagonalizable()


def emit(name, n, p, h, u, e):
    print(f"case {name} {n}")
    for label, m in (("p", p), ("h", h), ("u", u), ("e", e)):
        print(label)
        for i in range(m.shape[0]):
            print(" ".join(str(m[i, j]) for j in range(m.shape[1])))
    print("end")


def main():
    half = sp.Rational(1, 2)
    entries = []
    for n in (4, 5):
        N = n + 2
        hdiag = [2, 2] + [1] * (n - 2) + [half, half]
        h0 = sp.diag(*hdiag)
        u0 = exp_g1([1] + [0] * (n - 1), n)
        e0 = rotation(N, 2, 3, sp.Rational(3, 5), sp.Rational(4, 5))
        I = sp.eye(N)
        conj = [
            ("plain", I),
            ("g1", exp_g1([0, 1] + [0] * (n - 3) + [sp.Rational(1, 3)], n)),
            ("boost", g0(3, lorentz_boost(n, sp.Rational(1, 2)))),
            ("nullrot", g0(1, middle_null_rotation(n, sp.Rational(2, 3))) * exp_g1([0, 0, -1] + [0] * (n - 3), n)),
        ]
        for cname, g in conj:
            gi = g.inv()
            variants = [
                ("hue", h0, u0, e0),
                ("he", h0, I, e0),
                ("hu", h0, u0, I),
                ("ue", I, u0, e0),
            ]
            for vname, h, u, e in variants:
                H, U, E = g * h * gi, g * u * gi, g * e * gi
                P = H * U * E
                check(P, H, U, E, n)
                entries.append((f"{vname}-{cname}", n, P, H, U, E))
        # Pure unipotent with a longer Jordan chain: exp(g1) exp(g_beta-type).
        U = g0(1, middle_null_rotation(n, 1)) * exp_g1([0, 1] + [0] * (n - 2), n)
        check(U, I, U, I, n)
        entries.append(("unipotent-chain", n, U, I, U, I))
    for name, n, p, h, u, e in entries:
        emit(name, n, p, h, u, e)


if __name__ == "__main__":
    main()
