"""Independent computer-algebra computation of the (3,1) Weyl tensor of
2 du dv + H du^2 + dx^2 + dy^2 with H = x^2, using sympy.

Conventions match the C++ engine:
  R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
  R_{ijkl}  = g_{lm} R^m_{ijk},  Ric_{jk} = R^i_{ijk}
  P = (Ric - R g / (2(n-1))) / (n-2)
  W_{ijkl} = R_{ijkl} - (P_jk g_il + P_il g_jk - P_ik g_jl - P_jl g_ik)
  W^l_{ijk} = g^{lm} W_{ijkm}

Prints every nonzero component at the origin as "l i j k value".
"""
import itertools

import sympy as sp

u, v, x, y = sp.symbols("u v x y")
X = [u, v, x, y]
n = 4
g = sp.Matrix([[x**2, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
gi = g.inv()
R = range(n)

Gam = [[[sp.simplify(sum(gi[k, l] * (sp.diff(g[j, l], X[i]) + sp.diff(g[i, l], X[j]) - sp.diff(g[i, j], X[l]))
                         for l in R) / 2) for j in R] for i in R] for k in R]

Riem = {}
for l, i, j, k in itertools.product(R, R, R, R):
    Riem[l, i, j, k] = sp.simplify(sp.diff(Gam[l][j][k], X[i]) - sp.diff(Gam[l][i][k], X[j])
                                   + sum(Gam[l][i][m] * Gam[m][j][k] - Gam[l][j][m] * Gam[m][i][k] for m in R))
Rdown = {(i, j, k, l): sp.simplify(sum(g[l, m] * Riem[m, i, j, k] for m in R))
         for i, j, k, l in itertools.product(R, R, R, R)}
Ric = sp.Matrix(n, n, lambda j, k: sum(Riem[i, i, j, k] for i in R))
scal = sp.simplify(sum(gi[j, k] * Ric[j, k] for j in R for k in R))
P = (Ric - scal * g / (2 * (n - 1))) / (n - 2)
Wd = {(i, j, k, l): Rdown[i, j, k, l] - (P[j, k] * g[i, l] + P[i, l] * g[j, k] - P[i, k] * g[j, l] - P[j, l] * g[i, k])
      for i, j, k, l in itertools.product(R, R, R, R)}
origin = {u: 0, v: 0, x: 0, y: 0}
for l, i, j, k in itertools.product(R, R, R, R):
    w = sp.nsimplify(sp.simplify(sum(gi[l, m] * Wd[i, j, k, m] for m in R)).subs(origin))
    if w != 0:
        print(l, i, j, k, w)
