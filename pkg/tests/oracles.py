"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive and shares no code with the package
internals it checks: different algorithms, same answers.
"""

import itertools
from fractions import Fraction
from math import gcd

import numpy as np


def snf_invariants_via_minors(rows, n_cols):
    """Invariant factors and free rank from gcds of k x k minors (exact)."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return (), n_cols
    m, n = len(rows), n_cols
    a = [[rows[i][j] for j in range(n)] for i in range(m)]
    deltas = [1]
    rank = 0
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                sub = [[a[i][j] for j in ci] for i in ri]
                g = gcd(g, abs(_int_det(sub)))
        if g == 0:
            break
        deltas.append(g)
        rank = k
    factors = tuple(deltas[k] // deltas[k - 1] for k in range(1, rank + 1))
    return tuple(d for d in factors if d > 1), n_cols - rank


def _int_det(m):
    """Integer determinant by fraction-free expansion (small matrices only)."""
    k = len(m)
    if k == 1:
        return m[0][0]
    total = 0
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


def brute_center(G):
    return sorted(z for z in range(G.order)
                  if all(G.mul(z, x) == G.mul(x, z) for x in range(G.order)))


def brute_conjugacy_classes(G):
    classes, seen = [], set()
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({G.mul(G.mul(g, x), G.inv(g)) for g in range(G.order)})
        seen.update(cls)
        classes.append(cls)
    return classes


def brute_subgroup_generated(G, gens):
    elems = {G.identity}
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for g in list(gens) + [G.inv(g) for g in gens]:
                y = G.mul(a, g)
                if y not in elems:
                    elems.add(y)
                    changed = True
    return sorted(elems)


def brute_is_homomorphism(A, B, phi):
    return all(phi[A.mul(x, y)] == B.mul(phi[x], phi[y])
               for x in range(A.order) for y in range(A.order))


def schur_inner(G, f1, f2):
    """Mean over the group of f1 * conj(f2), as a complex number."""
    f1 = np.asarray(f1)
    f2 = np.asarray(f2)
    return complex(np.mean(f1 * np.conj(f2)))


def brute_character_inner(G, chi1, chi2):
    """<chi1, chi2> with chi given on elements."""
    return schur_inner(G, chi1, chi2)


def uniform_measure_weights(n):
    return [Fraction(1, n)] * n


def covariant_rep_partial_maps(mp):
    """Faithful operator model for the crossed product, built from scratch.

    Points are pairs (s, x) indexed p = s*|K| + x.  The basis element
    (r, g) acts as the partial permutation  (s, x) -> (r s, x)  restricted
    to the set where the discrete translate of x equals g, i.e.
    x = act_compact(s^{-1}, g).  Returned as an (n, n) array whose row i
    maps column p to a point index, with -1 meaning "killed".
    """
    R, K = mp.discrete, mp.compact
    nr, nk = R.order, K.order
    n = nr * nk
    rep = np.full((n, n), -1, dtype=np.int64)
    for r in range(nr):
        for g in range(nk):
            i = r * nk + g
            for s in range(nr):
                x = int(mp.alpha[R.inv(s), g])
                rep[i, s * nk + x] = R.mul(r, s) * nk + x
    return rep


def compose_partial_maps(mi, mj):
    """Composition mi after mj of partial maps given as -1-padded arrays."""
    out = np.where(mj >= 0, mi[np.clip(mj, 0, None)], -1)
    return np.where(mj >= 0, out, -1)


def transpose_partial_map(mi, n):
    """Adjoint of the 0/1 matrix of a partial permutation map."""
    t = np.full(n, -1, dtype=np.int64)
    cols = np.nonzero(mi >= 0)[0]
    t[mi[cols]] = cols
    return t
