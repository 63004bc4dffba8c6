"""The function-algebra crossed product attached to a matched pair.

Basis elements are indexed by (discrete, compact) pairs; writing u_r for the
discrete unitaries and d_g for the compact point indicators, the basis
element r*|K|+g stands for u_r d_g.  All structure maps have 0/1 structure
constants, so products, coproducts, star, antipode, counit and the invariant
state live in exact integer/rational tables; complex coefficient vectors sit
on top of them.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import TOL_AXIOM, TOL_COEFF, TOL_EQ
from .errors import AxiomViolation, NotAMorphism
from .groups import group_from_cayley
from .matched import MatchedPair, trivial_pair


class KacAlgebra:
    """Exact structure tables for the crossed-product function algebra."""

    def __init__(self, mp: MatchedPair):
        self.pair = mp
        R, K = mp.discrete, mp.compact
        nr, nk = R.order, K.order
        self.nr, self.nk = nr, nk
        self.dim = nr * nk
        n = self.dim
        self.gamma_of, self.g_of = np.divmod(np.arange(n, dtype=np.int32), nk)

        A, B = mp.alpha, mp.beta
        CR, CK = R.cayley, K.cayley

        # (u_r d_g)(u_s d_h) = [alpha_{s^-1}(g) = h] u_{rs} d_h
        prod = np.full((n, n), -1, dtype=np.int32)
        for i in range(n):
            r, g = divmod(i, nk)
            for s in range(nr):
                h = A[R.inv(s), g]
                prod[i, s * nk + h] = CR[r, s] * nk + h
        self.prod_index = prod

        # (u_r d_g)* = u_{r^-1} d_{alpha_r(g)}
        idx = np.arange(n)
        r_idx, g_idx = self.gamma_of, self.g_of
        self.star_index = (R.inverse[r_idx] * nk + A[r_idx, g_idx]).astype(np.int32)

        # S(u_r d_g) = u_{beta_g(r)^-1} d_{alpha_r(g)^-1}
        self.antipode_index = (
            R.inverse[B[g_idx, r_idx]] * nk + K.inverse[A[r_idx, g_idx]]
        ).astype(np.int32)

        # coproduct of u_r d_g: sum over g = a b of (u_r d_a) x (u_{beta_a(r)} d_b)
        pairs_for = [[] for _ in range(nk)]
        for a in range(nk):
            for b in range(nk):
                pairs_for[CK[a, b]].append((a, b))
        self.coproduct = []
        for i in range(n):
            r, g = divmod(i, nk)
            self.coproduct.append([(r * nk + a, int(B[a, r]) * nk + b)
                                   for a, b in pairs_for[g]])

        self.counit_vec = (self.g_of == K.identity).astype(np.int64)
        self.haar_fraction = [Fraction(1, nk) if r == R.identity else Fraction(0)
                              for r in self.gamma_of]
        self.haar_vec = np.array([float(x) for x in self.haar_fraction])

    # -- naming -------------------------------------------------------------

    def basis_index(self, r, g):
        return int(r) * self.nk + int(g)

    def basis_label(self, i):
        r, g = divmod(int(i), self.nk)
        return f"u[{self.pair.discrete.labels[r]}]d[{self.pair.compact.labels[g]}]"

    # -- elements -----------------------------------------------------------

    def element(self, coeffs):
        """Element from a {(r, g): coefficient} map."""
        vec = np.zeros(self.dim, dtype=complex)
        for (r, g), c in coeffs.items():
            vec[self.basis_index(r, g)] += c
        return AlgebraElement(self, vec)

    def from_vector(self, vec):
        return AlgebraElement(self, np.asarray(vec, dtype=complex).copy())

    def basis_element(self, r, g):
        vec = np.zeros(self.dim, dtype=complex)
        vec[self.basis_index(r, g)] = 1.0
        return AlgebraElement(self, vec)

    def one(self):
        vec = np.zeros(self.dim, dtype=complex)
        e = self.pair.discrete.identity
        for g in range(self.nk):
            vec[self.basis_index(e, g)] = 1.0
        return AlgebraElement(self, vec)

    def discrete_unitary(self, r):
        """The group unitary u_r = sum_g u_r d_g."""
        vec = np.zeros(self.dim, dtype=complex)
        for g in range(self.nk):
            vec[self.basis_index(r, g)] = 1.0
        return AlgebraElement(self, vec)

    def compact_function(self, values):
        """Embed a function on the compact group: sum_g f(g) u_e d_g."""
        vec = np.zeros(self.dim, dtype=complex)
        e = self.pair.discrete.identity
        for g, v in enumerate(values):
            vec[self.basis_index(e, g)] = v
        return AlgebraElement(self, vec)

    # -- structure maps on vectors -----------------------------------------

    def mul_vec(self, a, b):
        out = np.zeros(self.dim, dtype=complex)
        P = self.prod_index
        ia = np.nonzero(a)[0]
        if len(ia) == 0:
            return out
        sub = P[ia]                      # (|ia|, n)
        valid = sub >= 0
        contrib = a[ia][:, None] * b[None, :]
        np.add.at(out, sub[valid], contrib[valid])
        return out

    def star_vec(self, a):
        out = np.zeros(self.dim, dtype=complex)
        np.add.at(out, self.star_index, np.conj(a))
        return out

    def antipode_vec(self, a):
        out = np.zeros(self.dim, dtype=complex)
        np.add.at(out, self.antipode_index, a)
        return out

    def coproduct_dict(self, a):
        """{(j, k): coefficient} over the doubled basis."""
        out = {}
        for i in np.nonzero(a)[0]:
            c = a[i]
            for jk in self.coproduct[int(i)]:
                out[jk] = out.get(jk, 0.0) + c
        return out

    def counit(self, a):
        return complex(np.dot(self.counit_vec, a))

    def haar(self, a):
        return complex(np.dot(self.haar_vec, a))

    def inner(self, a, b):
        """Invariant-state inner product h(a* b)."""
        return self.haar(self.mul_vec(self.star_vec(a), b))

    def left_mult_matrix(self, a):
        """Matrix of x -> a x in the standard basis."""
        P = self.prod_index
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for i in np.nonzero(a)[0]:
            row = P[int(i)]
            valid = row >= 0
            out[row[valid], np.nonzero(valid)[0]] += a[i]
        return out

    def __repr__(self):
        return f"KacAlgebra({self.pair.name!r}, dim={self.dim})"


class AlgebraElement:
    """A coefficient vector over the standard basis of a KacAlgebra."""

    __array_priority__ = 100  # keep numpy from hijacking scalar products

    def __init__(self, algebra, vec):
        self.algebra = algebra
        self.vec = np.asarray(vec, dtype=complex)

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, self.vec + other.vec)

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, self.vec - other.vec)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.vec)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra,
                                  self.algebra.mul_vec(self.vec, other.vec))
        return AlgebraElement(self.algebra, self.vec * other)

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, scalar * self.vec)

    def star(self):
        return AlgebraElement(self.algebra, self.algebra.star_vec(self.vec))

    def antipode(self):
        return AlgebraElement(self.algebra, self.algebra.antipode_vec(self.vec))

    def haar(self):
        return self.algebra.haar(self.vec)

    def counit(self):
        return self.algebra.counit(self.vec)

    def norm0(self):
        """Invariant-state 2-norm."""
        return float(np.sqrt(max(self.algebra.inner(self.vec, self.vec).real, 0.0)))

    def coeffs(self, tol=TOL_COEFF):
        nk = self.algebra.nk
        return {divmod(int(i), nk): complex(self.vec[i])
                for i in np.nonzero(np.abs(self.vec) > tol)[0]}

    def isclose(self, other, tol=TOL_COEFF):
        self._same(other)
        return bool(np.abs(self.vec - other.vec).max(initial=0.0) <= tol)

    def _same(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __repr__(self):
        terms = [f"{c:.4g}*{self.algebra.basis_label(self.algebra.basis_index(r, g))}"
                 for (r, g), c in sorted(self.coeffs().items())]
        return " + ".join(terms) if terms else "0"


def build_algebra(mp):
    """The crossed-product function algebra of a validated pair."""
    return KacAlgebra(mp)


def plain_function_algebra(K):
    """C(K) with trivial discrete part — the classical baseline."""
    return KacAlgebra(trivial_pair(K))


# ---------------------------------------------------------------------------
# axiom certification


@dataclass
class AxiomCheck:
    name: str
    deviation: float
    witness: object = None


@dataclass
class AxiomReport:
    algebra: KacAlgebra
    checks: list
    tol: float

    @property
    def passed(self):
        return all(c.deviation <= self.tol for c in self.checks)

    def worst(self):
        return max(self.checks, key=lambda c: c.deviation)

    def raise_if_failed(self):
        for c in self.checks:
            if c.deviation > self.tol:
                raise AxiomViolation(c.name, c.deviation, c.witness)

    def lines(self):
        out = []
        for c in self.checks:
            status = "PASS" if c.deviation <= self.tol else "FAIL"
            line = f"{status} {c.name}: deviation {c.deviation:.3e}"
            if c.witness is not None and c.deviation > self.tol:
                line += f" at {c.witness}"
            out.append(line)
        return out


def check_axioms(A, tol=TOL_AXIOM):
    """Certify every structural identity of the built algebra.

    All underlying structure constants are 0/1, so each check is exact
    integer arithmetic; deviations count violating instances.  The report
    never raises — use .raise_if_failed() for the exception contract.
    """
    checks = []
    n = A.dim
    P = A.prod_index
    S = A.antipode_index
    ST = A.star_index
    eps = A.counit_vec
    zero = n                               # absorbing index for padding
    Q = np.full((n + 1, n + 1), zero, dtype=np.int32)
    Q[:n, :n] = np.where(P >= 0, P, zero)

    # associativity of the product
    bad_count, witness = 0, None
    for i in range(n):
        left = Q[Q[i, :n], :n]             # (i j) k
        right = Q[i, Q[:n, :n]]            # i (j k)
        neq = left != right
        if neq.any():
            if witness is None:
                j, k = np.argwhere(neq)[0]
                witness = (A.basis_label(i), A.basis_label(j), A.basis_label(k))
            bad_count += int(neq.sum())
    checks.append(AxiomCheck("product-associativity", float(bad_count), witness))

    # unit element
    one = A.one().vec
    e_dev = 0.0
    for i in range(n):
        b = np.zeros(n, dtype=complex)
        b[i] = 1.0
        e_dev = max(e_dev,
                    float(np.abs(A.mul_vec(one, b) - b).max()),
                    float(np.abs(A.mul_vec(b, one) - b).max()))
    checks.append(AxiomCheck("unit-element", e_dev))

    # star: involutive antihomomorphism
    dev = float((ST[ST] != np.arange(n)).sum())
    checks.append(AxiomCheck("star-involution", dev))
    bad = 0
    for i in range(n):
        for j in range(n):
            m = P[i, j]
            rev = P[ST[j], ST[i]]
            exp = ST[m] if m >= 0 else -1
            if rev != exp:
                bad += 1
    checks.append(AxiomCheck("star-antihomomorphism", float(bad)))

    # coassociativity (multisets of index triples)
    bad_count, witness = 0, None
    for i in range(n):
        left = Counter()
        for j, k in A.coproduct[i]:
            for j1, j2 in A.coproduct[j]:
                left[(j1, j2, k)] += 1
        right = Counter()
        for j, k in A.coproduct[i]:
            for k1, k2 in A.coproduct[k]:
                right[(j, k1, k2)] += 1
        if left != right:
            bad_count += 1
            if witness is None:
                witness = A.basis_label(i)
    checks.append(AxiomCheck("coassociativity", float(bad_count), witness))

    # counit laws
    bad_count, witness = 0, None
    for i in range(n):
        lvec = Counter()
        rvec = Counter()
        for j, k in A.coproduct[i]:
            if eps[j]:
                lvec[k] += 1
            if eps[k]:
                rvec[j] += 1
        if lvec != Counter({i: 1}) or rvec != Counter({i: 1}):
            bad_count += 1
            if witness is None:
                witness = A.basis_label(i)
    checks.append(AxiomCheck("counit-laws", float(bad_count), witness))

    # counit multiplicative
    bad = 0
    for i in range(n):
        row = P[i]
        vals = np.where(row >= 0, eps[np.clip(row, 0, None)], 0)
        if not np.array_equal(vals, eps[i] * eps):
            bad += 1
    checks.append(AxiomCheck("counit-multiplicative", float(bad)))

    # coproduct is a *-homomorphism: multiplicativity on all basis pairs
    bad_count, witness = 0, None
    coproduct = A.coproduct
    for i in range(n):
        di = coproduct[i]
        Pi = P[i]
        for j in range(n):
            target = Counter()
            m = Pi[j]
            if m >= 0:
                for jk in coproduct[m]:
                    target[jk] += 1
            got = Counter()
            dj = coproduct[j]
            for j1, k1 in di:
                Pj1 = P[j1]
                Pk1 = P[k1]
                for j2, k2 in dj:
                    mj = Pj1[j2]
                    if mj < 0:
                        continue
                    mk = Pk1[k2]
                    if mk < 0:
                        continue
                    got[(mj, mk)] += 1
            if got != target:
                bad_count += 1
                if witness is None:
                    witness = (A.basis_label(i), A.basis_label(j))
    checks.append(AxiomCheck("coproduct-multiplicative", float(bad_count), witness))

    # coproduct commutes with star
    bad_count = 0
    for i in range(n):
        lhs = Counter((int(ST[j]), int(ST[k])) for j, k in A.coproduct[i])
        rhs = Counter(A.coproduct[int(ST[i])])
        if lhs != rhs:
            bad_count += 1
    checks.append(AxiomCheck("coproduct-star-compatible", float(bad_count)))

    # antipode laws: convolution inverse of the identity
    bad_count, witness = 0, None
    one_counter = Counter(int(g) for g in np.nonzero(one.real > 0.5)[0])
    for i in range(n):
        left = Counter()
        right = Counter()
        for j, k in A.coproduct[i]:
            m = P[S[j], k]
            if m >= 0:
                left[int(m)] += 1
            m2 = P[j, S[k]]
            if m2 >= 0:
                right[int(m2)] += 1
        target = Counter({g: 1 for g in one_counter}) if eps[i] else Counter()
        if left != target or right != target:
            bad_count += 1
            if witness is None:
                witness = A.basis_label(i)
    checks.append(AxiomCheck("antipode-laws", float(bad_count), witness))

    # antipode squared is the identity; star-compatibility
    checks.append(AxiomCheck("antipode-involutive",
                             float((S[S] != np.arange(n)).sum())))
    checks.append(AxiomCheck("antipode-star-commute",
                             float((ST[S] != S[ST]).sum())))

    # invariant state: two-sided invariance (exact rationals)
    h = A.haar_fraction
    one_support = {int(g) for g in np.nonzero(one.real > 0.5)[0]}
    bad_count, witness = 0, None
    for i in range(n):
        left_vec = Counter()
        right_vec = Counter()
        for j, k in A.coproduct[i]:
            if h[k]:
                left_vec[j] += h[k]
            if h[j]:
                right_vec[k] += h[j]
        target = Counter({g: h[i] for g in one_support}) if h[i] else Counter()
        if +left_vec != +target or +right_vec != +target:
            bad_count += 1
            if witness is None:
                witness = A.basis_label(i)
    checks.append(AxiomCheck("haar-invariance", float(bad_count), witness))

    # invariant state is tracial and positive definite on the basis Gram
    bad = 0
    for i in range(n):
        for j in range(n):
            hij = h[P[i, j]] if P[i, j] >= 0 else Fraction(0)
            hji = h[P[j, i]] if P[j, i] >= 0 else Fraction(0)
            if hij != hji:
                bad += 1
    checks.append(AxiomCheck("haar-trace", float(bad)))

    gram = np.zeros((n, n))
    for i in range(n):
        row = P[ST[i]]
        for j in range(n):
            if row[j] >= 0:
                gram[i, j] = float(h[row[j]])
    expected = np.eye(n) / A.nk
    checks.append(AxiomCheck("haar-positivity",
                             float(np.abs(gram - expected).max())))

    checks.append(AxiomCheck("haar-unital", float(abs(A.haar(one) - 1.0))))
    return AxiomReport(algebra=A, checks=checks, tol=tol)


# ---------------------------------------------------------------------------
# morphisms and quotient spaces


@dataclass
class Morphism:
    """A linear map between algebras given columnwise on basis elements."""

    source: KacAlgebra
    target: KacAlgebra
    matrix: np.ndarray       # (target.dim, source.dim)

    def apply(self, vec):
        return self.matrix @ vec


def validate_morphism(rho, tol=TOL_EQ):
    """Certify unital *-homomorphism property plus coproduct intertwining."""
    A, B = rho.source, rho.target
    M = rho.matrix
    if M.shape != (B.dim, A.dim):
        raise NotAMorphism(f"matrix shape {M.shape} != ({B.dim},{A.dim})")
    if np.abs(M @ A.one().vec - B.one().vec).max() > tol:
        raise NotAMorphism("unit is not preserved")
    if np.abs(B.counit_vec @ M - A.counit_vec).max() > tol:
        raise NotAMorphism("counit is not preserved")
    for i in range(A.dim):
        si = np.zeros(A.dim, dtype=complex)
        si[i] = 1.0
        if np.abs(M @ A.star_vec(si) - B.star_vec(M @ si)).max() > tol:
            raise NotAMorphism(f"star fails at basis {A.basis_label(i)}")
    basis_images = M                      # column i = image of basis i
    for i in range(A.dim):
        for j in range(A.dim):
            m = A.prod_index[i, j]
            lhs = basis_images[:, m] if m >= 0 else np.zeros(B.dim)
            rhs = B.mul_vec(basis_images[:, i], basis_images[:, j])
            if np.abs(lhs - rhs).max() > tol:
                raise NotAMorphism(
                    f"multiplicativity fails at ({A.basis_label(i)}, {A.basis_label(j)})")
    # coproduct intertwining on every basis element
    for i in range(A.dim):
        lhs = np.zeros((B.dim, B.dim), dtype=complex)
        for j, k in A.coproduct[i]:
            lhs += np.outer(basis_images[:, j], basis_images[:, k])
        rhs = np.zeros((B.dim, B.dim), dtype=complex)
        for t, c in _vec_items(basis_images[:, i]):
            for j, k in B.coproduct[t]:
                rhs[j, k] += c
        if np.abs(lhs - rhs).max() > tol:
            raise NotAMorphism(f"coproduct fails at basis {A.basis_label(i)}")
    return True


def _vec_items(vec, tol=TOL_COEFF):
    for i in np.nonzero(np.abs(vec) > tol)[0]:
        yield int(i), complex(vec[i])


def compact_restriction_morphism(A, A0, embed):
    """Restriction along a compact subgroup embedding (discrete sides equal).

    ``embed[g0]`` is the parent index of the subgroup element g0.  Basis
    u_r d_g maps to u_r d_{g} when g lies in the subgroup, else to 0.
    """
    if A.nr != A0.nr:
        raise NotAMorphism("discrete sides differ")
    back = {int(g): g0 for g0, g in enumerate(embed)}
    M = np.zeros((A0.dim, A.dim))
    for i in range(A.dim):
        r, g = divmod(i, A.nk)
        if g in back:
            M[r * A0.nk + back[g], i] = 1.0
    rho = Morphism(source=A, target=A0, matrix=M)
    validate_morphism(rho)
    return rho


def counit_morphism(A):
    """The counit as a morphism onto the one-dimensional algebra."""
    target = KacAlgebra(trivial_pair(group_from_cayley([[0]], labels=["e"])))
    M = A.counit_vec.astype(float)[None, :]
    rho = Morphism(source=A, target=target, matrix=M)
    validate_morphism(rho)
    return rho


def coset_space_dimension(A, rho, tol=TOL_AXIOM):
    """Dimension of {a : (id x rho) of the coproduct of a equals a x unit}."""
    validate_morphism(rho)
    B = rho.target
    n, m = A.dim, B.dim
    T = np.zeros((n * m, n), dtype=complex)
    for i in range(n):
        for j, k in A.coproduct[i]:
            T[:, i] += np.kron(_unit_vec(n, j), rho.matrix[:, k])
        T[:, i] -= np.kron(_unit_vec(n, i), B.one().vec)
    svals = np.linalg.svd(T, compute_uv=False)
    scale = svals.max(initial=1.0)
    return int(np.sum(svals <= max(tol, 1e-12) * max(scale, 1.0)))


def _unit_vec(n, i):
    v = np.zeros(n)
    v[i] = 1.0
    return v


# ---------------------------------------------------------------------------
# embedded copies of the two classical pieces


def group_subalgebra_check(A, tol=TOL_AXIOM):
    """Exact report that the discrete group algebra and the compact function
    algebra both embed with the expected relations."""
    R, K = A.pair.discrete, A.pair.compact
    checks = []

    u = [A.discrete_unitary(r).vec for r in range(R.order)]
    bad = sum(1 for r in range(R.order) for s in range(R.order)
              if np.abs(A.mul_vec(u[r], u[s]) - u[R.mul(r, s)]).max() > tol)
    checks.append(AxiomCheck("discrete-product-embedding", float(bad)))
    bad = sum(1 for r in range(R.order)
              if np.abs(A.star_vec(u[r]) - u[R.inv(r)]).max() > tol)
    checks.append(AxiomCheck("discrete-star-embedding", float(bad)))

    delta = []
    e = R.identity
    for g in range(K.order):
        v = np.zeros(A.dim, dtype=complex)
        v[A.basis_index(e, g)] = 1.0
        delta.append(v)
    bad = 0
    for g in range(K.order):
        for h in range(K.order):
            expect = delta[g] if g == h else np.zeros(A.dim)
            if np.abs(A.mul_vec(delta[g], delta[h]) - expect).max() > tol:
                bad += 1
    checks.append(AxiomCheck("compact-idempotents", float(bad)))

    # covariance: u_r d_h u_r^* = d_{alpha_r(h)}
    bad = 0
    for r in range(R.order):
        for hh in range(K.order):
            lhs = A.mul_vec(A.mul_vec(u[r], delta[hh]), A.star_vec(u[r]))
            if np.abs(lhs - delta[A.pair.alpha[r, hh]]).max() > tol:
                bad += 1
    checks.append(AxiomCheck("covariance-relation", float(bad)))

    # coproduct of a compact indicator stays inside the compact copy
    bad = 0
    for g in range(K.order):
        want = Counter()
        for a in range(K.order):
            b = K.mul(K.inv(a), g)
            want[(A.basis_index(e, a), A.basis_index(e, b))] += 1
        got = Counter(A.coproduct[A.basis_index(e, g)])
        if got != want:
            bad += 1
    checks.append(AxiomCheck("compact-coproduct-form", float(bad)))

    # coproduct of a discrete unitary: sum_a (u_r d_a) x u_{beta_a(r)}
    bad = 0
    for r in range(R.order):
        got = Counter()
        for g in range(K.order):
            for jk in A.coproduct[A.basis_index(r, g)]:
                got[jk] += 1
        want = Counter()
        for a in range(K.order):
            rb = A.pair.beta[a, r]
            for b in range(K.order):
                want[(A.basis_index(r, a), A.basis_index(rb, b))] += 1
        if got != want:
            bad += 1
    checks.append(AxiomCheck("discrete-coproduct-form", float(bad)))

    report = AxiomReport(algebra=A, checks=checks, tol=tol)
    return report


# ---------------------------------------------------------------------------
# deterministic structure dump


def structure_dump(A):
    """Plain-text structure constants, stable across runs, for diffing."""
    lines = [f"# algebra {A.pair.name} dim {A.dim}"]
    for i in range(A.dim):
        lines.append(f"basis {i} {A.basis_label(i)}")
    for i in range(A.dim):
        row = A.prod_index[i]
        terms = [f"{j}:{row[j]}" for j in range(A.dim) if row[j] >= 0]
        lines.append(f"mul {i} " + " ".join(terms))
    lines.append("star " + " ".join(str(int(v)) for v in A.star_index))
    lines.append("antipode " + " ".join(str(int(v)) for v in A.antipode_index))
    for i in range(A.dim):
        pairs = ";".join(f"{j},{k}" for j, k in A.coproduct[i])
        lines.append(f"delta {i} {pairs}")
    lines.append("counit " + " ".join(str(int(v)) for v in A.counit_vec))
    lines.append("haar " + " ".join(str(f) for f in A.haar_fraction))
    return "\n".join(lines) + "\n"
