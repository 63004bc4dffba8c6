"""Matched pairs of finite groups: exact factorizations and their actions.

A matched pair couples a "discrete" group (call it R here) and a "compact"
group (call it K) through two action tables
    act_on_compact[r, k]   (left action of R on the set of K)
    act_on_discrete[k, r]  (right action of K on the set of R)
subject to the twisted compatibility laws validated on construction.  Exact
factorizations of an ambient group give one canonical example; recipes that
twist one side by a crossed homomorphism give more.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotCrossedHom, NotMatched, ValidationError
from .groups import FiniteGroup, group_from_cayley

# index convention throughout: r, s, t name discrete elements; g, h, k compact


class MatchedPair:
    """Two groups plus mutually twisted action tables, fully validated."""

    def __init__(self, discrete, compact, alpha, beta, name=None, validate=True):
        self.discrete = discrete
        self.compact = compact
        self.alpha = np.ascontiguousarray(alpha, dtype=np.int32)
        self.beta = np.ascontiguousarray(beta, dtype=np.int32)
        self.name = name or f"pair({discrete.order}x{compact.order})"
        nr, nk = discrete.order, compact.order
        if self.alpha.shape != (nr, nk):
            raise ValidationError("alpha-shape",
                                  f"{self.alpha.shape} != ({nr},{nk})")
        if self.beta.shape != (nk, nr):
            raise ValidationError("beta-shape",
                                  f"{self.beta.shape} != ({nk},{nr})")
        self.alpha.flags.writeable = False
        self.beta.flags.writeable = False
        if validate:
            self.validate()

    # -- structural checks --------------------------------------------------

    def validate(self):
        R, K = self.discrete, self.compact
        A, B = self.alpha, self.beta
        CR, CK = R.cayley, K.cayley
        nr, nk = R.order, K.order

        for r in range(nr):
            if len(np.unique(A[r])) != nk:
                raise ValidationError("alpha-bijection", f"row r={r}")
        for g in range(nk):
            if len(np.unique(B[g])) != nr:
                raise ValidationError("beta-bijection", f"row g={g}")
        if not np.array_equal(A[R.identity], np.arange(nk)):
            raise ValidationError("alpha-identity", "identity of R must act trivially")
        if not np.array_equal(B[K.identity], np.arange(nr)):
            raise ValidationError("beta-identity", "identity of K must act trivially")
        if not np.array_equal(A[:, K.identity], np.full(nr, K.identity)):
            raise ValidationError("alpha-unit", "actions must fix the unit of K")
        if not np.array_equal(B[:, R.identity], np.full(nk, R.identity)):
            raise ValidationError("beta-unit", "actions must fix the unit of R")
        for r in range(nr):
            if not np.array_equal(A[CR[r]], A[r][A]):
                s = next(ss for ss in range(nr)
                         if not np.array_equal(A[CR[r, ss]], A[r][A[ss]]))
                raise ValidationError("alpha-action", f"(r,s)=({r},{s})")
        for g in range(nk):
            lhs = B[CK[g]]                      # [h, r] -> beta_{gh}(r)
            rhs = B[np.arange(nk)[:, None], B[g][None, :]]
            if not np.array_equal(lhs, rhs):
                h = next(hh for hh in range(nk)
                         if not np.array_equal(lhs[hh], rhs[hh]))
                raise ValidationError("beta-action", f"(g,h)=({g},{h})")
        for r in range(nr):
            lhs = A[r][CK]                      # [g, h] -> alpha_r(gh)
            rhs = CK[A[r][:, None], A[B[:, r], :]]
            if not np.array_equal(lhs, rhs):
                g, h = np.argwhere(lhs != rhs)[0]
                raise ValidationError("product-compat-compact",
                                      f"(r,g,h)=({r},{g},{h})")
        for g in range(nk):
            lhs = B[g][CR]                      # [r, s] -> beta_g(rs)
            rhs = CR[B[A[:, g]].T, B[g][None, :]]
            if not np.array_equal(lhs, rhs):
                r, s = np.argwhere(lhs != rhs)[0]
                raise ValidationError("product-compat-discrete",
                                      f"(g,r,s)=({g},{r},{s})")
        return True

    # -- conveniences -------------------------------------------------------

    @property
    def alpha_trivial(self):
        return np.array_equal(self.alpha,
                              np.tile(np.arange(self.compact.order),
                                      (self.discrete.order, 1)))

    @property
    def beta_trivial(self):
        return np.array_equal(self.beta,
                              np.tile(np.arange(self.discrete.order),
                                      (self.compact.order, 1)))

    def act_compact(self, r, g):
        """alpha_r(g)."""
        return int(self.alpha[r, g])

    def act_discrete(self, g, r):
        """beta_g(r)."""
        return int(self.beta[g, r])

    def stabilizer_in_compact(self, r):
        """{g : beta_g(r) = r}."""
        return [g for g in range(self.compact.order) if self.beta[g, r] == r]

    def __repr__(self):
        return (f"MatchedPair({self.name!r}, discrete={self.discrete.order}, "
                f"compact={self.compact.order})")


# ---------------------------------------------------------------------------
# exact factorizations


def derive_actions(H, discrete_elements, compact_elements, name=None):
    """Actions from an exact factorization H = K R with K ∩ R = {e}.

    ``discrete_elements`` and ``compact_elements`` are subgroup element lists
    inside H.  For r in R and g in K the product r g factors uniquely as
    g' r'; the tables record g' and r'.  Raises NotMatched when the counting
    or uniqueness fails.
    """
    Rset = sorted(int(x) for x in discrete_elements)
    Kset = sorted(int(x) for x in compact_elements)
    R, _ = H.subgroup(Rset)
    K, _ = H.subgroup(Kset)
    if len(Rset) * len(Kset) != H.order:
        raise NotMatched(f"|R| |K| = {len(Rset) * len(Kset)} != |H| = {H.order}")
    inter = set(Rset) & set(Kset)
    if inter != {H.identity}:
        raise NotMatched(f"subgroups intersect in {sorted(inter)}")
    factor = {}
    for gi, g in enumerate(Kset):
        for ri, r in enumerate(Rset):
            h = H.mul(g, r)
            if h in factor:
                raise NotMatched(f"element {h} factors twice as K*R")
            factor[h] = (gi, ri)
    if len(factor) != H.order:
        raise NotMatched("K*R does not exhaust the ambient group")
    nr, nk = len(Rset), len(Kset)
    alpha = np.empty((nr, nk), dtype=np.int32)
    beta = np.empty((nk, nr), dtype=np.int32)
    for ri, r in enumerate(Rset):
        for gi, g in enumerate(Kset):
            gp, rp = factor[H.mul(r, g)]
            alpha[ri, gi] = gp
            beta[gi, ri] = rp
    return MatchedPair(R, K, alpha, beta, name=name)


def zappa_szep(mp, name=None):
    """The doubled group on pairs (r, g), where (r, g) stands for g r.

    Law: (r,g)(s,h) = (beta_h(r) s, g alpha_r(h)).  Index of (r,g) is
    r * |K| + g.  Construction revalidates the group axioms, which certifies
    the pair relations a second time.
    """
    R, K = mp.discrete, mp.compact
    nr, nk = R.order, K.order
    r_idx, g_idx = np.divmod(np.arange(nr * nk, dtype=np.int64), nk)
    A, B = mp.alpha, mp.beta
    # first coordinate: beta_h(r) s ; second: g alpha_r(h)
    bh_r = B[g_idx[None, :], r_idx[:, None]]          # [p, q] -> beta_{h_q}(r_p)
    first = R.cayley[bh_r, r_idx[None, :]]
    second = K.cayley[g_idx[:, None], A[r_idx[:, None], g_idx[None, :]]]
    table = first.astype(np.int64) * nk + second
    labels = [f"{K.labels[g]}*{R.labels[r]}" for r, g in zip(r_idx, g_idx)]
    G = group_from_cayley(table, labels=labels)
    G.pair_shape = (nr, nk)
    return G


def doubled_subgroup_embeddings(mp):
    """Indices of the canonical copies of R ((r,e)) and K ((e,g)) inside
    the doubled group."""
    nk = mp.compact.order
    r_part = [r * nk + mp.compact.identity for r in range(mp.discrete.order)]
    k_part = [mp.discrete.identity * nk + g for g in range(nk)]
    return r_part, k_part


# ---------------------------------------------------------------------------
# direct constructions


def matched_pair_from_compact_action(R, K, alpha, name=None):
    """Pair with trivial discrete-side action; alpha must be by automorphisms."""
    nr, nk = R.order, K.order
    beta = np.tile(np.arange(nr, dtype=np.int32), (nk, 1))
    return MatchedPair(R, K, alpha, beta, name=name)


def matched_pair_from_discrete_action(R, K, beta, name=None):
    """Pair with trivial compact-side action; beta must be by automorphisms."""
    nr, nk = R.order, K.order
    alpha = np.tile(np.arange(nk, dtype=np.int32), (nr, 1))
    return MatchedPair(R, K, alpha, beta, name=name)


def trivial_pair(K, name=None):
    """Discrete side trivial: plain function algebra of K downstream."""
    R = group_from_cayley([[0]], labels=["e"])
    return matched_pair_from_compact_action(
        R, K, np.arange(K.order, dtype=np.int32)[None, :],
        name=name or f"plain({K.order})")


def beta_kernel_elements(mp):
    """Compact elements acting trivially on the discrete side (a subgroup)."""
    nr = mp.discrete.order
    ident = np.arange(nr)
    return [g for g in range(mp.compact.order)
            if np.array_equal(mp.beta[g], ident)]


def compact_subpair(mp, subset_elements, name=None):
    """Restrict the pair to a compact subgroup that the discrete action
    preserves.  Returns the restricted pair and the embedding index list."""
    sub, embed = mp.compact.subgroup(subset_elements)
    embed = list(embed)
    back = {g: i for i, g in enumerate(embed)}
    nr, nk0 = mp.discrete.order, sub.order
    alpha0 = np.zeros((nr, nk0), dtype=np.int32)
    for r in range(nr):
        for i, g in enumerate(embed):
            img = int(mp.alpha[r, g])
            if img not in back:
                raise NotMatched(
                    f"discrete action does not preserve the subgroup: "
                    f"alpha[{r}] moves element {g} outside")
            alpha0[r, i] = back[img]
    beta0 = np.stack([mp.beta[g] for g in embed]).astype(np.int32)
    restricted = MatchedPair(mp.discrete, sub, alpha0, beta0,
                             name=name or f"{mp.name}|sub{nk0}")
    return restricted, embed


# ---------------------------------------------------------------------------
# orbits and fixed subgroups


@dataclass
class OrbitSpace:
    pair: MatchedPair
    orbits: list          # sorted element lists, ordered by min element
    orbit_of: np.ndarray  # discrete index -> orbit index

    def orbit_index_of(self, r):
        return int(self.orbit_of[r])


def orbits_fixed_sets(mp):
    """Orbits of the compact action on the discrete side, plus both fixed
    subgroups (as (FiniteGroup, parent element list))."""
    R, K = mp.discrete, mp.compact
    nr, nk = R.order, K.order
    seen = np.zeros(nr, dtype=bool)
    orbits = []
    for r in range(nr):
        if seen[r]:
            continue
        orb = sorted(int(v) for v in np.unique(mp.beta[:, r]))
        # orbit closure: beta is a right action, so the column already
        # gives the full orbit of r
        for s in orb:
            seen[s] = True
        orbits.append(orb)
    orbit_of = np.empty(nr, dtype=np.int32)
    for oi, orb in enumerate(orbits):
        for s in orb:
            orbit_of[s] = oi
    space = OrbitSpace(pair=mp, orbits=orbits, orbit_of=orbit_of)
    fixed_r = [r for r in range(nr) if np.all(mp.beta[:, r] == r)]
    fixed_k = [g for g in range(nk) if np.all(mp.alpha[:, g] == g)]
    sub_r = R.subgroup(fixed_r)
    sub_k = K.subgroup(fixed_k)
    return space, sub_r, sub_k


def burnside_orbit_counts(mp, space):
    """Average number of fixed points per orbit; exactly 1 for every orbit."""
    K = mp.compact
    out = []
    for orb in space.orbits:
        total = sum(1 for g in range(K.order) for r in orb if mp.beta[g, r] == r)
        out.append(Fraction(total, K.order))
    return out


# ---------------------------------------------------------------------------
# indicator matrices


@dataclass
class MagicUnitary:
    pair: MatchedPair
    orbit: tuple
    sets: dict            # (r, s) -> frozenset of compact indices


def magic_unitary(mp, orbit):
    """Partition-of-unity matrix over one orbit: entry (r,s) collects the
    compact elements moving r to s."""
    orbit = tuple(int(v) for v in orbit)
    nk = mp.compact.order
    sets = {}
    for r in orbit:
        for s in orbit:
            sets[(r, s)] = frozenset(
                g for g in range(nk) if mp.beta[g, r] == s)
    return MagicUnitary(pair=mp, orbit=orbit, sets=sets)


def magic_relations_report(mu):
    """Exact check of the five structural relations of an indicator matrix.

    Returns a list of (relation-name, ok, witness) triples; every check is
    set arithmetic, no floats involved.
    """
    mp, orbit, sets = mu.pair, mu.orbit, mu.sets
    K = mp.compact
    full = frozenset(range(K.order))
    out = []

    def record(name, ok, witness=None):
        out.append((name, bool(ok), witness))

    ok, wit = True, None
    for r in orbit:
        for s1 in orbit:
            for s2 in orbit:
                if s1 < s2 and sets[(r, s1)] & sets[(r, s2)]:
                    ok, wit = False, (r, s1, s2)
    record("row-orthogonality", ok, wit)

    ok, wit = True, None
    for s in orbit:
        for r1 in orbit:
            for r2 in orbit:
                if r1 < r2 and sets[(r1, s)] & sets[(r2, s)]:
                    ok, wit = False, (r1, r2, s)
    record("column-orthogonality", ok, wit)

    ok, wit = True, None
    for r in orbit:
        union = frozenset().union(*(sets[(r, s)] for s in orbit))
        if union != full:
            ok, wit = False, r
    record("row-partition", ok, wit)

    ok, wit = True, None
    for s in orbit:
        union = frozenset().union(*(sets[(r, s)] for r in orbit))
        if union != full:
            ok, wit = False, s
    record("column-partition", ok, wit)

    # coproduct compatibility inside the orbit: membership of a product ab
    # in entry (s,r) splits along the intermediate point beta_a(s)
    ok, wit = True, None
    for s in orbit:
        for r in orbit:
            target = sets[(s, r)]
            for a in range(K.order):
                t = int(mp.beta[a, s])
                for b in range(K.order):
                    lhs = K.mul(a, b) in target
                    rhs = (t in orbit) and (a in sets[(s, t)]) and (b in sets[(t, r)])
                    if lhs != rhs:
                        ok, wit = False, (s, r, a, b)
    record("coproduct-splitting", ok, wit)
    return out


@dataclass
class BSetTable:
    pair: MatchedPair
    sets: dict            # (r, s) over discrete x discrete -> frozenset


def b_sets(mp):
    """For each (r, s): compact elements g with alpha_s(g) stabilizing r and
    g stabilizing s.  These index the character sums in the closed fusion
    formula."""
    nr, nk = mp.discrete.order, mp.compact.order
    sets = {}
    for r in range(nr):
        for s in range(nr):
            sets[(r, s)] = frozenset(
                g for g in range(nk)
                if mp.beta[mp.alpha[s, g], r] == r and mp.beta[g, s] == s)
    return BSetTable(pair=mp, sets=sets)


# ---------------------------------------------------------------------------
# crossed-homomorphism deformations


def _check_chi_compact_to_discrete(mp0, chi):
    """chi : K -> R with chi(gh) = chi(g) chi(alpha_{chi(g)^-1}(h))."""
    R, K, A = mp0.discrete, mp0.compact, mp0.alpha
    chi = np.ascontiguousarray(chi, dtype=np.int32)
    if chi.shape != (K.order,):
        raise NotCrossedHom(f"chi has shape {chi.shape}, expected ({K.order},)")
    if chi[K.identity] != R.identity:
        raise NotCrossedHom("chi must send the unit to the unit")
    for g in range(K.order):
        cg_inv = R.inv(chi[g])
        for h in range(K.order):
            lhs = chi[K.mul(g, h)]
            rhs = R.mul(chi[g], chi[A[cg_inv, h]])
            if lhs != rhs:
                raise NotCrossedHom(f"twisted multiplicativity fails at (g,h)=({g},{h})")
    return chi


def deform_by_chi_G(mp0, chi, name=None):
    """Twist the compact group law by a crossed homomorphism into the
    discrete side.  Requires the base pair to have trivial discrete-side
    action.  Element indices are reused; only tables change."""
    if not mp0.beta_trivial:
        raise NotCrossedHom("base pair must have trivial discrete-side action")
    R, K, A = mp0.discrete, mp0.compact, mp0.alpha
    chi = _check_chi_compact_to_discrete(mp0, chi)
    nk = K.order
    g_idx = np.arange(nk, dtype=np.int32)
    # g*h = g alpha_{chi(g)}(h)
    twisted = K.cayley[g_idx[:, None], A[chi[g_idx][:, None], g_idx[None, :]]]
    K_new = group_from_cayley(twisted, labels=K.labels)
    # beta'_g(r) = chi(alpha_r(g))^-1 r chi(g)
    beta_new = np.empty((nk, R.order), dtype=np.int32)
    for g in range(nk):
        for r in range(R.order):
            beta_new[g, r] = R.mul(R.mul(R.inv(chi[A[r, g]]), r), chi[g])
    return MatchedPair(R, K_new, A, beta_new,
                       name=name or f"{mp0.name}-twist-compact")


def _check_chi_discrete_to_compact(mp0, chi):
    """chi : R -> K with chi(rs) = chi(beta_{chi(s)^-1}(r)) chi(s)."""
    R, K, B = mp0.discrete, mp0.compact, mp0.beta
    chi = np.ascontiguousarray(chi, dtype=np.int32)
    if chi.shape != (R.order,):
        raise NotCrossedHom(f"chi has shape {chi.shape}, expected ({R.order},)")
    if chi[R.identity] != K.identity:
        raise NotCrossedHom("chi must send the unit to the unit")
    for r in range(R.order):
        for s in range(R.order):
            cs_inv = K.inv(chi[s])
            lhs = chi[R.mul(r, s)]
            rhs = K.mul(chi[B[cs_inv, r]], chi[s])
            if lhs != rhs:
                raise NotCrossedHom(f"twisted multiplicativity fails at (r,s)=({r},{s})")
    return chi


def deform_by_chi_Gamma(mp0, chi, name=None):
    """Twist the discrete group law by a crossed homomorphism into the
    compact side.  Requires the base pair to have trivial compact-side
    action.  Element indices are reused; only tables change."""
    if not mp0.alpha_trivial:
        raise NotCrossedHom("base pair must have trivial compact-side action")
    R, K, B = mp0.discrete, mp0.compact, mp0.beta
    chi = _check_chi_discrete_to_compact(mp0, chi)
    nr = R.order
    r_idx = np.arange(nr, dtype=np.int32)
    # r*s = beta_{chi(s)}(r) s
    twisted = R.cayley[B[chi[r_idx][None, :], r_idx[:, None]], r_idx[None, :]]
    R_new = group_from_cayley(twisted, labels=R.labels)
    # alpha'_r(g) = chi(r) g chi(beta_g(r))^-1
    alpha_new = np.empty((nr, K.order), dtype=np.int32)
    for r in range(nr):
        for g in range(K.order):
            alpha_new[r, g] = K.mul(K.mul(chi[r], g), K.inv(chi[B[g, r]]))
    return MatchedPair(R_new, K, alpha_new, B,
                       name=name or f"{mp0.name}-twist-discrete")
