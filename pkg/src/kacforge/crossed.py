"""Crossed products by finite actions on fusion data.

A fusion ring stores labels, duals, dimensions and multiplicities; a ring
action is a fusion-preserving permutation family; the crossed ring grades
labels by the acting group and twists multiplication with the action.  On
top sit finitely supported dual-side elements with the block Fourier
transform into the function algebra, the weighted coefficient ("Sobolev-0")
norm, a two-route check of the graded decomposition of the transform, and a
sampling harness for polynomial operator-norm bounds along a length
function.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_SEED
from .errors import (ActionNotCompatible, IdentityViolated, NonIntegral,
                     OrbitInfinite, TruncationOverflow, ValidationError)
from .groups import (character_table, direct_product, dual_group,
                     is_isomorphic_small, matrix_irreps, rng_from)
from .hopf import build_algebra, plain_function_algebra
from .library import pair_conjugation
from .reps import build_candidates, enumerate_irreps, invariant_groups


# ---------------------------------------------------------------------------
# fusion rings


class FusionRing:
    """Finite (or truncated) fusion data over integer-indexed labels."""

    def __init__(self, labels, unit, dual, dims, mults, truncated=False,
                 name=None, validate=True):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.unit = int(unit)
        self.dual = np.asarray(dual, dtype=np.int64)
        self.dims = np.asarray(dims, dtype=float)
        self.mults = dict(mults)          # (x, y, z) -> positive integer
        self.truncated = truncated
        self.name = name or f"ring({self.n})"
        if validate:
            self._validate_basic()

    def _validate_basic(self):
        n = self.n
        if not (0 <= self.unit < n):
            raise ValidationError("ring-unit", "unit label out of range")
        if sorted(self.dual) != list(range(n)):
            raise ValidationError("ring-dual", "dual is not an involution base")
        if not np.array_equal(self.dual[self.dual], np.arange(n)):
            raise ValidationError("ring-dual", "dual is not an involution")
        if (self.dims <= 0).any():
            raise ValidationError("ring-dim", "dimensions must be positive")
        for x in range(n):
            for z in range(n):
                want = 1 if x == z else 0
                if self.N(x, self.unit, z) != want or \
                        self.N(self.unit, x, z) != want:
                    raise ValidationError("ring-unit-law",
                                          f"unit fusion fails at ({x},{z})")
            for y in range(n):
                want = 1 if y == self.dual[x] else 0
                if self.N(x, y, self.unit) != want:
                    raise ValidationError(
                        "ring-dual-law", f"dual pairing fails at ({x},{y})")

    def N(self, x, y, z):
        return self.mults.get((int(x), int(y), int(z)), 0)

    def fuse(self, x, y, allow_truncation=False):
        """{z: multiplicity} of the product of labels x and y."""
        out = {z: m for (a, b, z), m in self.mults.items()
               if a == x and b == y}
        if self.truncated:
            dim_total = sum(m * self.dims[z] for z, m in out.items())
            if abs(dim_total - self.dims[x] * self.dims[y]) > 1e-6:
                if not allow_truncation:
                    raise TruncationOverflow(
                        f"product of {self.labels[x]} and {self.labels[y]} "
                        f"leaves the cutoff window")
        return out

    def label_index(self, label):
        return self.labels.index(label)

    def __repr__(self):
        return f"FusionRing({self.name!r}, n={self.n})"


def check_fusion_ring(ring, sample=None, seed=DEFAULT_SEED):
    """Associativity, Frobenius symmetry and dimension multiplicativity.

    Returns a dict of named deviations (0.0 when exact).  For truncated
    rings the dimension law is only applied where no output overflows.
    """
    n = ring.n
    quads = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    if sample is not None and len(quads) > sample:
        rng = rng_from(seed, 6)
        keep = rng.choice(len(quads), size=sample, replace=False)
        quads = [quads[int(i)] for i in sorted(keep)]
    assoc_bad = 0
    skipped = 0
    for a, b, c in quads:
        if ring.truncated:
            # both groupings must stay inside the cutoff window, otherwise
            # the two sides lose different parts and the comparison is void
            try:
                left_mid = ring.fuse(a, b)
                right_mid = ring.fuse(b, c)
                for w in left_mid:
                    ring.fuse(w, c)
                for w in right_mid:
                    ring.fuse(a, w)
            except TruncationOverflow:
                skipped += 1
                continue
        for d in range(n):
            left = sum(ring.N(a, b, w) * ring.N(w, c, d) for w in range(n))
            right = sum(ring.N(b, c, w) * ring.N(a, w, d) for w in range(n))
            if left != right:
                assoc_bad += 1
    frob_bad = 0
    for a, b, c in quads:
        if ring.N(a, b, c) != ring.N(c, ring.dual[b], a):
            frob_bad += 1
    dim_dev = 0.0
    if not ring.truncated:
        for x in range(n):
            for y in range(n):
                total = sum(ring.N(x, y, z) * ring.dims[z] for z in range(n))
                dim_dev = max(dim_dev,
                              abs(total - ring.dims[x] * ring.dims[y]))
    return {"associativity": float(assoc_bad), "frobenius": float(frob_bad),
            "dimension-homomorphism": dim_dev,
            "associativity-skipped": float(skipped)}


def irrep_fusion_ring(G, seed=DEFAULT_SEED, tol=1e-6):
    """Fusion of the irreducible characters of a finite group (exact
    multiplicities from character inner products)."""
    table = character_table(G, seed=seed)
    k = table.n_irreps
    chars = np.stack([table.char_on_elements(i) for i in range(k)])
    dims = [int(round(table.dims[i].real)) for i in range(k)]
    unit = 0                       # trivial character is pinned to row 0
    dual = np.zeros(k, dtype=np.int64)
    for x in range(k):
        target = np.conj(chars[x])
        hits = [y for y in range(k) if np.abs(chars[y] - target).max() < tol]
        if len(hits) != 1:
            raise ValidationError("ring-dual", f"conjugate of row {x} unclear")
        dual[x] = hits[0]
    mults = {}
    for x in range(k):
        for y in range(k):
            prod = chars[x] * chars[y]
            for z in range(k):
                val = complex(np.mean(prod * np.conj(chars[z])))
                m = int(round(val.real))
                if abs(val - m) > tol:
                    raise NonIntegral(f"multiplicity ({x},{y},{z}) = {val}")
                if m:
                    mults[(x, y, z)] = m
    return FusionRing(labels=[f"x{i}" for i in range(k)], unit=unit,
                      dual=dual, dims=dims, mults=mults,
                      name=f"irr({G.order})")


def element_fusion_ring(G):
    """Group elements as labels with the group law as fusion (the dual-side
    picture of a finite group)."""
    n = G.order
    mults = {(x, y, int(G.cayley[x, y])): 1
             for x in range(n) for y in range(n)}
    return FusionRing(labels=list(G.labels), unit=G.identity,
                      dual=G.inverse.astype(np.int64), dims=[1.0] * n,
                      mults=mults, name=f"elements({G.order})")


def free_orthogonal_ring(N, cutoff):
    """Chebyshev-type fusion on labels 0..cutoff with dimension recursion
    d_{k+1} = N d_k - d_{k-1} (exact integers); marked truncated."""
    if N < 2:
        raise ValidationError("free-ring", "parameter must be >= 2")
    if cutoff < 1:
        raise ValidationError("free-ring", "cutoff must be >= 1")
    dims = [1, N]
    while len(dims) <= cutoff:
        dims.append(N * dims[-1] - dims[-2])
    mults = {}
    for j in range(cutoff + 1):
        for k in range(cutoff + 1):
            for m in range(abs(j - k), min(j + k, cutoff) + 1, 2):
                mults[(j, k, m)] = 1
    return FusionRing(labels=list(range(cutoff + 1)), unit=0,
                      dual=np.arange(cutoff + 1), dims=dims[:cutoff + 1],
                      mults=mults, truncated=True,
                      name=f"free-orthogonal(N={N},cutoff={cutoff})")


# ---------------------------------------------------------------------------
# actions and crossed rings


@dataclass
class RingAction:
    group: object                  # FiniteGroup
    perms: np.ndarray              # (|group|, ring.n) label permutations

    def act(self, g, x):
        return int(self.perms[g, x])


def validate_ring_action(ring, action):
    G = action.group
    P = np.asarray(action.perms, dtype=np.int64)
    if P.shape != (G.order, ring.n):
        raise ActionNotCompatible(f"permutation table shape {P.shape}")
    if not np.array_equal(P[G.identity], np.arange(ring.n)):
        raise ActionNotCompatible("identity must act trivially")
    for g in range(G.order):
        row = P[g]
        if sorted(row) != list(range(ring.n)):
            raise ActionNotCompatible(f"row {g} is not a permutation")
        if row[ring.unit] != ring.unit:
            raise ActionNotCompatible(f"row {g} moves the unit")
        if not np.array_equal(ring.dual[row], row[ring.dual]):
            raise ActionNotCompatible(f"row {g} breaks the dual")
        if np.abs(ring.dims[row] - ring.dims).max() > 1e-9:
            raise ActionNotCompatible(f"row {g} changes dimensions")
        for (x, y, z), m in ring.mults.items():
            if ring.N(row[x], row[y], row[z]) != m:
                raise ActionNotCompatible(
                    f"row {g} breaks fusion at ({x},{y},{z})")
    for g in range(G.order):
        for h in range(G.order):
            if not np.array_equal(P[G.mul(g, h)], P[g][P[h]]):
                raise ActionNotCompatible(f"not a homomorphism at ({g},{h})")
    return True


class CrossedFusionRing(FusionRing):
    """Labels (group element, base label) with action-twisted fusion."""

    def __init__(self, base, action, name=None):
        validate_ring_action(base, action)
        self.base = base
        self.action = action
        G = action.group
        pairs = [(g, x) for g in range(G.order) for x in range(base.n)]
        index = {p: i for i, p in enumerate(pairs)}
        self.pairs = pairs
        self.pair_index = index
        labels = [f"{G.labels[g]}.{base.labels[x]}" for g, x in pairs]
        dual = np.zeros(len(pairs), dtype=np.int64)
        for i, (g, x) in enumerate(pairs):
            gi = G.inv(g)
            dual[i] = index[(gi, action.act(g, int(base.dual[x])))]
        dims = [base.dims[x] for _, x in pairs]
        mults = {}
        for i, (r, x) in enumerate(pairs):
            for j, (s, y) in enumerate(pairs):
                t = G.mul(r, s)
                moved = action.act(G.inv(s), x)
                for z in range(base.n):
                    m = base.N(moved, y, z)
                    if m:
                        mults[(i, j, index[(t, z)])] = m
        super().__init__(labels=labels, unit=index[(G.identity, base.unit)],
                         dual=dual, dims=dims, mults=mults,
                         truncated=base.truncated,
                         name=name or f"crossed[{base.name}]")


def crossed_ring(base, action, name=None):
    return CrossedFusionRing(base, action, name=name)


def action_from_pair(mp, ring=None, seed=DEFAULT_SEED, tol=1e-6):
    """The discrete side of a crossed pair permuting compact irrep labels
    (matched through characters composed with the action)."""
    if not mp.beta_trivial:
        raise ActionNotCompatible(
            "only pairs with trivial discrete-side action are graded rings")
    K, R = mp.compact, mp.discrete
    if ring is None:
        ring = irrep_fusion_ring(K, seed=seed)
    table = character_table(K, seed=seed)
    chars = np.stack([table.char_on_elements(i)
                      for i in range(table.n_irreps)])
    perms = np.zeros((R.order, ring.n), dtype=np.int64)
    for r in range(R.order):
        row = mp.alpha[R.inv(r)]
        for x in range(ring.n):
            moved = chars[x][row]
            hits = [y for y in range(ring.n)
                    if np.abs(chars[y] - moved).max() < tol]
            if len(hits) != 1:
                raise ActionNotCompatible(
                    f"twisted character of label {x} unmatched")
            perms[r, x] = hits[0]
    return RingAction(group=R, perms=perms), ring


# ---------------------------------------------------------------------------
# dual-side elements and Fourier transforms


@dataclass
class DualElement:
    """Finitely supported block element over a fusion ring's labels.

    ``q_blocks`` keeps a per-label positive matrix slot (None = identity);
    anything non-identity is accepted but experimental and untested.
    """
    ring: FusionRing
    blocks: dict                   # label index -> complex (d, d) matrix
    q_blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for x, mat in self.blocks.items():
            mat = np.atleast_2d(np.asarray(mat, dtype=complex))
            d = int(round(self.ring.dims[x]))
            if mat.shape != (d, d):
                raise ValidationError(
                    "dual-block", f"label {self.ring.labels[x]} wants "
                    f"({d},{d}), got {mat.shape}")
            clean[int(x)] = mat
        self.blocks = clean

    @property
    def experimental(self):
        return any(q is not None for q in self.q_blocks.values())

    def block(self, x):
        d = int(round(self.ring.dims[x]))
        return self.blocks.get(int(x), np.zeros((d, d), dtype=complex))

    def support(self):
        return sorted(self.blocks)

    def __add__(self, other):
        out = {x: self.block(x) for x in self.blocks}
        for x, m in other.blocks.items():
            out[x] = out.get(x, 0) + m
        return DualElement(self.ring, out)

    def scale(self, c):
        return DualElement(self.ring, {x: c * m
                                       for x, m in self.blocks.items()})


def unit_dual_element(ring):
    """The projection onto the trivial block."""
    return DualElement(ring, {ring.unit: np.array([[1.0 + 0.0j]])})


@dataclass
class ClassicalDual:
    """Matrix-irrep data of a finite group, with its function algebra."""
    group: object
    ring: FusionRing
    irreps: list
    algebra: object


def classical_dual(G, seed=DEFAULT_SEED):
    return ClassicalDual(group=G, ring=irrep_fusion_ring(G, seed=seed),
                         irreps=matrix_irreps(G, seed=seed),
                         algebra=plain_function_algebra(G))


def fourier_values(a, dual):
    """F(a) as a complex vector on the group: sum over blocks of
    dim(x) * Tr(U^x(g) a_x)."""
    G = dual.group
    out = np.zeros(G.order, dtype=complex)
    for x, mat in a.blocks.items():
        mx = dual.irreps[x]
        for g in range(G.order):
            out[g] += mx.dim * np.trace(mx.matrices[g] @ mat)
    return out


def fourier_transform(a, dual):
    """F(a) as an element of the function algebra of the group."""
    return dual.algebra.compact_function(fourier_values(a, dual))


def inverse_fourier(f, dual):
    """Blocks a_x = mean over the group of F(g) U^x(g)^*."""
    if hasattr(f, "vec"):
        e = dual.algebra.pair.discrete.identity
        values = np.array([f.vec[dual.algebra.basis_index(e, g)]
                           for g in range(dual.group.order)])
    else:
        values = np.asarray(f, dtype=complex)
    blocks = {}
    n = dual.group.order
    for x, mx in enumerate(dual.irreps):
        acc = np.zeros((mx.dim, mx.dim), dtype=complex)
        for g in range(n):
            acc += values[g] * mx.matrices[g].conj().T
        acc /= n
        if np.abs(acc).max() > 1e-12:
            blocks[x] = acc
    return DualElement(dual.ring, blocks)


def sobolev0_norm(a):
    """Square root of sum over blocks of dim(x) * ||a_x||_F^2."""
    total = 0.0
    for x, mat in a.blocks.items():
        total += a.ring.dims[x] * float(np.sum(np.abs(mat) ** 2))
    return float(np.sqrt(total))


# ---------------------------------------------------------------------------
# crossed instances: algebra + ring + corepresentation labels aligned


@dataclass
class CrossedInstance:
    pair: object
    algebra: object
    base_ring: FusionRing
    action: RingAction
    ring: CrossedFusionRing
    dual: ClassicalDual
    candidates: list               # aligned with ring.pairs
    catalog: object = None

    def candidate(self, gamma, x):
        return self.candidates[self.ring.pair_index[(gamma, x)]]


def crossed_instance(mp, seed=DEFAULT_SEED, name=None):
    """Bundle a trivially-graded pair into algebra + fusion data.

    Requires the discrete-side action of the pair to be trivial, so that
    corepresentation candidates are indexed by (discrete element, compact
    irrep) exactly like the crossed ring labels.
    """
    action, base = action_from_pair(mp, seed=seed)
    ring = crossed_ring(base, action, name=name)
    A = build_algebra(mp)
    cands, space, irreps = build_candidates(A, seed=seed)
    if [orb for orb in space.orbits] != [[r] for r in range(mp.discrete.order)]:
        raise ActionNotCompatible("orbit structure is not singleton-graded")
    dual = ClassicalDual(group=mp.compact, ring=base,
                         irreps=irreps, algebra=plain_function_algebra(mp.compact))
    return CrossedInstance(pair=mp, algebra=A, base_ring=base, action=action,
                           ring=ring, dual=dual, candidates=cands)


def conj_action_builder(G, subgroup_elements, seed=DEFAULT_SEED, name=None):
    """Crossed product of a finite group by conjugation by a subgroup."""
    mp = pair_conjugation(G, subgroup_elements, name=name)
    inst = crossed_instance(mp, seed=seed, name=name)
    # conjugation fixes every character, so the label action must be trivial
    if not np.array_equal(inst.action.perms,
                          np.tile(np.arange(inst.base_ring.n),
                                  (mp.discrete.order, 1))):
        raise ActionNotCompatible("conjugation moved an irrep label")
    return inst


def crossed_fourier(inst, a):
    """Transform a dual element of the crossed ring into the algebra, going
    through the corepresentation coefficient tensors."""
    A = inst.algebra
    vec = np.zeros(A.dim, dtype=complex)
    for lab, mat in a.blocks.items():
        cand = inst.candidates[lab]
        vec += inst.ring.dims[lab] * np.einsum("ji,ijn->n", mat, cand.coeffs)
    return A.from_vector(vec)


def graded_parts(inst, a):
    """Split a crossed dual element into classical dual elements per grade."""
    parts = {}
    for lab, mat in a.blocks.items():
        g, x = inst.ring.pairs[lab]
        parts.setdefault(g, {})[x] = mat
    return {g: DualElement(inst.base_ring, blocks)
            for g, blocks in parts.items()}


@dataclass
class LemmaFourierReport:
    decomposition_deviation: float
    norm_deviation: float
    parseval_deviation: float
    tol: float

    @property
    def passed(self):
        return max(self.decomposition_deviation, self.norm_deviation,
                   self.parseval_deviation) <= self.tol

    def lines(self):
        s = "PASS" if self.passed else "FAIL"
        return [f"{s} graded-decomposition: {self.decomposition_deviation:.3e}",
                f"{s} norm-additivity: {self.norm_deviation:.3e}",
                f"{s} parseval: {self.parseval_deviation:.3e}"]


def check_lemma_fourier(inst, a, tol=1e-9):
    """Two routes to the crossed transform and its norm must coincide.

    Route one goes through corepresentation coefficients; route two
    assembles grade-by-grade classical transforms multiplied onto the
    discrete unitaries.  Norm route three is the algebra's invariant-state
    two-norm of the transform (Parseval).
    """
    A = inst.algebra
    via_coreps = crossed_fourier(inst, a).vec
    parts = graded_parts(inst, a)
    assembled = np.zeros(A.dim, dtype=complex)
    for g, part in parts.items():
        f_vals = fourier_values(part, inst.dual)
        fn = A.compact_function(f_vals).vec
        assembled += A.mul_vec(A.discrete_unitary(g).vec, fn)
    dev1 = float(np.abs(via_coreps - assembled).max(initial=0.0))

    total_sq = sobolev0_norm(a) ** 2
    split_sq = sum(sobolev0_norm(p) ** 2 for p in parts.values())
    dev2 = abs(total_sq - split_sq)

    f_norm_sq = A.inner(via_coreps, via_coreps).real
    dev3 = abs(f_norm_sq - total_sq)

    report = LemmaFourierReport(decomposition_deviation=dev1,
                                norm_deviation=dev2,
                                parseval_deviation=dev3, tol=tol)
    if not report.passed:
        worst = max(a.blocks,
                    key=lambda lab: float(np.abs(a.blocks[lab]).max()))
        raise IdentityViolated(
            f"transform decomposition failed (devs {dev1:.2e}/{dev2:.2e}/"
            f"{dev3:.2e}) near block {inst.ring.labels[worst]}")
    return report


# ---------------------------------------------------------------------------
# length functions


@dataclass
class LengthFunction:
    ring: FusionRing
    values: np.ndarray

    def __call__(self, x):
        return float(self.values[x])


def check_length(lf, tol=1e-9):
    """Unit value, dual symmetry, triangle law along fusion."""
    ring, v = lf.ring, lf.values
    dev = abs(v[ring.unit])
    for x in range(ring.n):
        dev = max(dev, abs(v[x] - v[ring.dual[x]]))
        if v[x] < -tol:
            dev = max(dev, -v[x])
    for (x, y, z), m in ring.mults.items():
        if m > 0:
            excess = v[z] - (v[x] + v[y])
            if excess > tol:
                dev = max(dev, excess)
    return float(dev)


def word_length(ring, generators):
    """Fusion-graph distance from the unit along a self-dual generator set."""
    gens = sorted({int(g) for g in generators} |
                  {int(ring.dual[g]) for g in generators})
    INF = float("inf")
    dist = np.full(ring.n, INF)
    dist[ring.unit] = 0.0
    frontier = [ring.unit]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                for z in ring.fuse(x, g, allow_truncation=True):
                    if dist[z] == INF:
                        dist[z] = dist[x] + 1
                        next_frontier.append(z)
        frontier = next_frontier
    if np.isinf(dist).any():
        missing = [ring.labels[i] for i in np.nonzero(np.isinf(dist))[0]]
        raise ValidationError("word-length",
                              f"generators do not reach {missing[:4]}")
    return LengthFunction(ring=ring, values=dist)


def invariantize_length(lf, action, cap=100000):
    """Replace values by the orbit maximum under the action."""
    ring = lf.ring
    out = np.array(lf.values, dtype=float)
    for x in range(ring.n):
        orbit = {x}
        frontier = [x]
        while frontier:
            if len(orbit) > cap:
                raise OrbitInfinite(f"orbit of {ring.labels[x]} exceeds {cap}")
            nxt = []
            for y in frontier:
                for g in range(action.group.order):
                    z = action.act(g, y)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        out[x] = max(lf.values[y] for y in orbit)
    return LengthFunction(ring=ring, values=out)


def length_l0(crossed, l_gamma, l_base, invariantize=False):
    """Graded length on the crossed ring: group length plus base length."""
    if isinstance(l_gamma, LengthFunction):
        l_gamma = l_gamma.values
    if invariantize:
        l_base = invariantize_length(l_base, crossed.action)
    else:
        for g in range(crossed.action.group.order):
            moved = l_base.values[crossed.action.perms[g]]
            if np.abs(moved - l_base.values).max() > 1e-9:
                raise ValidationError(
                    "length-invariance",
                    f"base length moves under group element {g}")
    values = np.array([l_gamma[g] + l_base.values[x]
                       for g, x in crossed.pairs])
    return LengthFunction(ring=crossed, values=values)


# ---------------------------------------------------------------------------
# rapid-decay sampling harness


@dataclass
class RDSample:
    band: int
    ratio: float


@dataclass
class RDReport:
    samples: list
    bound_coeffs: tuple
    max_ratio: float

    @property
    def passed(self):
        return self.max_ratio <= 1.0 + 1e-9

    def lines(self):
        s = "PASS" if self.passed else "FAIL"
        out = [f"{s} polynomial bound: max ratio {self.max_ratio:.6g} "
               f"over {len(self.samples)} samples"]
        bands = sorted({smp.band for smp in self.samples})
        for k in bands:
            worst = max(smp.ratio for smp in self.samples if smp.band == k)
            out.append(f"  band {k}: worst ratio {worst:.6g}")
        return out


def rd_inequality_sample(inst, l0, poly_coeffs, samples=20,
                         seed=DEFAULT_SEED):
    """Sample dual elements in length bands and compare the operator norm
    of the transform against P(band) times the weighted coefficient norm.

    Report-only: never raises on a bound violation.  Refuses truncated
    rings, where left multiplication does not see the whole product.
    """
    ring = inst.ring
    if ring.truncated:
        raise ValidationError("rd-truncated",
                              "operator norms are not faithful under truncation")
    A = inst.algebra
    bands = {}
    for lab in range(ring.n):
        bands.setdefault(int(np.floor(l0(lab))), []).append(lab)
    out = []
    max_ratio = 0.0
    for t in range(samples):
        rng = rng_from(seed, 7, t)
        band = sorted(bands)[int(rng.integers(len(bands)))]
        blocks = {}
        for lab in bands[band]:
            d = int(round(ring.dims[lab]))
            blocks[lab] = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a = DualElement(ring, blocks)
        f = crossed_fourier(inst, a)
        op = float(np.linalg.norm(A.left_mult_matrix(f.vec), ord=2))
        bound = float(sum(c * band ** i for i, c in enumerate(poly_coeffs)))
        denom = bound * sobolev0_norm(a)
        ratio = op / denom if denom > 0 else float("inf")
        max_ratio = max(max_ratio, ratio)
        out.append(RDSample(band=band, ratio=ratio))
    return RDReport(samples=out, bound_coeffs=tuple(poly_coeffs),
                    max_ratio=max_ratio)


def crude_poly_bound(inst):
    """Constant polynomial that provably dominates: square root of the
    algebra dimension times the compact order."""
    return (float(np.sqrt(inst.algebra.dim * inst.algebra.nk)),)


# ---------------------------------------------------------------------------
# invariant groups of crossed instances


@dataclass
class CrossedInvariants:
    invariants: object            # reps.InvariantGroups
    product_intrinsic_iso: tuple  # vs dual(K)_ab x Gamma
    product_spectrum_iso: tuple   # vs fixed-points x dual(Gamma)_ab


def crossed_invariant_groups(inst, seed=DEFAULT_SEED):
    """General invariant groups plus the split-product models that apply
    when the grading is by a plain (conjugation-style) action."""
    from .matched import orbits_fixed_sets
    if inst.catalog is None:
        inst.catalog = enumerate_irreps(inst.algebra, seed=seed)
    inv = invariant_groups(inst.algebra, inst.catalog, seed=seed)
    mp = inst.pair
    dualK = dual_group(mp.compact, seed=seed).group
    prod_int = direct_product(dualK, mp.discrete)
    iso_int = is_isomorphic_small(inv.intrinsic, prod_int)
    _, _, (fix_k_group, _) = orbits_fixed_sets(mp)
    dualR = dual_group(mp.discrete, seed=seed).group
    prod_sp = direct_product(fix_k_group, dualR)
    iso_sp = is_isomorphic_small(inv.spectrum, prod_sp)
    return CrossedInvariants(invariants=inv, product_intrinsic_iso=iso_int,
                             product_spectrum_iso=iso_sp)
