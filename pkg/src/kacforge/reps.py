"""Corepresentation theory for the crossed-product function algebras.

Candidates come in two families: orbit matrices built from the discrete
action (entries are sums of basis elements over a fiber of the action) and
lifted matrix irreps of the compact group.  Their tensor products are the
natural candidate list; whether candidates are irreducible or pairwise
distinct is always computed, never assumed.  Two independent routes give
intertwiner-space dimensions (invariant-state character pairing vs. an
exact nullspace solve) and every enumeration is certified against the
squared-dimension count of the algebra.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import (DEFAULT_SEED, RETRY_BUDGET, TOL_EQ, TOL_INT,
                     TOL_MULT)
from .errors import (NonIntegral, PeterWeylMismatch, SeedDegenerate,
                     ValidationError)
from .groups import (FiniteGroup, character_table, dual_group,
                     is_isomorphic_small, matrix_irreps, rng_from,
                     semidirect_product)
from .hopf import validate_morphism
from .matched import b_sets, orbits_fixed_sets


class Corepresentation:
    """A matrix over the algebra, stored as a (dim, dim, n) coefficient
    tensor with n the algebra dimension."""

    def __init__(self, algebra, coeffs, label=None, unitary=True):
        self.algebra = algebra
        self.coeffs = np.ascontiguousarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 3 or self.coeffs.shape[0] != self.coeffs.shape[1] \
                or self.coeffs.shape[2] != algebra.dim:
            raise ValidationError("corep-shape", f"{self.coeffs.shape}")
        self.dim = self.coeffs.shape[0]
        self.label = label if label is not None else f"w{self.dim}"
        self.unitary = unitary

    def entry(self, i, j):
        return self.algebra.from_vector(self.coeffs[i, j])

    def character(self):
        return np.einsum("iin->n", self.coeffs)

    def support(self):
        flat = np.abs(self.coeffs).sum(axis=(0, 1))
        return np.nonzero(flat > 1e-14)[0]

    def tensor(self, other, label=None):
        A = self.algebra
        if other.algebra is not A:
            raise ValidationError("corep-tensor", "different algebras")
        d1, d2 = self.dim, other.dim
        out = np.zeros((d1 * d2, d1 * d2, A.dim), dtype=complex)
        for i in range(d1):
            for j in range(d1):
                for k in range(d2):
                    for ell in range(d2):
                        out[i * d2 + k, j * d2 + ell] = A.mul_vec(
                            self.coeffs[i, j], other.coeffs[k, ell])
        return Corepresentation(
            A, out, label=label or f"{self.label}(x){other.label}",
            unitary=self.unitary and other.unitary)

    def __repr__(self):
        return f"Corepresentation({self.label!r}, dim={self.dim})"


def check_corepresentation(c, tol=TOL_MULT):
    """Max deviation over the coaction identity and (if flagged) unitarity."""
    A = c.algebra
    d = c.dim
    dev = 0.0
    for i in range(d):
        for j in range(d):
            lhs = A.coproduct_dict(c.coeffs[i, j])
            rhs = {}
            for k in range(d):
                left = c.coeffs[i, k]
                right = c.coeffs[k, j]
                for a in np.nonzero(np.abs(left) > 1e-14)[0]:
                    for b in np.nonzero(np.abs(right) > 1e-14)[0]:
                        key = (int(a), int(b))
                        rhs[key] = rhs.get(key, 0.0) + left[a] * right[b]
            keys = set(lhs) | set(rhs)
            for key in keys:
                dev = max(dev, abs(lhs.get(key, 0.0) - rhs.get(key, 0.0)))
    if c.unitary:
        one = A.one().vec
        for i in range(d):
            for j in range(d):
                row = sum(A.mul_vec(c.coeffs[i, k], A.star_vec(c.coeffs[j, k]))
                          for k in range(d))
                col = sum(A.mul_vec(A.star_vec(c.coeffs[k, i]), c.coeffs[k, j])
                          for k in range(d))
                want = one if i == j else 0.0 * one
                dev = max(dev, float(np.abs(row - want).max()),
                          float(np.abs(col - want).max()))
    return dev


# ---------------------------------------------------------------------------
# candidate builders


def orbit_corepresentation(A, orbit, label=None):
    """Matrix over one orbit of the discrete action; entry (r, s) sums the
    basis elements u_r d_g over the fiber {g : the action sends r to s}."""
    mp = A.pair
    pos = {r: idx for idx, r in enumerate(orbit)}
    d = len(orbit)
    coeffs = np.zeros((d, d, A.dim), dtype=complex)
    for r in orbit:
        for g in range(A.nk):
            s = int(mp.beta[g, r])
            coeffs[pos[r], pos[s], A.basis_index(r, g)] += 1.0
    return Corepresentation(A, coeffs, label=label or f"orb{orbit[0]}")


def lifted_irrep_corepresentation(A, mx, label=None):
    """A matrix irrep of the compact group, embedded via point indicators."""
    e = A.pair.discrete.identity
    d = mx.dim
    coeffs = np.zeros((d, d, A.dim), dtype=complex)
    for g in range(A.nk):
        U = mx.matrices[g]
        for i in range(d):
            for j in range(d):
                coeffs[i, j, A.basis_index(e, g)] += U[i, j]
    return Corepresentation(A, coeffs, label=label or f"lift[{mx.label}]")


def candidate_corepresentation(A, orbit, mx, label=None):
    """Closed form of (orbit matrix) tensor (lifted irrep): the entry at
    ((r,i),(s,j)) collects U^x_{ij}(g) u_r d_g over the (r -> s) fiber."""
    mp = A.pair
    pos = {r: idx for idx, r in enumerate(orbit)}
    do, dx = len(orbit), mx.dim
    d = do * dx
    coeffs = np.zeros((d, d, A.dim), dtype=complex)
    for r in orbit:
        for g in range(A.nk):
            s = int(mp.beta[g, r])
            U = mx.matrices[g]
            base = A.basis_index(r, g)
            for i in range(dx):
                for j in range(dx):
                    coeffs[pos[r] * dx + i, pos[s] * dx + j, base] += U[i, j]
    return Corepresentation(A, coeffs, label=label)


def build_candidates(A, seed=DEFAULT_SEED):
    """All (orbit, compact-irrep) tensor candidates in deterministic order.

    Returns (candidates, orbit_space, irreps); candidate k has label
    "o<i>*<x>" recording its construction.
    """
    space, _, _ = orbits_fixed_sets(A.pair)
    irreps = matrix_irreps(A.pair.compact, seed=seed)
    candidates = []
    for oi, orbit in enumerate(space.orbits):
        for mx in irreps:
            cand = candidate_corepresentation(
                A, orbit, mx, label=f"o{oi}*{mx.label}")
            cand.orbit_index = oi
            cand.irrep_label = mx.label
            candidates.append(cand)
    return candidates, space, irreps


# ---------------------------------------------------------------------------
# intertwiner dimensions, two independent routes


def mor_dim_haar(u, w, tol=TOL_INT):
    """Invariant-state pairing of characters, rounded to an integer."""
    if not (u.unitary and w.unitary):
        raise ValidationError("mor-haar", "both inputs must be unitary")
    val = complex(np.vdot(u.character(), w.character())) / u.algebra.nk
    best = int(round(val.real))
    if abs(val - best) > tol:
        raise NonIntegral(f"character pairing {val} is not near an integer")
    return best


def mor_dim_solver(u, w, tol=TOL_EQ):
    """Exact nullspace of the intertwiner equations; returns (dim, basis).

    Solves for T (w.dim x u.dim) with (T x 1)u = w(T x 1) over the
    algebra's coefficient space.
    """
    A = u.algebra
    du, dw = u.dim, w.dim
    support = sorted(set(u.support()) | set(w.support()))
    if not support:
        return 0, []
    S = len(support)
    M = np.zeros((dw, du, S, dw * du), dtype=complex)
    Uc = u.coeffs[:, :, support]            # (du, du, S)
    Wc = w.coeffs[:, :, support]            # (dw, dw, S)
    for i in range(dw):
        for k in range(du):
            # + sum_j T[i, j] * u[j, k]
            for j in range(du):
                M[i, k, :, i * du + j] += Uc[j, k]
            # - sum_j w[i, j] * T[j, k]
            for j in range(dw):
                M[i, k, :, j * du + k] -= Wc[i, j]
    M = M.reshape(dw * du * S, dw * du)
    svals, vh = np.linalg.svd(M, compute_uv=True)[1:]
    cutoff = tol * max(float(svals.max(initial=0.0)), 1.0)
    null_rows = [r for r in range(vh.shape[0])
                 if r >= len(svals) or svals[r] <= cutoff]
    basis = [vh[r].conj().reshape(dw, du) for r in null_rows]
    return len(basis), basis


# ---------------------------------------------------------------------------
# honest enumeration


@dataclass
class IrrepCatalog:
    algebra: object
    candidates: list
    canonical: list
    equivalence_map: dict          # candidate index -> list of canonical ids
    orbit_space: object
    irreps: list

    def dims(self):
        return [c.dim for c in self.canonical]

    def coefficient_span_rank(self, tol=1e-8):
        rows = np.concatenate([c.coeffs.reshape(-1, self.algebra.dim)
                               for c in self.canonical])
        return int(np.linalg.matrix_rank(rows, tol=tol))


def _split_once(corep, basis, seed, depth, attempt):
    rng = rng_from(seed, 4, corep.dim, depth, attempt)
    Y = sum(c * B for c, B in zip(rng.normal(size=len(basis)), basis))
    M = Y + Y.conj().T
    vals, vecs = np.linalg.eigh(M)
    groups = []
    start = 0
    for t in range(1, len(vals) + 1):
        if t == len(vals) or vals[t] - vals[t - 1] > 1e-6:
            groups.append(list(range(start, t)))
            start = t
    if len(groups) < 2:
        return None
    parts = []
    for gi, idxs in enumerate(groups):
        W = vecs[:, idxs]
        sub = np.einsum("ia,ijn,jb->abn", W.conj(), corep.coeffs, W)
        parts.append(Corepresentation(
            corep.algebra, sub, label=f"{corep.label}#p{gi}",
            unitary=corep.unitary))
    return parts


def decompose(corep, seed=DEFAULT_SEED, depth=0):
    """Split into irreducible unitary pieces via the endomorphism algebra."""
    nd, basis = mor_dim_solver(corep, corep)
    if nd == 1:
        return [corep]
    for attempt in range(RETRY_BUDGET):
        parts = _split_once(corep, basis, seed, depth, attempt)
        if parts is not None:
            out = []
            for p in parts:
                out.extend(decompose(p, seed=seed, depth=depth + 1))
            return out
    raise SeedDegenerate(
        f"could not split {corep.label} (End dim {nd}) after {RETRY_BUDGET} draws")


def enumerate_irreps(A, seed=DEFAULT_SEED):
    """Decompose all candidates, deduplicate, certify the dimension count."""
    candidates, space, irreps = build_candidates(A, seed=seed)
    canonical = []
    pieces_of = {}
    for ci, cand in enumerate(candidates):
        pieces = decompose(cand, seed=seed)
        ids = []
        for p in pieces:
            match = None
            for ki, known in enumerate(canonical):
                if p.dim == known.dim and mor_dim_haar(p, known) >= 1:
                    match = ki
                    break
            if match is None:
                canonical.append(p)
                match = len(canonical) - 1
            ids.append(match)
        pieces_of[ci] = ids
    order = sorted(range(len(canonical)),
                   key=lambda k: (canonical[k].dim, k))
    relabel = {old: new for new, old in enumerate(order)}
    canonical = [canonical[old] for old in order]
    equivalence_map = {ci: sorted(relabel[k] for k in ids)
                       for ci, ids in pieces_of.items()}
    total = sum(c.dim ** 2 for c in canonical)
    if total != A.dim:
        raise PeterWeylMismatch(
            f"sum of squared dims {total} != algebra dim {A.dim}")
    return IrrepCatalog(algebra=A, candidates=candidates, canonical=canonical,
                        equivalence_map=equivalence_map, orbit_space=space,
                        irreps=irreps)


# ---------------------------------------------------------------------------
# fusion: closed-form evaluation and the three-way audit


def fusion_formula_value(mp, space, bset_table, chi_x, gamma_orbit, r_orbit,
                         s_orbit):
    """Closed-form multiplicity: sum over orbit pairs landing in the target
    orbit of the mean of the conjugated compact character over the B-set."""
    R = mp.discrete
    nk = mp.compact.order
    total = 0.0 + 0.0j
    for r in space.orbits[r_orbit]:
        for s in space.orbits[s_orbit]:
            if space.orbit_index_of(R.mul(r, s)) != gamma_orbit:
                continue
            members = bset_table.sets[(r, s)]
            total += sum(np.conj(chi_x[g]) for g in members) / nk
    return total


def fusion_paper_formula(A, gamma_orbit, x_index, r_orbit, s_orbit,
                         context=None, tol=TOL_INT):
    """Integer value of the closed-form fusion multiplicity."""
    mp = A.pair
    if context is None:
        space, _, _ = orbits_fixed_sets(mp)
        table = character_table(mp.compact)
        bst = b_sets(mp)
    else:
        space, table, bst = context
    chi_x = table.char_on_elements(x_index)
    val = fusion_formula_value(mp, space, bst, chi_x, gamma_orbit, r_orbit,
                               s_orbit)
    best = int(round(val.real))
    if abs(val - best) > tol:
        raise NonIntegral(f"fusion formula value {val} not near an integer")
    return best


@dataclass
class FusionAuditEntry:
    gamma_orbit: int
    x_label: str
    r_orbit: int
    s_orbit: int
    solver: int
    haar: int
    formula: float
    status: str        # AUDIT-AGREE / AUDIT-DISAGREE


@dataclass
class DistinctnessEntry:
    left: str
    right: str
    mor_dim: int
    status: str
    intertwiner: object = None


@dataclass
class FlipEntry:
    candidate: str
    partner: object    # (x_label, orbit_index) or None


@dataclass
class FusionAuditReport:
    pair_name: str
    entries: list
    distinctness: list
    flips: list

    @property
    def oracle_consistent(self):
        return all(e.solver == e.haar for e in self.entries)

    def disagreements(self):
        return [e for e in self.entries + self.distinctness
                if e.status == "AUDIT-DISAGREE"]

    def lines(self):
        out = [f"fusion audit for {self.pair_name}: "
               f"{len(self.entries)} triples, "
               f"{len(self.disagreements())} disagreements"]
        for e in self.entries:
            if e.status == "AUDIT-DISAGREE":
                out.append(
                    f"AUDIT-DISAGREE triple (o{e.gamma_orbit}*{e.x_label}"
                    f" | o{e.r_orbit} x o{e.s_orbit}): solver={e.solver}"
                    f" haar={e.haar} formula={e.formula:.6g}")
        for d in self.distinctness:
            if d.status == "AUDIT-DISAGREE":
                out.append(f"AUDIT-DISAGREE distinctness ({d.left} ~ {d.right})"
                           f": intertwiner space has dim {d.mor_dim}")
        for f in self.flips:
            if f.partner is not None:
                out.append(f"flip {f.candidate} ~ lift[{f.partner[0]}]"
                           f"(x)orb#{f.partner[1]}")
        return out


def audit_fusion(A, catalog=None, seed=DEFAULT_SEED, max_triples=2000):
    """Three-way fusion audit plus candidate-distinctness and flip search.

    Solver and character values must agree (oracle consistency); the
    closed-form value is logged with an agree/disagree flag and never
    asserted.  Disagreement does not raise.
    """
    if catalog is None:
        catalog = enumerate_irreps(A, seed=seed)
    mp = A.pair
    space = catalog.orbit_space
    table = character_table(mp.compact, seed=seed)
    bst = b_sets(mp)
    n_orb = len(space.orbits)
    orbit_coreps = [orbit_corepresentation(A, orb, label=f"orb#{oi}")
                    for oi, orb in enumerate(space.orbits)]
    lifted = [lifted_irrep_corepresentation(A, mx) for mx in catalog.irreps]

    triples = [(gi, xi, ri, si)
               for gi in range(n_orb) for xi in range(len(catalog.irreps))
               for ri in range(n_orb) for si in range(n_orb)]
    if len(triples) > max_triples:
        rng = rng_from(seed, 5)
        keep = rng.choice(len(triples), size=max_triples, replace=False)
        triples = [triples[t] for t in sorted(keep)]

    entries = []
    tensor_cache = {}
    for gi, xi, ri, si in triples:
        cand = catalog.candidates[gi * len(catalog.irreps) + xi]
        if (ri, si) not in tensor_cache:
            tensor_cache[(ri, si)] = orbit_coreps[ri].tensor(orbit_coreps[si])
        target = tensor_cache[(ri, si)]
        solver = mor_dim_solver(cand, target)[0]
        haar = mor_dim_haar(cand, target)
        chi_x = table.char_on_elements(xi)
        formula = fusion_formula_value(mp, space, bst, chi_x, gi, ri, si)
        agree = abs(formula - solver) < 1e-6
        entries.append(FusionAuditEntry(
            gamma_orbit=gi, x_label=catalog.irreps[xi].label, r_orbit=ri,
            s_orbit=si, solver=solver, haar=haar, formula=float(formula.real),
            status="AUDIT-AGREE" if agree else "AUDIT-DISAGREE"))

    # distinctness of candidates with different construction labels
    distinctness = []
    cands = catalog.candidates
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            d = mor_dim_haar(cands[i], cands[j])
            if d > 0:
                dim_t, basis = mor_dim_solver(cands[i], cands[j])
                witness = basis[0] if basis else None
                distinctness.append(DistinctnessEntry(
                    left=cands[i].label, right=cands[j].label, mor_dim=d,
                    status="AUDIT-DISAGREE", intertwiner=witness))

    # flip search: candidate (orbit x) ~ (lifted x') tensor (orbit')
    flips = []
    for cand in cands:
        found = None
        chi_c = cand.character()
        for xi, lx in enumerate(lifted):
            for oi, oc in enumerate(orbit_coreps):
                if lx.dim * oc.dim != cand.dim:
                    continue
                chi_sw = A.mul_vec(lx.character(), oc.character())
                if np.abs(chi_sw - chi_c).max() < 1e-8:
                    found = (catalog.irreps[xi].label, oi)
                    break
            if found:
                break
        flips.append(FlipEntry(candidate=cand.label, partner=found))

    return FusionAuditReport(pair_name=mp.name, entries=entries,
                             distinctness=distinctness, flips=flips)


# ---------------------------------------------------------------------------
# invariant groups: 1-dim corepresentations and algebra characters


@dataclass
class InvariantGroups:
    intrinsic: FiniteGroup
    intrinsic_vectors: list
    intrinsic_model: FiniteGroup
    intrinsic_iso: tuple
    spectrum: FiniteGroup
    spectrum_vectors: list
    spectrum_model: FiniteGroup
    spectrum_iso: tuple


def _match_vector(vecs, target, tol):
    for idx, v in enumerate(vecs):
        if np.abs(v - target).max() <= tol:
            return idx
    return None


def invariant_groups(A, catalog=None, seed=DEFAULT_SEED, tol=TOL_MULT):
    """Both canonical finite groups attached to the algebra, with the
    independently built structured models and isomorphism tests."""
    if catalog is None:
        catalog = enumerate_irreps(A, seed=seed)
    mp = A.pair
    R, K = mp.discrete, mp.compact
    space, (fix_r_group, fix_r_el), (fix_k_group, fix_k_el) = \
        orbits_fixed_sets(mp)

    # --- group of 1-dim corepresentations under tensor
    ones = [c for c in catalog.canonical if c.dim == 1]
    vecs = [c.coeffs[0, 0].copy() for c in ones]
    for v in vecs:       # group-likeness: the coproduct doubles the vector
        got = A.coproduct_dict(v)
        want = np.outer(v, v)
        dev = 0.0
        seen = set()
        for (j, k), coeff in got.items():
            dev = max(dev, abs(coeff - want[j, k]))
            seen.add((j, k))
        rest = np.abs(want).copy()
        for j, k in seen:
            rest[j, k] = 0.0
        dev = max(dev, float(rest.max(initial=0.0)))
        if dev > tol:
            raise ValidationError("intrinsic-grouplike",
                                  f"deviation {dev:.3e}")
    m = len(ones)
    cayley = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            prod = A.mul_vec(vecs[i], vecs[j])
            k = _match_vector(vecs, prod, tol)
            if k is None:
                raise ValidationError("intrinsic-closure",
                                      f"product {i}*{j} left the set")
            cayley[i, j] = k
    intrinsic = FiniteGroup(cayley, labels=[c.label for c in ones])

    # structured model: compact-side dual extended by the fixed discrete part
    dualK = dual_group(K, seed=seed)
    act = np.zeros((fix_r_group.order, dualK.group.order), dtype=np.int64)
    for qi, gamma in enumerate(fix_r_el):
        row = mp.alpha[R.inv(int(gamma))]
        for ni in range(dualK.group.order):
            moved = dualK.characters[ni][row]
            hit = _match_vector(list(dualK.characters), moved, 1e-6)
            if hit is None:
                raise ValidationError("intrinsic-model",
                                      "twisted character escaped the dual")
            act[qi, ni] = hit
    intrinsic_model = semidirect_product(dualK.group, fix_r_group, act)
    intrinsic_iso = is_isomorphic_small(intrinsic, intrinsic_model)

    # --- algebra characters under convolution
    dualR = dual_group(R, seed=seed)
    n = A.dim
    gamma_of, g_of = A.gamma_of, A.g_of
    P = A.prod_index
    padded_ok = np.clip(P, 0, None)
    passers = []
    pass_vectors = []
    for g in range(K.order):
        point = (g_of == g).astype(complex)
        for mi in range(dualR.group.order):
            phi = dualR.characters[mi][gamma_of] * point
            prod_vals = np.where(P >= 0, phi[padded_ok], 0.0)
            if np.abs(prod_vals - np.outer(phi, phi)).max() > tol:
                continue
            if np.abs(phi[A.star_index] - np.conj(phi)).max() > tol:
                continue
            if abs(np.dot(phi, A.one().vec) - 1.0) > tol:
                continue
            passers.append((g, mi))
            pass_vectors.append(phi)
    mS = len(passers)
    conv_cayley = np.zeros((mS, mS), dtype=np.int64)
    for i in range(mS):
        for j in range(mS):
            conv = np.zeros(n, dtype=complex)
            for b in range(n):
                conv[b] = sum(pass_vectors[i][jj] * pass_vectors[j][kk]
                              for jj, kk in A.coproduct[b])
            k = _match_vector(pass_vectors, conv, tol)
            if k is None:
                raise ValidationError("spectrum-closure",
                                      f"convolution {i}*{j} left the set")
            conv_cayley[i, j] = k
    spectrum = FiniteGroup(conv_cayley,
                           labels=[f"({K.labels[g]},m{mi})"
                                   for g, mi in passers])

    # structured model: discrete-side dual extended by the fixed compact part
    actS = np.zeros((fix_k_group.order, dualR.group.order), dtype=np.int64)
    for qi, g in enumerate(fix_k_el):
        row = mp.beta[int(g)]
        for ni in range(dualR.group.order):
            moved = dualR.characters[ni][row]
            hit = _match_vector(list(dualR.characters), moved, 1e-6)
            if hit is None:
                raise ValidationError("spectrum-model",
                                      "twisted character escaped the dual")
            actS[qi, ni] = hit
    spectrum_model = semidirect_product(dualR.group, fix_k_group, actS)
    spectrum_iso = is_isomorphic_small(spectrum, spectrum_model)

    return InvariantGroups(
        intrinsic=intrinsic, intrinsic_vectors=vecs,
        intrinsic_model=intrinsic_model, intrinsic_iso=intrinsic_iso,
        spectrum=spectrum, spectrum_vectors=pass_vectors,
        spectrum_model=spectrum_model, spectrum_iso=spectrum_iso)


def spectrum_support_points(A, inv):
    """Compact support points of the algebra characters (they must form
    the fixed-point subgroup of the compact action)."""
    pts = set()
    for phi in inv.spectrum_vectors:
        nz = np.nonzero(np.abs(phi) > 1e-9)[0]
        pts.update(int(A.g_of[i]) for i in nz)
    return sorted(pts)


# ---------------------------------------------------------------------------
# branching along a restriction morphism


def push_corepresentation(rho, corep):
    """Apply a validated morphism entrywise."""
    pushed = np.einsum("mn,ijn->ijm", rho.matrix, corep.coeffs)
    return Corepresentation(rho.target, pushed, label=f"push[{corep.label}]",
                            unitary=corep.unitary)


def branching_sets(rho, source_catalog, target_catalog):
    """For each target irreducible y: which source irreducibles x restrict
    onto it (nonzero intertwiner space)."""
    validate_morphism(rho)
    pushed = [push_corepresentation(rho, x) for x in source_catalog.canonical]
    out = {}
    for yi, y in enumerate(target_catalog.canonical):
        hits = set()
        for xi, px in enumerate(pushed):
            if mor_dim_solver(y, px)[0] > 0:
                hits.add(xi)
        out[yi] = hits
    return out


# ---------------------------------------------------------------------------
# spectral-gap metadata


@dataclass
class KazhdanPair:
    labels: tuple
    delta: float

    def __post_init__(self):
        if self.delta <= 0:
            raise ValidationError("kazhdan-delta", "delta must be positive")


def kazhdan_combine(p1, p2):
    """Union the label sets, keep the weaker gap."""
    return KazhdanPair(labels=tuple(sorted(set(p1.labels) | set(p2.labels))),
                       delta=min(p1.delta, p2.delta))
