"""Graded Lie algebra of a pentad, built degree by degree.

Degree 0 is the commutative toral part with basis eps_1..eps_r, degree 1
has basis e_1..e_n and degree -1 has basis f_1..f_n.  For |k| >= 2 the
component V_k is the minimal transitive extension: it is identified with
the image of ``V_{+-1} (x) V_{k-+1} -> Hom(V_{-+1}, V_{k-+1})``.

Every basis vector of V_k (k != 0) carries a multidegree: the number of
times each generator occurs in it.  Brackets add multidegrees, so the
extension step splits into independent blocks, one per multidegree.  The
basis of each block consists of pivot columns of that block's evaluation
matrix, so each basis vector of V_{k+1} is literally ``[e_i, b]`` for one
basis vector ``b`` of V_k (its provenance).

Elements are sparse dicts ``{basis index: Fraction}``; V_0 uses the
epsilon coordinates as indices.
"""

import itertools
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AsymmetricPentad, NotFullyExtended, TruncationLimit
from .linalg import QMatrix, kernel_basis, rank, rref_rows
from .pentad import analyze, phi_map_vectors

DEFAULT_MAX_DEGREE = 6
DEFAULT_CAP = 12

ZERO = Fraction(0)


def _axpy(acc, vec, c):
    """acc += c * vec, dropping zeros."""
    if not c:
        return acc
    for k, v in vec.items():
        x = acc.get(k, ZERO) + c * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


def _neg(vec):
    return {k: -v for k, v in vec.items()}


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    dim: int
    weights: tuple
    multidegrees: tuple
    provenance: Optional[tuple] = None


@dataclass
class _Side:
    """Tables for one half of the algebra; index k means degree +-k.

    mdeg[k]   multidegrees (nonnegative tuples) of the basis of V_{+-k}
    prov[k]   (i, b): basis vector is [g_i, b] with b in V_{+-(k-1)}
    raise_[k] {(i, b): vector in V_{+-(k+1)}} for b in V_{+-k}
    lower[k]  lower[k][b][l] = [g'_l, b] in V_{+-(k-1)}, g' the opposite generator
    """

    sign: int
    mdeg: list
    prov: list
    raise_: list
    lower: list

    def copy(self):
        return _Side(self.sign, list(self.mdeg), list(self.prov),
                     list(self.raise_), list(self.lower))


def _local_side(p, sign, hvecs):
    n, r = p.n, p.r
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    lower1 = []
    for m in range(n):
        h = {t: -sign * x for t, x in enumerate(hvecs[m]) if x}
        lower1.append([h if l == m else {} for l in range(n)])
    return _Side(sign, [[], unit], [[], [(i, None) for i in range(n)]],
                 [None], [None, lower1])


def _grow(side, k, p, hvecs):
    """Compute V_{+-(k+1)} from V_{+-k}; appends to ``side`` and fills raise_[k]."""
    n, D, sign = p.n, p.D, side.sign
    mdegs = side.mdeg[k]
    lower_k = side.lower[k]
    if not mdegs:
        side.raise_.append({})
        side.mdeg.append([])
        side.prov.append([])
        side.lower.append([])
        return

    def raise_prev(i, vec):
        # [g_i, vec] for vec in V_{+-(k-1)}
        if k - 1 == 0:
            c = -sign * sum((x * D[t, i] for t, x in vec.items()), ZERO)
            return {i: c} if c else {}
        out = {}
        tab = side.raise_[k - 1]
        for b, x in vec.items():
            _axpy(out, tab[(i, b)], x)
        return out

    by_mdeg = {}
    for b, a in enumerate(mdegs):
        by_mdeg.setdefault(a, []).append(b)

    # weight term: h_i evaluated on the (unsigned) weight D alpha_b
    wt_h = {}
    for a in by_mdeg:
        w = D.apply(a)
        wt_h[a] = [_dot(hvecs[i], w) for i in range(n)]

    targets = {}
    for i in range(n):
        for b, a in enumerate(mdegs):
            t = tuple(x + (j == i) for j, x in enumerate(a))
            targets.setdefault(t, []).append((i, b))

    new_entries = []
    raise_k = {}
    for t in sorted(targets):
        pairs = targets[t]  # already in (i, b) lexicographic order
        # coordinate rows: (l, c) with c in V_k of multidegree t - u_l
        coords = []
        for l in range(n):
            if t[l] == 0:
                continue
            src = tuple(x - (j == l) for j, x in enumerate(t))
            for c in by_mdeg.get(src, ()):
                coords.append((l, c))
        index = {lc: row for row, lc in enumerate(coords)}
        cols = []
        for i, b in pairs:
            col = [ZERO] * len(coords)
            lb = lower_k[b]
            for l in range(n):
                img = raise_prev(i, lb[l]) if lb[l] else {}
                if l == i:
                    coef = wt_h[mdegs[b]][i]
                    if coef:
                        img = dict(img)
                        _axpy(img, {b: Fraction(1)}, -coef)
                for c, x in img.items():
                    col[index[(l, c)]] += x
            cols.append(col)
        rows = [[cols[j][row] for j in range(len(pairs))] for row in range(len(coords))]
        pivots, reduced = rref_rows(rows, len(pairs))
        local_ids = []
        for pv in pivots:
            i, b = pairs[pv]
            col = cols[pv]
            low = [dict() for _ in range(n)]
            for row, (l, c) in enumerate(coords):
                if col[row]:
                    low[l][c] = col[row]
            new_entries.append((pairs[pv], t, low))
            local_ids.append(len(new_entries) - 1)
        for j, pair in enumerate(pairs):
            raise_k[pair] = {local_ids[tr]: reduced[tr][j]
                             for tr in range(len(pivots)) if reduced[tr][j]}
    side.raise_.append(raise_k)
    side.mdeg.append([e[1] for e in new_entries])
    side.prov.append([e[0] for e in new_entries])
    side.lower.append([e[2] for e in new_entries])


class GradedAlgebra:
    """Truncation of the graded Lie algebra of a pentad to degrees |k| <= N.

    Build with :func:`build_local_part` and :func:`extend`.  The object is
    not modified after construction apart from an internal bracket cache,
    which only memoizes values that are fully determined by the tables.
    """

    def __init__(self, pentad, max_degree, pos, neg, hvecs):
        self.pentad = pentad
        self.max_degree = max_degree
        self._pos = pos
        self._neg = neg
        self._h = hvecs
        self._cache = {}
        self._pair_cache = {}
        self._lock = threading.Lock()

    # -- shape ---------------------------------------------------------
    def _side(self, k):
        return self._pos if k > 0 else self._neg

    def dim(self, k):
        if k == 0:
            return self.pentad.r
        if abs(k) > self.max_degree:
            raise TruncationLimit(f"degree {k} beyond truncation {self.max_degree}")
        return len(self._side(k).mdeg[abs(k)])

    def degrees(self):
        return range(-self.max_degree, self.max_degree + 1)

    def multidegree(self, k, b):
        """Signed multidegree of basis vector ``b`` of V_k."""
        if k == 0:
            return (0,) * self.pentad.n
        a = self._side(k).mdeg[abs(k)][b]
        return a if k > 0 else tuple(-x for x in a)

    def weight(self, k, b):
        """Eigenvalues of eps_1..eps_r on basis vector ``b`` of V_k."""
        return self.pentad.D.apply(self.multidegree(k, b))

    def provenance(self, k, b):
        if k == 0:
            return None
        return self._side(k).prov[abs(k)][b]

    def component(self, k):
        d = self.dim(k)
        if k == 0:
            z = tuple(ZERO for _ in range(self.pentad.r))
            return GradedComponent(0, d, (z,) * d, ((0,) * self.pentad.n,) * d)
        prov = tuple(self.provenance(k, b) for b in range(d)) if abs(k) >= 2 else None
        return GradedComponent(
            k, d,
            tuple(self.weight(k, b) for b in range(d)),
            tuple(self.multidegree(k, b) for b in range(d)),
            prov,
        )

    @property
    def components(self):
        return {k: self.component(k) for k in self.degrees()}

    def dims_by_degree(self):
        return {k: self.dim(k) for k in self.degrees()}

    @property
    def truncation_flags(self):
        """(V_N != 0, V_-N != 0): growth may continue past the truncation."""
        N = self.max_degree
        return (self.dim(N) != 0, self.dim(-N) != 0)

    # -- brackets --------------------------------------------------------
    def _check_range(self, k):
        if abs(k) > self.max_degree:
            raise TruncationLimit(f"bracket lands in degree {k}, beyond truncation {self.max_degree}")

    def act(self, sign, i, k, b):
        """[e_i, b] (sign=+1) or [f_i, b] (sign=-1) for basis vector b of V_k."""
        self._check_range(k + sign)
        D = self.pentad.D
        if k == 0:
            c = -sign * D[b, i]
            return {i: c} if c else {}
        if sign * k > 0:
            return dict(self._side(k).raise_[abs(k)][(i, b)])
        return dict(self._side(k).lower[abs(k)][b][i])

    def bracket_basis(self, j, a, k, b):
        """Bracket of basis vector ``a`` of V_j with basis vector ``b`` of V_k."""
        self._check_range(j + k)
        key = (j, a, k, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if j == 0:
            if k == 0:
                res = {}
            else:
                w = _dot(self.pentad.D.row(a), self.multidegree(k, b))
                res = {b: w} if w else {}
        elif k == 0:
            res = _neg(self.bracket_basis(k, b, j, a))
        elif abs(j) == 1:
            res = self.act(j, a, k, b)
        elif abs(k) == 1:
            res = _neg(self.act(k, b, j, a))
        else:
            s = 1 if j > 0 else -1
            i, a1 = self.provenance(j, a)
            # [[g_i, x'], y] = [g_i, [x', y]] - [x', [g_i, y]]
            res = self.bracket_vec(s, {i: Fraction(1)}, j - s + k,
                                   self.bracket_basis(j - s, a1, k, b))
            _axpy(res, self.bracket_vec(j - s, {a1: Fraction(1)}, k + s,
                                        self.act(s, i, k, b)), Fraction(-1))
        with self._lock:
            self._cache[key] = res
        return res

    def bracket_vec(self, j, u, k, v):
        """Bracket of sparse vectors u in V_j and v in V_k."""
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                _axpy(out, self.bracket_basis(j, a, k, b), x * y)
        return out

    # -- invariant form --------------------------------------------------
    def _pair_table(self, k):
        """Matrix of B on V_k x V_-k for k >= 0, as nested lists."""
        tab = self._pair_cache.get(k)
        if tab is not None:
            return tab
        p = self.pentad
        if k == 0:
            tab = p.form_matrix().to_lists()
        elif k == 1:
            tab = [[p.gamma[i] if i == j else ZERO for j in range(p.n)] for i in range(p.n)]
        else:
            prev = self._pair_table(k - 1)
            dk, dm = self.dim(k), self.dim(-k)
            tab = [[ZERO] * dm for _ in range(dk)]
            for a in range(dk):
                i, a1 = self.provenance(k, a)
                for q in range(dm):
                    # B([e_i, x'], phi) = -B(x', [e_i, phi])
                    img = self._neg.lower[k][q][i]
                    tab[a][q] = -sum((x * prev[a1][c] for c, x in img.items()), ZERO)
        with self._lock:
            self._pair_cache[k] = tab
        return tab

    def pairing_matrix(self, k):
        """B restricted to V_k x V_-k, for any |k| <= N."""
        tab = self._pair_table(abs(k))
        m = QMatrix(tab) if tab and tab[0] else QMatrix.zeros(len(tab), self.dim(-abs(k)))
        return m if k >= 0 else m.T

    def form(self, j, u, k, v):
        """B(u, v) for sparse u in V_j, v in V_k."""
        if j + k != 0:
            return ZERO
        tab = self._pair_table(abs(j))
        if j >= 0:
            return sum((x * y * tab[a][b] for a, x in u.items() for b, y in v.items()), ZERO)
        return sum((x * y * tab[b][a] for a, x in u.items() for b, y in v.items()), ZERO)

    @property
    def pairing_tables(self):
        return {k: self.pairing_matrix(k) for k in range(self.max_degree + 1)}


def build_local_part(p):
    """Local part V_-1 + V_0 + V_1 of the algebra (N = 1)."""
    h = phi_map_vectors(p)
    return GradedAlgebra(p, 1, _local_side(p, 1, h), _local_side(p, -1, h), h)


def extend(alg, to_degree, cap=DEFAULT_CAP):
    """Return a new algebra extended to degrees |k| <= to_degree."""
    if to_degree > cap:
        raise TruncationLimit(f"max degree {to_degree} exceeds cap {cap}")
    if to_degree < alg.max_degree:
        raise ValueError("cannot extend to a lower degree")
    if to_degree == alg.max_degree:
        return alg
    pos, neg = alg._pos.copy(), alg._neg.copy()
    for k in range(alg.max_degree, to_degree):
        _grow(pos, k, alg.pentad, alg._h)
        _grow(neg, k, alg.pentad, alg._h)
    return GradedAlgebra(alg.pentad, to_degree, pos, neg, alg._h)


def build_algebra(p, max_degree=DEFAULT_MAX_DEGREE, cap=DEFAULT_CAP):
    if max_degree < 1:
        raise ValueError("max degree must be at least 1")
    return extend(build_local_part(p), max_degree, cap)


# -- reports ------------------------------------------------------------

def _fmt(w):
    return [str(x) for x in w]


@dataclass(frozen=True)
class StructureReport:
    dims_by_degree: dict
    finite: bool
    total_dim: Optional[int]
    lower_bound: int
    center_dim_degree0: int
    center_dims: dict
    root_multiplicities: tuple  # ((degree, weight), mult)
    decomposition: Optional[dict]
    max_degree: int

    @property
    def truncated(self):
        return not self.finite

    def to_json(self):
        out = {
            "dims": {str(k): v for k, v in sorted(self.dims_by_degree.items())},
            "finite": self.finite,
            "total_dim": self.total_dim,
            "center_dim_0": self.center_dim_degree0,
            "roots": [{"degree": d, "weight": _fmt(w), "mult": m}
                      for (d, w), m in self.root_multiplicities],
            "truncated": self.truncated,
            "max_degree": self.max_degree,
        }
        if not self.finite:
            out["total_dim_lower_bound"] = self.lower_bound
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition
        return out


def center_dims(alg):
    """Per degree, the dimension of the joint kernel of ad e_j and ad f_j.

    Only degrees where both brackets stay inside the truncation are
    reported.
    """
    n = alg.pentad.n
    out = {}
    for k in range(-alg.max_degree + 1, alg.max_degree):
        d = alg.dim(k)
        if d == 0:
            out[k] = 0
            continue
        rows = []
        for s in (1, -1):
            tgt = alg.dim(k + s)
            for i in range(n):
                block = [[ZERO] * d for _ in range(tgt)]
                for b in range(d):
                    for c, x in alg.bracket_basis(s, i, k, b).items():
                        block[c][b] = x
                rows.extend(block)
        out[k] = d - len(rref_rows(rows, d)[0]) if rows else d
    return out


def is_finite(alg):
    """Growth stopped: some degree m <= N has V_m = V_-m = 0."""
    return any(alg.dim(m) == 0 and alg.dim(-m) == 0 for m in range(1, alg.max_degree + 1))


def structure_report(alg, compare_contragredient=True):
    if alg.max_degree < 1 or alg._pos is None:
        raise NotFullyExtended("algebra has no local part")
    p = alg.pentad
    dims = alg.dims_by_degree()
    finite = is_finite(alg)
    total = sum(dims.values())
    centers = center_dims(alg) if alg.max_degree >= 1 else {}
    center0 = len(kernel_basis(p.D.T))
    if 0 in centers and centers[0] != center0:
        raise AssertionError("degree-0 joint kernel disagrees with ker transpose(D)")
    roots = {}
    for k in alg.degrees():
        if k == 0:
            continue
        for b in range(alg.dim(k)):
            key = (k, alg.weight(k, b))
            roots[key] = roots.get(key, 0) + 1
    decomposition = None
    rep = analyze(p)
    if rep.regular and compare_contragredient:
        from .constructions import from_contragredient
        q = from_contragredient(rep.cartan.C)
        other = build_algebra(q, alg.max_degree, cap=max(alg.max_degree, DEFAULT_CAP))
        od = other.dims_by_degree()
        matched = all(od[k] == dims[k] for k in dims if k != 0) and dims[0] - od[0] == p.r - p.n
        decomposition = {
            "claim": f"gl1^{p.r - p.n} + G(C)",
            "center_dim": p.r - p.n,
            "contragredient_dims": {str(k): v for k, v in sorted(od.items())},
            "dims_match": matched,
            "certified_by": "dimension comparison by degree",
        }
    return StructureReport(
        dims_by_degree=dims,
        finite=finite,
        total_dim=total if finite else None,
        lower_bound=total,
        center_dim_degree0=center0,
        center_dims=centers,
        root_multiplicities=tuple(sorted(roots.items())),
        decomposition=decomposition,
        max_degree=alg.max_degree,
    )


# -- verification -------------------------------------------------------

def _basis(alg):
    return [(k, b) for k in alg.degrees() for b in range(alg.dim(k))]


def _in_range(N, *ks):
    return all(abs(k) <= N for k in ks)


def jacobi_failures(alg, samples="all", seed=None):
    """Basis pairs/triples violating antisymmetry or the Jacobi identity."""
    N = alg.max_degree
    basis = _basis(alg)
    bad = []
    for (j, a), (k, b) in itertools.combinations_with_replacement(basis, 2):
        if not _in_range(N, j + k):
            continue
        lhs = alg.bracket_basis(j, a, k, b)
        rhs = _neg(alg.bracket_basis(k, b, j, a))
        if lhs != rhs:
            bad.append(("antisymmetry", (j, a), (k, b)))
    triples = [t for t in itertools.combinations_with_replacement(basis, 3)
               if _in_range(N, t[0][0] + t[1][0], t[0][0] + t[2][0],
                            t[1][0] + t[2][0], t[0][0] + t[1][0] + t[2][0])]
    if samples != "all" and samples < len(triples):
        triples = random.Random(seed).sample(triples, samples)
    one = Fraction(1)
    for (i, x), (j, y), (k, z) in triples:
        X, Y, Z = {x: one}, {y: one}, {z: one}
        lhs = alg.bracket_vec(i, X, j + k, alg.bracket_basis(j, y, k, z))
        rhs = alg.bracket_vec(i + j, alg.bracket_basis(i, x, j, y), k, Z)
        _axpy(rhs, alg.bracket_vec(j, Y, i + k, alg.bracket_basis(i, x, k, z)), one)
        if lhs != rhs:
            bad.append(("jacobi", (i, x), (j, y), (k, z)))
    return bad


def verify_jacobi(alg, samples="all", seed=None):
    return not jacobi_failures(alg, samples, seed)


def invariant_form_failures(alg):
    if not alg.pentad.symmetric:
        raise AsymmetricPentad("invariant form requires A symmetric")
    N = alg.max_degree
    bad = []
    for k in range(N + 1):
        M = alg.pairing_matrix(k)
        if rank(M) != alg.dim(k) or alg.dim(k) != alg.dim(-k):
            bad.append(("degenerate", k))
    basis = _basis(alg)
    one = Fraction(1)
    zero_md = (0,) * alg.pentad.n
    mdeg = {(k, b): alg.multidegree(k, b) for k, b in basis}
    for (i, x), (j, y) in itertools.product(basis, repeat=2):
        if not _in_range(N, i + j):
            continue
        for (k, z) in basis:
            if i + j + k != 0 or not _in_range(N, j + k):
                continue
            # both sides vanish unless the multidegrees cancel
            if tuple(a + b + c for a, b, c in zip(mdeg[(i, x)], mdeg[(j, y)], mdeg[(k, z)])) != zero_md:
                continue
            lhs = alg.form(i + j, alg.bracket_basis(i, x, j, y), k, {z: one})
            rhs = alg.form(i, {x: one}, j + k, alg.bracket_basis(j, y, k, z))
            if lhs != rhs:
                bad.append(("invariance", (i, x), (j, y), (k, z)))
    return bad


def verify_invariant_form(alg):
    return not invariant_form_failures(alg)


def transitivity_ranks(alg):
    """For each |k| >= 1, (dim V_k, rank of V_k -> Hom(V_-+1, V_k-+1))."""
    out = {}
    n = alg.pentad.n
    for k in alg.degrees():
        if k == 0 or alg.dim(k) == 0:
            continue
        s = -1 if k > 0 else 1
        d = alg.dim(k)
        tgt = alg.dim(k + s)
        rows = []
        for l in range(n):
            block = [[ZERO] * d for _ in range(tgt)]
            for b in range(d):
                for c, x in alg.bracket_basis(s, l, k, b).items():
                    block[c][b] = x
            rows.extend(block)
        out[k] = (d, len(rref_rows(rows, d)[0]))
    return out


def prehomogeneity_witness(alg, trials=20, seed=None):
    """An element x of V_1 with ad x : V_-1 -> V_0 injective, or None."""
    p = alg.pentad
    n, r = p.n, p.r
    if r < n:
        return None
    rng = random.Random(seed)
    candidates = [[Fraction(1)] * n]
    for _ in range(trials):
        candidates.append([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)])
    for c in candidates:
        x = {i: v for i, v in enumerate(c) if v}
        cols = []
        for l in range(n):
            img = alg.bracket_vec(1, x, -1, {l: Fraction(1)})
            cols.append([img.get(t, ZERO) for t in range(r)])
        if rank(QMatrix.from_columns(cols)) == n:
            return tuple(c)
    return None
