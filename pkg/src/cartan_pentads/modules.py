"""Positive and negative extensions of diagonal toral modules.

A base module is a sum of weight lines ``C u_t`` on which eps_s acts by
``lambda_t(eps_s)``.  The positive extension adds components U_1, U_2, ...
generated by the e_i, with U_{m+1} realized inside Hom(V_-1, U_m) exactly as
the algebra's own positive part is; f_l kills U_0.  The negative extension
is the mirror image, generated by the f_i with U_0 killed by the e_l.

Only the local part (degrees -1, 0, 1) of the algebra enters the
construction.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, TruncationLimit, WeightMismatch
from .linalg import QMatrix, parse_rational, rank, rref_rows

ZERO = Fraction(0)
DEFAULT_CAP = 12


@dataclass(frozen=True)
class WeightSpec:
    """Values lambda(eps_1), ..., lambda(eps_r) of a weight."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(parse_rational(x) for x in self.values))

    def __neg__(self):
        return WeightSpec(tuple(-x for x in self.values))

    def __len__(self):
        return len(self.values)


def _as_weights(u0):
    if isinstance(u0, WeightSpec):
        return [u0]
    u0 = list(u0)
    if u0 and isinstance(u0[0], (WeightSpec, list, tuple)):
        return [w if isinstance(w, WeightSpec) else WeightSpec(w) for w in u0]
    return [WeightSpec(u0)]


def _axpy(acc, vec, c):
    for k, v in vec.items():
        x = acc.get(k, ZERO) + c * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


class GradedModule:
    """Graded module U_0 + U_{+-1} + ... + U_{+-N} over a pentad's algebra.

    ``sign`` is +1 for a positive extension and -1 for a negative one;
    component m (0 <= m <= N) sits in degree ``sign * m``.
    """

    def __init__(self, pentad, sign, base, max_degree, weights, prov, raise_, lower):
        self.pentad = pentad
        self.sign = sign
        self.base = tuple(base)
        self.max_degree = max_degree
        self._weights = weights
        self._prov = prov
        self._raise = raise_
        self._lower = lower

    @property
    def direction(self):
        return "positive" if self.sign > 0 else "negative"

    @property
    def base_dim(self):
        return len(self.base)

    def _m(self, degree):
        m = degree * self.sign
        if m < 0 or m > self.max_degree:
            raise TruncationLimit(f"degree {degree} outside the module's range")
        return m

    def dim(self, degree):
        return len(self._weights[self._m(degree)])

    def degrees(self):
        return [self.sign * m for m in range(self.max_degree + 1)]

    def dims_by_degree(self):
        return {d: self.dim(d) for d in self.degrees()}

    @property
    def components(self):
        return {d: (self.dim(d), tuple(self._weights[self._m(d)])) for d in self.degrees()}

    def weight(self, degree, b):
        return self._weights[self._m(degree)][b]

    def provenance(self, degree, b):
        m = self._m(degree)
        return None if m == 0 else self._prov[m][b]

    @property
    def total_dim(self):
        return sum(len(w) for w in self._weights)

    @property
    def finite(self):
        return any(not self._weights[m] for m in range(1, self.max_degree + 1))

    def act(self, gen_sign, i, degree, b):
        """e_i (gen_sign=+1) or f_i (gen_sign=-1) applied to basis vector b."""
        m = self._m(degree)
        if gen_sign == self.sign:
            if m == self.max_degree:
                raise TruncationLimit("action leaves the truncated module")
            return dict(self._raise[m][(i, b)])
        if m == 0:
            return {}
        return dict(self._lower[m][b][i])

    def act_vec(self, gen_sign, i, degree, vec):
        out = {}
        for b, x in vec.items():
            _axpy(out, self.act(gen_sign, i, degree, b), x)
        return out

    def toral_act(self, h, degree, vec):
        """Action of a toral element h (epsilon coordinates)."""
        out = {}
        for b, x in vec.items():
            c = sum((a * w for a, w in zip(h, self.weight(degree, b))), ZERO)
            if c:
                out[b] = c * x
        return out


def _extend(alg, u0, to_degree, sign, cap):
    if to_degree > cap:
        raise TruncationLimit(f"max degree {to_degree} exceeds cap {cap}")
    if to_degree < 0:
        raise ValueError("degree must be nonnegative")
    p = alg.pentad
    n, r = p.n, p.r
    base = _as_weights(u0)
    for w in base:
        if len(w) != r:
            raise DimensionMismatch(f"weight must have {r} entries")
    hvecs = [tuple(h) for h in alg._h]
    gen_wt = [tuple(sign * x for x in p.D.col(i)) for i in range(n)]

    def shift(w, i, c=1):
        return tuple(a + c * b for a, b in zip(w, gen_wt[i]))

    weights = [[w.values for w in base]]
    prov = [None]
    raise_ = []
    lower = [None]
    for m in range(to_degree):
        cur = weights[m]
        by_wt = {}
        for b, w in enumerate(cur):
            by_wt.setdefault(w, []).append(b)
        htab = {w: [sum((a * x for a, x in zip(hvecs[i], w)), ZERO) for i in range(n)]
                for w in by_wt}

        def raise_prev(i, vec):
            out = {}
            for b, x in vec.items():
                _axpy(out, raise_[m - 1][(i, b)], x)
            return out

        targets = {}
        for i in range(n):
            for b, w in enumerate(cur):
                targets.setdefault(shift(w, i), []).append((i, b))
        new_w, new_prov, new_low = [], [], []
        raise_m = {}
        for t in sorted(targets):
            pairs = targets[t]
            coords = []
            for l in range(n):
                for c in by_wt.get(shift(t, l, -1), ()):
                    coords.append((l, c))
            index = {lc: k for k, lc in enumerate(coords)}
            cols = []
            for i, b in pairs:
                col = [ZERO] * len(coords)
                for l in range(n):
                    img = {}
                    if m > 0 and lower[m][b][l]:
                        img = raise_prev(i, lower[m][b][l])
                    if l == i:
                        coef = htab[cur[b]][i]
                        if coef:
                            _axpy(img, {b: Fraction(1)}, -sign * coef)
                    for c, x in img.items():
                        col[index[(l, c)]] += x
                cols.append(col)
            rows = [[cols[j][k] for j in range(len(pairs))] for k in range(len(coords))]
            pivots, reduced = rref_rows(rows, len(pairs))
            ids = []
            for pv in pivots:
                low = [dict() for _ in range(n)]
                for k, (l, c) in enumerate(coords):
                    if cols[pv][k]:
                        low[l][c] = cols[pv][k]
                new_w.append(t)
                new_prov.append(pairs[pv])
                new_low.append(low)
                ids.append(len(new_w) - 1)
            for j, pair in enumerate(pairs):
                raise_m[pair] = {ids[tr]: reduced[tr][j]
                                 for tr in range(len(pivots)) if reduced[tr][j]}
        raise_.append(raise_m)
        weights.append(new_w)
        prov.append(new_prov)
        lower.append(new_low)
    return GradedModule(p, sign, base, to_degree, weights, prov, raise_, lower)


def positive_extension(alg, u0, to_degree, cap=DEFAULT_CAP):
    """Module generated from the weight line(s) ``u0`` by the e_i, with f_l u0 = 0."""
    return _extend(alg, u0, to_degree, 1, cap)


def negative_extension(alg, u0, to_degree, cap=DEFAULT_CAP):
    """Module generated from the weight line(s) ``u0`` by the f_i, with e_l u0 = 0."""
    return _extend(alg, u0, to_degree, -1, cap)


@dataclass(frozen=True)
class ModulePairing:
    tables: dict  # m -> QMatrix on U_m x W_-m

    @property
    def full_rank(self):
        return all(M.rows == M.cols and rank(M) == M.rows for M in self.tables.values())


def module_pairing(pos, neg):
    """Invariant pairing between a positive extension and the matching negative one.

    The base lines pair to 1 and the form is extended by
    <e_i u, w> = -<u, e_i w>.
    """
    if pos.sign != 1 or neg.sign != -1:
        raise WeightMismatch("expected a positive and a negative extension")
    if pos.base_dim != neg.base_dim or any(
            tuple(-x for x in a.values) != b.values for a, b in zip(pos.base, neg.base)):
        raise WeightMismatch("negative base weights must be the negatives of the positive ones")
    N = min(pos.max_degree, neg.max_degree)
    k = pos.base_dim
    tables = {0: [[Fraction(int(a == b)) for b in range(k)] for a in range(k)]}
    for m in range(1, N + 1):
        prev = tables[m - 1]
        du, dw = pos.dim(m), neg.dim(-m)
        tab = [[ZERO] * dw for _ in range(du)]
        for a in range(du):
            i, a1 = pos.provenance(m, a)
            for q in range(dw):
                img = neg.act(1, i, -m, q)
                tab[a][q] = -sum((x * prev[a1][c] for c, x in img.items()), ZERO)
        tables[m] = tab
    out = {}
    for m, tab in tables.items():
        du, dw = pos.dim(m), neg.dim(-m)
        out[m] = QMatrix(tab) if du and dw else QMatrix.zeros(du, dw)
    return ModulePairing(out)
