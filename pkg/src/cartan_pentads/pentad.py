"""Cartan-type pentads P(r, n; A, D, Gamma) and their matrix diagnostics."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (DimensionMismatch, InvalidPentad, NotAPermutation,
                     SingularGamma, SizeMismatch, TruncationLimit)
from .linalg import (QMatrix, block_diag, det, inverse, kernel_basis,
                     permutation_matrix, rank)


def _as_matrix(m):
    return m if isinstance(m, QMatrix) else QMatrix(m)


def _as_gamma(g, n=None):
    if isinstance(g, QMatrix):
        return g
    g = list(g)
    if g and not isinstance(g[0], (list, tuple)):
        return QMatrix.diag(g)
    return QMatrix(g)


@dataclass(frozen=True)
class Pentad:
    """Defining data of a pentad of Cartan type.

    ``A`` is r x r and invertible, ``D`` is r x n, ``Gamma`` is an n x n
    invertible diagonal matrix.  ``D[s, j]`` is the eigenvalue of the
    s-th toral generator on the j-th raising generator.
    """

    r: int
    n: int
    A: QMatrix
    D: QMatrix
    Gamma: QMatrix

    def __post_init__(self):
        if self.r < 1 or self.n < 1:
            raise DimensionMismatch("r and n must be positive")
        if self.A.shape != (self.r, self.r):
            raise DimensionMismatch(f"A must be {self.r}x{self.r}, got {self.A.shape}")
        if self.D.shape != (self.r, self.n):
            raise DimensionMismatch(f"D must be {self.r}x{self.n}, got {self.D.shape}")
        if self.Gamma.shape != (self.n, self.n):
            raise DimensionMismatch(f"Gamma must be {self.n}x{self.n}, got {self.Gamma.shape}")
        if not self.Gamma.is_diagonal():
            raise InvalidPentad("Gamma must be diagonal")
        if any(g == 0 for g in self.Gamma.diagonal()):
            raise SingularGamma("Gamma must have nonzero diagonal entries")
        if det(self.A) == 0:
            raise InvalidPentad("A must be invertible")

    @classmethod
    def build(cls, A, D, Gamma):
        """Construct from nested lists (or QMatrix); Gamma may be a flat diagonal."""
        A, D = _as_matrix(A), _as_matrix(D)
        return cls(A.rows, D.cols, A, D, _as_gamma(Gamma))

    @property
    def gamma(self):
        return self.Gamma.diagonal()

    @property
    def symmetric(self):
        return self.A.is_symmetric()

    def form_matrix(self):
        """Gram matrix of B_A on the toral part: ``transpose(A)^-1``."""
        return inverse(self.A.T)


@dataclass(frozen=True)
class CartanMatrix:
    C: QMatrix
    source: Optional[str] = None

    @property
    def n(self):
        return self.C.rows


@dataclass(frozen=True)
class PentadReport:
    cartan: CartanMatrix
    regular: bool
    rank_D: int
    ann_dim: int
    phi_image_dim: int
    transitive: bool
    symmetric: bool
    h_vectors: tuple
    det_C: Fraction = field(default=Fraction(0))

    def to_json(self):
        s = str
        return {
            "cartan": self.cartan.C.to_strings(),
            "det_cartan": s(self.det_C),
            "regular": self.regular,
            "rank_D": self.rank_D,
            "ann_dim": self.ann_dim,
            "phi_image_dim": self.phi_image_dim,
            "transitive": self.transitive,
            "symmetric": self.symmetric,
            "h_vectors": [[s(x) for x in h] for h in self.h_vectors],
        }


def cartan_matrix(p):
    """C(A, D, Gamma) = Gamma . transpose(D) . A . D."""
    return CartanMatrix(p.Gamma @ p.D.T @ p.A @ p.D, source="pentad")


def phi_map_vectors(p):
    """Toral images h_i = gamma_i * transpose(A) * (column i of D), in the epsilon basis."""
    At = p.A.T
    return [tuple(g * x for x in At.apply(p.D.col(i)))
            for i, g in enumerate(p.gamma)]


def analyze(p):
    C = cartan_matrix(p)
    rk = rank(p.D)
    zero_col = any(not any(p.D.col(j)) for j in range(p.n))
    dC = det(C.C)
    return PentadReport(
        cartan=C,
        regular=dC != 0,
        rank_D=rk,
        ann_dim=p.r - rk,
        phi_image_dim=rk,
        transitive=(rk == p.r and not zero_col),
        symmetric=p.symmetric,
        h_vectors=tuple(phi_map_vectors(p)),
        det_C=dC,
    )


def annihilator_basis(p):
    """Toral elements acting by zero on every generator: the kernel of transpose(D)."""
    return kernel_basis(p.D.T)


def direct_sum(p, q):
    return Pentad(p.r + q.r, p.n + q.n, block_diag(p.A, q.A),
                  block_diag(p.D, q.D), block_diag(p.Gamma, q.Gamma))


def shuffle_columns(p, pi, new_gamma=None):
    """Return P(r, n; A, D E_pi, Gamma') for a permutation ``pi`` of the columns."""
    E = permutation_matrix(pi)
    if E.rows != p.n:
        raise NotAPermutation(f"permutation has length {E.rows}, expected {p.n}")
    G = p.Gamma if new_gamma is None else _as_gamma(new_gamma)
    if G.shape != (p.n, p.n) or not G.is_diagonal():
        raise InvalidPentad("new Gamma must be an n x n diagonal matrix")
    if any(g == 0 for g in G.diagonal()):
        raise SingularGamma("new Gamma must be invertible")
    return Pentad(p.r, p.n, p.A, p.D @ E, G)


@dataclass(frozen=True)
class CartanEquivalence:
    """Outcome of :func:`cartan_equivalent`.  Truthy when a witness exists.

    With ``E = permutation_matrix(perm)`` the witness satisfies
    ``C1 = gamma . transpose(E) . C2 . E``.
    """

    equivalent: bool
    gamma: Optional[QMatrix] = None
    perm: Optional[tuple] = None

    def __bool__(self):
        return self.equivalent


MAX_EQUIVALENCE_SIZE = 10


def cartan_equivalent(C1, C2, max_size=MAX_EQUIVALENCE_SIZE):
    """Search all permutations and diagonal rescalings relating two Cartan matrices."""
    M1 = C1.C if isinstance(C1, CartanMatrix) else _as_matrix(C1)
    M2 = C2.C if isinstance(C2, CartanMatrix) else _as_matrix(C2)
    if not M1.is_square() or not M2.is_square():
        raise SizeMismatch("Cartan matrices must be square")
    if M1.rows != M2.rows:
        return CartanEquivalence(False)
    n = M1.rows
    if n > max_size:
        raise TruncationLimit(f"exhaustive search limited to n <= {max_size}")

    # sigma[i] is the row/column of C2 that lands at position i
    sigma = []
    used = [False] * n

    def row_ratio(i, upto):
        g = None
        for j in range(upto):
            a, b = M1[i, j], M2[sigma[i], sigma[j]]
            if (a == 0) != (b == 0):
                return False
            if a:
                q = a / b
                if g is None:
                    g = q
                elif g != q:
                    return False
        return True

    def consistent(k):
        # rows 0..k restricted to columns 0..k, and column k against rows 0..k
        for i in range(k + 1):
            if not row_ratio(i, k + 1):
                return False
        return True

    def search(k):
        if k == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            used[c] = True
            sigma.append(c)
            if consistent(k) and search(k + 1):
                return True
            sigma.pop()
            used[c] = False
        return False

    if not search(0):
        return CartanEquivalence(False)
    gammas = []
    for i in range(n):
        g = Fraction(1)
        for j in range(n):
            if M1[i, j]:
                g = M1[i, j] / M2[sigma[i], sigma[j]]
                break
        gammas.append(g)
    perm = [0] * n
    for i, s in enumerate(sigma):
        perm[s] = i + 1
    return CartanEquivalence(True, QMatrix.diag(gammas), tuple(perm))


def phi_pairing_identity_check(p):
    """Self-test tying the toral images h_i to the Cartan matrix.

    Checks, for all i and j, that h_i acts on e_j by C_ij and on f_j by
    -C_ij through the eigenvalue data D, and that B_A(h_i, h_j) = gamma_j C_ij.
    """
    C = cartan_matrix(p).C
    hs = phi_map_vectors(p)
    B = p.form_matrix()
    for i, h in enumerate(hs):
        Bh = B.T.apply(h)
        for j in range(p.n):
            ev = sum((h[s] * p.D[s, j] for s in range(p.r)), Fraction(0))
            if ev != C[i, j]:
                return False
            neg = sum((h[s] * -p.D[s, j] for s in range(p.r)), Fraction(0))
            if neg != -C[i, j]:
                return False
            if sum((Bh[s] * hs[j][s] for s in range(p.r)), Fraction(0)) != p.gamma[j] * C[i, j]:
                return False
    return True
