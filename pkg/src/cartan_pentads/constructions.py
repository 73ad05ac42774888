"""Builders turning classical Cartan data into pentads.

Root norms use the normalization (long root, long root) = 2.  For a
finite-type Cartan matrix X with norms (a_i, a_i) the symmetrizer is
Gamma = diag(2 / (a_i, a_i)) and X' = X Gamma is symmetric.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (AsymmetricInputs, AsymmetricPentad, DimensionMismatch,
                     NegativeWeightEntry, NotRegular, NotSymmetrizable,
                     SingularInput)
from .linalg import QMatrix, block_compose, block_diag, det, inverse, parse_rational
from .pentad import CartanMatrix, Pentad, analyze, cartan_matrix
from .modules import WeightSpec


@dataclass(frozen=True)
class FiniteCartanData:
    X: QMatrix
    root_norms: tuple
    symmetrizer: QMatrix
    label: Optional[str] = None

    @property
    def rank(self):
        return self.X.rows

    @property
    def X_prime(self):
        return self.X @ self.symmetrizer


def cartan_data(X, root_norms, label=None):
    """Validate raw Cartan data and attach its symmetrizer."""
    X = X if isinstance(X, QMatrix) else QMatrix(X)
    norms = tuple(parse_rational(a) for a in root_norms)
    if not X.is_square() or len(norms) != X.rows:
        raise DimensionMismatch("X must be square with one root norm per row")
    if any(a <= 0 for a in norms):
        raise NotSymmetrizable("root norms must be positive")
    if any(X[i, i] != 2 for i in range(X.rows)):
        raise NotSymmetrizable("diagonal of a Cartan matrix must be 2")
    if any(X[i, j] > 0 for i in range(X.rows) for j in range(X.cols) if i != j):
        raise NotSymmetrizable("off-diagonal entries must be nonpositive")
    G = QMatrix.diag([2 / a for a in norms])
    if not (X @ G).is_symmetric():
        raise NotSymmetrizable("X . Gamma is not symmetric for the given root norms")
    return FiniteCartanData(X, norms, G, label)


def _dynkin(kind, l):
    """Root norms and edges (i, j) of the Dynkin diagram, zero-based, Bourbaki numbering."""
    chain = [(i, i + 1) for i in range(l - 1)]
    if kind == "A" and l >= 1:
        return [2] * l, chain
    if kind == "B" and l >= 2:
        return [2] * (l - 1) + [1], chain
    if kind == "C" and l >= 2:
        return [1] * (l - 1) + [2], chain
    if kind == "D" and l >= 4:
        return [2] * l, [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
    if kind == "E" and l in (6, 7, 8):
        edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, l - 1)]
        return [2] * l, edges
    if kind == "F" and l == 4:
        return [2, 2, 1, 1], chain
    if kind == "G" and l == 2:
        return [Fraction(2, 3), 2], chain
    raise DimensionMismatch(f"no finite type {kind}{l}")


def finite_cartan_data(kind, rank):
    """Cartan data of the simple Lie algebra of the given type and rank."""
    kind = kind.upper()
    norms, edges = _dynkin(kind, rank)
    norms = [Fraction(a) for a in norms]
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = norms[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(norms[i], norms[j]) / 2
    X = QMatrix([[2 * gram[i][j] / gram[i][i] for j in range(rank)] for i in range(rank)])
    return cartan_data(X, norms, label=f"{kind}{rank}")


# -- realizations -------------------------------------------------------

def from_contragredient(X):
    """P(l, l; X, I, I), whose Cartan matrix is X."""
    X = X if isinstance(X, QMatrix) else QMatrix(X)
    if not X.is_square():
        raise DimensionMismatch("X must be square")
    if det(X) == 0:
        raise SingularInput("X must be invertible")
    l = X.rows
    return Pentad(l, l, X, QMatrix.identity(l), QMatrix.identity(l))


def from_semisimple(data):
    """P(l, l; (X Gamma)^-1, X, Gamma); its Cartan matrix is X and h_i = eps_i."""
    if not data.X_prime.is_symmetric():
        raise NotSymmetrizable("X . Gamma is not symmetric")
    l = data.rank
    return Pentad(l, l, inverse(data.X_prime), data.X, data.symmetrizer)


def _check_sym_invertible(M, name):
    if not M.is_square():
        raise DimensionMismatch(f"{name} must be square")
    if not M.is_symmetric():
        raise AsymmetricInputs(f"{name} must be symmetric")
    if det(M) == 0:
        raise SingularInput(f"{name} must be invertible")


def from_reductive(k, data, A_Z=None):
    """Semisimple part from ``data`` plus a k-dimensional center with form A_Z."""
    if k == 0:
        return from_semisimple(data)
    A_Z = QMatrix.identity(k) if A_Z is None else (A_Z if isinstance(A_Z, QMatrix) else QMatrix(A_Z))
    if A_Z.shape != (k, k):
        raise DimensionMismatch(f"A_Z must be {k}x{k}")
    _check_sym_invertible(A_Z, "A_Z")
    l = data.rank
    A = block_diag(A_Z, inverse(data.X_prime))
    D = block_compose([[QMatrix.zeros(k, l)], [data.X]])
    return Pentad(k + l, l, A, D, data.symmetrizer)


def lowest_weight_table(weights, r=None):
    """r x k matrix whose j-th column holds the j-th weight's epsilon values."""
    if isinstance(weights, QMatrix):
        return weights
    cols = [w.values if isinstance(w, WeightSpec) else tuple(w) for w in weights]
    if not cols:
        return QMatrix.zeros(r or 0, 0)
    return QMatrix.from_columns(cols)


def chain_append_weights(p, weights):
    """Append weight columns to D and pad Gamma with an identity block."""
    if not p.symmetric:
        raise AsymmetricPentad("chain rule needs A symmetric")
    L = lowest_weight_table(weights, p.r)
    if L.cols == 0:
        return p
    if L.rows != p.r:
        raise DimensionMismatch(f"weights must have {p.r} entries")
    D = block_compose([[p.D, L]])
    G = block_diag(p.Gamma, QMatrix.identity(L.cols))
    return Pentad(p.r, p.n + L.cols, p.A, D, G)


def scalar_augmented_block_formula(p, L, A_tilde):
    """The 2 x 2 block form of the augmented Cartan matrix, computed from its blocks."""
    C = cartan_matrix(p).C
    return block_compose([
        [C, p.Gamma @ p.D.T @ p.A @ L],
        [L.T @ p.A @ p.D, A_tilde + L.T @ p.A @ L],
    ])


def scalar_augmented_embedding(p, weights, A_tilde=None):
    """Embed a regular pentad plus k weight lines into a regular square pentad.

    Returns ``(pentad, cartan)`` with pentad
    P(r+k, r+k; diag(A~, A), [[O, I_k], [D, L]], diag(Gamma, I_k)).
    """
    L = lowest_weight_table(weights, p.r)
    k = L.cols
    if k == 0:
        return p, cartan_matrix(p)
    if p.r != p.n:
        raise NotRegular("pentad must be square (r = n)")
    if not analyze(p).regular:
        raise NotRegular("pentad must have an invertible Cartan matrix")
    if not p.symmetric:
        raise AsymmetricInputs("A must be symmetric")
    if L.rows != p.r:
        raise DimensionMismatch(f"weights must have {p.r} entries")
    A_tilde = QMatrix.identity(k) if A_tilde is None else (
        A_tilde if isinstance(A_tilde, QMatrix) else QMatrix(A_tilde))
    if A_tilde.shape != (k, k):
        raise DimensionMismatch(f"A~ must be {k}x{k}")
    _check_sym_invertible(A_tilde, "A~")
    r = p.r
    A = block_diag(A_tilde, p.A)
    D = block_compose([[QMatrix.zeros(k, r), QMatrix.identity(k)], [p.D, L]])
    G = block_diag(p.Gamma, QMatrix.identity(k))
    q = Pentad(r + k, r + k, A, D, G)
    C = cartan_matrix(q)
    if C.C != scalar_augmented_block_formula(p, L, A_tilde):
        raise AssertionError("augmented Cartan matrix disagrees with its block form")
    return q, CartanMatrix(C.C, source="scalar_augmented_embedding")


def _nonneg_table(N_table):
    N = N_table if isinstance(N_table, QMatrix) else QMatrix(N_table)
    for x in N.entries:
        if x < 0 or x.denominator != 1:
            raise NegativeWeightEntry("weight entries must be nonnegative integers")
    return N


def reductive_rep_block_formula(data, N_table, A_Z):
    X, Gi = data.X, inverse(data.symmetrizer)
    L = -N_table
    return block_compose([
        [X, L],
        [L.T @ Gi, A_Z + L.T @ Gi @ inverse(X) @ L],
    ])


def reductive_rep_embedding(data, N_table, A_Z):
    """Pentad of a reductive algebra acting on k lowest-weight lines, with full scalars.

    Column j of ``N_table`` lists the values -lambda_j(h_i) >= 0.
    """
    N = _nonneg_table(N_table)
    if N.rows != data.rank:
        raise DimensionMismatch(f"weight table must have {data.rank} rows")
    A_Z = A_Z if isinstance(A_Z, QMatrix) else QMatrix(A_Z)
    if A_Z.shape != (N.cols, N.cols):
        raise DimensionMismatch(f"A_Z must be {N.cols}x{N.cols}")
    if det(A_Z) == 0:
        raise SingularInput("A_Z must be invertible")
    q, C = scalar_augmented_embedding(from_semisimple(data), -N, A_Z)
    if C.C != reductive_rep_block_formula(data, N, A_Z):
        raise AssertionError("embedding Cartan matrix disagrees with its block form")
    return q, CartanMatrix(C.C, source="reductive_rep_embedding")


@dataclass(frozen=True)
class CsFamilyMember:
    cartan: CartanMatrix
    det: Fraction
    singular_values: tuple
    A_tilde: Fraction
    pentad: Optional[Pentad]


def cs_family(data, n_vec, s):
    """One-parameter family of (l+1)-square Cartan matrices with corner entry s."""
    s = parse_rational(s)
    n_vec = [parse_rational(x) for x in n_vec]
    if len(n_vec) != data.rank:
        raise DimensionMismatch(f"need {data.rank} weight entries")
    N = _nonneg_table([[x] for x in n_vec])
    Gi = inverse(data.symmetrizer)
    shift = ((-N).T @ Gi @ inverse(data.X) @ (-N))[0, 0]
    A_tilde = s - shift

    def C_at(t):
        return reductive_rep_block_formula(data, N, QMatrix([[t - shift]]))

    C = C_at(s)
    d = det(C)
    # det is affine in s with slope det X
    d0, d1 = det(C_at(Fraction(0))), det(C_at(Fraction(1)))
    singular = (-d0 / (d1 - d0),) if d1 != d0 else ()
    pentad = None
    if A_tilde != 0:
        pentad, C2 = reductive_rep_embedding(data, N, QMatrix([[A_tilde]]))
        if C2.C != C:
            raise AssertionError("cs_family matrix disagrees with the embedding")
    return CsFamilyMember(CartanMatrix(C, source="cs_family"), d, singular, A_tilde, pentad)


def weight_from_coroot_values(data, n_vec):
    """Weight with lambda(h_i) = -n_i, in the epsilon basis of :func:`from_semisimple`."""
    if len(n_vec) != data.rank:
        raise DimensionMismatch(f"need {data.rank} values")
    # in that realization h_i = eps_i, so the coordinates are read off directly
    return WeightSpec(tuple(-parse_rational(x) for x in n_vec))
