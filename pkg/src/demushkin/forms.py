"""Skew-symmetric bilinear forms over GF(p).

Gram-matrix representation (symmetric when p = 2, where nonalternate forms
occur), radicals, orthogonal projections, nondegenerate hulls of finite
vector sets, symplectic bases, the char-2 trichotomy invariant t, three
rule-defined form families on paired bases {v_i, u_i}, and a small-dimension
isometry search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import gfp
from .errors import DegenerateFormError, DomainError, SearchBoundError
from .modular import is_prime

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SkewForm:
    """An n x n Gram matrix over GF(p) with gram[i][j] = -gram[j][i].

    For p = 2 the contract is symmetry and the diagonal is free; for odd p
    skew-symmetry forces a zero diagonal, so these forms are alternate.
    """

    p: int
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        n = len(self.gram)
        if n == 0:
            raise DomainError("a form needs at least one basis vector")
        for row in self.gram:
            if len(row) != n:
                raise DomainError("Gram matrix must be square")
            for e in row:
                if not 0 <= e < self.p:
                    raise DomainError(f"entry {e} out of range [0, {self.p})")
        for i in range(n):
            for j in range(n):
                if (self.gram[i][j] + self.gram[j][i]) % self.p != 0:
                    raise DomainError(
                        f"not skew-symmetric at ({i}, {j}): "
                        f"{self.gram[i][j]} vs {self.gram[j][i]}"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], p: int) -> "SkewForm":
        """Build a form from any integer rows, reducing entries mod p."""
        return cls(p, tuple(tuple(int(e) % p for e in row) for row in rows))

    @classmethod
    def standard_symplectic(cls, p: int, n: int) -> "SkewForm":
        """Block form with pairs (1,2), (3,4), ...; n must be even."""
        if n % 2:
            raise DomainError(f"the standard symplectic form needs even n, got {n}")
        rows = [[0] * n for _ in range(n)]
        for i in range(0, n, 2):
            rows[i][i + 1] = 1
            rows[i + 1][i] = (-1) % p
        return cls.from_rows(rows, p)

    @property
    def n(self) -> int:
        return len(self.gram)

    def matrix(self) -> np.ndarray:
        return gfp.as_matrix(self.gram, self.p)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int(u @ self.matrix() @ v % self.p)

    def is_alternate(self) -> bool:
        return all(self.gram[i][i] == 0 for i in range(self.n))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.gram]


@dataclass(frozen=True)
class Subspace:
    """A subspace given by linearly independent basis rows over GF(p)."""

    p: int
    ambient_dim: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise DomainError("basis vector of wrong dimension")
        if self.basis:
            mat = gfp.as_matrix(self.basis, self.p)
            if gfp.rank(mat, self.p) != len(self.basis):
                raise DomainError("basis vectors are linearly dependent")

    @classmethod
    def from_rows(cls, rows, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, tuple(tuple(int(e) % p for e in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.basis:
            return all(e % self.p == 0 for e in v)
        mat = gfp.as_matrix(self.basis, self.p)
        stacked = np.vstack([mat, gfp.as_matrix([list(v)], self.p)])
        return gfp.rank(stacked, self.p) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


# --------------------------------------------------------------------------
# Radical, projections, hulls


def radical(form: SkewForm) -> Subspace:
    """Basis of {v : phi(v, .) = 0}; empty exactly when nondegenerate."""
    basis = gfp.nullspace(form.matrix().T, form.p)
    return Subspace.from_rows(basis, form.p, form.n)


def is_nondegenerate(form: SkewForm) -> bool:
    return radical(form).dim == 0


def project_onto(form: SkewForm, v: Sequence[int], subspace) -> Vector:
    """The unique u in the subspace with v - u orthogonal to it.

    Solves sum_i alpha_i phi(u_i, u_j) = phi(v, u_j); requires the restricted
    form to be nondegenerate.
    """
    rows = subspace.basis if isinstance(subspace, Subspace) else tuple(subspace)
    if not rows:
        return tuple([0] * form.n)
    B = gfp.as_matrix(rows, form.p)
    G = form.matrix()
    M = (B @ G @ B.T) % form.p
    if gfp.inverse(M, form.p) is None:
        raise DegenerateFormError("the form restricted to the subspace is degenerate")
    c = ((np.asarray(v, dtype=np.int64) % form.p) @ G @ B.T) % form.p
    alpha = gfp.solve(M.T, c, form.p)
    assert alpha is not None
    return tuple(int(e) for e in alpha @ B % form.p)


def nondegenerate_hull(form: SkewForm, vectors: Iterable[Sequence[int]]) -> Subspace:
    """A subspace containing ``vectors`` on which the form is nondegenerate.

    Follows the inductive construction: take the first unconsumed vector v;
    if phi(v, v) != 0 it spans a nondegenerate line, otherwise pair it with a
    partner u having phi(v, u) != 0; project the remaining vectors into the
    orthogonal complement and continue.  The result has dimension at most
    twice the number of input vectors.

    Degeneracy of the ambient form is detected lazily: the construction
    fails (raising ``DegenerateFormError``) exactly when some working vector
    has no pairing partner, i.e. lands in the radical.
    """
    p = form.p
    work = [np.asarray(v, dtype=np.int64) % p for v in vectors]
    for v in work:
        if v.shape != (form.n,):
            raise DomainError("hull vector of wrong dimension")
    blocks: list[np.ndarray] = []
    while True:
        work = [w for w in work if w.any()]
        if not work:
            break
        v = work.pop(0)
        if form.pairing(v, v) != 0:
            new_block = [v]
        else:
            partner = None
            for j in range(form.n):
                e_j = np.zeros(form.n, dtype=np.int64)
                e_j[j] = 1
                if form.pairing(v, e_j) != 0:
                    partner = e_j
                    break
            if partner is None:
                raise DegenerateFormError(
                    "a working vector lies in the radical; the ambient form "
                    "is degenerate there"
                )
            if blocks:
                proj = np.asarray(project_onto(form, partner, [tuple(b) for b in blocks]))
                partner = (partner - proj) % p
            new_block = [v, partner]
        blocks.extend(new_block)
        basis_rows = [tuple(b) for b in new_block]
        work = [
            (w - np.asarray(project_onto(form, w, basis_rows))) % p for w in work
        ]
    return Subspace.from_rows(blocks, p, form.n)


# --------------------------------------------------------------------------
# Symplectic bases


def symplectic_basis(form: SkewForm) -> tuple[Vector, ...]:
    """A basis (y_1, ..., y_n) with phi(y_{2i-1}, y_{2i}) = 1 and all other
    pairings zero; requires a nondegenerate alternate form.

    Pairs the lowest-index remaining basis vector first and picks its
    partner with the lowest index among valid ones, so the output is
    deterministic.
    """
    if not form.is_alternate():
        raise DomainError("symplectic bases require an alternate form (zero diagonal)")
    if not is_nondegenerate(form):
        raise DegenerateFormError("symplectic bases require a nondegenerate form")
    p = form.p
    out: list[np.ndarray] = []
    remaining = [np.eye(form.n, dtype=np.int64)[i] for i in range(form.n)]
    while remaining:
        v = remaining.pop(0)
        partner_at = None
        for j, w in enumerate(remaining):
            if form.pairing(v, w) != 0:
                partner_at = j
                break
        if partner_at is None:  # pragma: no cover - excluded by nondegeneracy
            raise DegenerateFormError("no symplectic partner found")
        w = remaining.pop(partner_at)
        w = (w * pow(form.pairing(v, w), -1, p)) % p
        out.extend([v, w])
        reduced = []
        for u in remaining:
            u2 = (u - form.pairing(u, w) * v + form.pairing(u, v) * w) % p
            reduced.append(u2)
        remaining = reduced
    return tuple(tuple(int(e) for e in b) for b in out)


# --------------------------------------------------------------------------
# The trichotomy invariant over GF(2)


def t_invariant(form: SkewForm) -> tuple[int, Subspace, Subspace]:
    """The invariant t together with its witnesses (A, A-perp) over GF(2).

    beta(v) = phi(v, v) is linear in characteristic 2; A = ker(beta) and
    A-perp is its orthogonal complement.  t is +1 if A = V or if
    0 != A-perp <= A, -1 if A-perp is not contained in A, and 0 if
    A-perp = 0.
    """
    if form.p != 2:
        raise DomainError("the t invariant is defined over GF(2) only")
    n = form.n
    diag = [[form.gram[i][i] for i in range(n)]]
    a_basis = gfp.nullspace(gfp.as_matrix(diag, 2), 2)
    a_space = Subspace.from_rows(a_basis, 2, n)
    if a_space.dim == 0:
        perp_basis = np.eye(n, dtype=np.int64)
    else:
        perp_basis = gfp.nullspace(gfp.as_matrix(a_basis, 2) @ form.matrix() % 2, 2)
    perp = Subspace.from_rows(perp_basis, 2, n)
    if a_space.dim == n:
        t = 1
    elif perp.dim == 0:
        t = 0
    elif a_space.contains_subspace(perp):
        t = 1
    else:
        t = -1
    return t, a_space, perp


# --------------------------------------------------------------------------
# The three rule-defined families over GF(2)


@dataclass(frozen=True)
class FormFamily:
    """One of the three rule-defined families on the paired basis
    {v_i, u_i : i >= 0} over GF(2), evaluated on demand.

    Family 1: phi(v_i, v_i) = phi(u_i, u_i) = 1, all other v-v and u-u
    pairings zero, phi(v_i, u_j) = 1 iff i < j.  Family 2: v-v zero, only
    phi(u_0, u_0) = 1 on the u side, phi(v_i, u_j) = 1 iff i < j.  Family 3:
    as family 2 with the inequality reversed, phi(v_i, u_j) = 1 iff i >= j.

    The reversed rule is inclusive: under a strict i > j the vector v_0
    would pair with nothing at all and stay in the radical of every
    truncation (and of the full form), so the tower of truncations could
    never cure it.  Inclusive reversal is the same rule after dropping the
    unpairable v_0 and renaming the rest.
    """

    family: int

    def __post_init__(self):
        if self.family not in (1, 2, 3):
            raise DomainError(f"family id {self.family} must be 1, 2, or 3")

    def pairing(self, a: tuple[str, int], b: tuple[str, int]) -> int:
        (ka, i), (kb, j) = a, b
        if ka == "u" and kb == "v":
            return self.pairing(b, a)
        if ka == "v" and kb == "v":
            return 1 if (self.family == 1 and i == j) else 0
        if ka == "u" and kb == "u":
            if self.family == 1:
                return 1 if i == j else 0
            return 1 if i == j == 0 else 0
        # v_i against u_j
        if self.family in (1, 2):
            return 1 if i < j else 0
        return 1 if i >= j else 0

    def truncate(self, n: int) -> SkewForm:
        """Gram of the first n index pairs, basis order (v_0..v_{n-1}, u_0..u_{n-1})."""
        if n < 1:
            raise DomainError(f"index count n = {n} must be >= 1")
        elements = [("v", i) for i in range(n)] + [("u", i) for i in range(n)]
        rows = [[self.pairing(a, b) for b in elements] for a in elements]
        return SkewForm.from_rows(rows, 2)


def family_form(family: int, n: int) -> SkewForm:
    return FormFamily(family).truncate(n)


# --------------------------------------------------------------------------
# Isometry testing at small dimension


_ISOMETRY_DIM_BOUND = 8


def isometric(f: SkewForm, g: SkewForm) -> Optional[tuple[Vector, ...]]:
    """An invertible T with T' Gram_f T = Gram_g (columns are images of the
    g-basis inside the f-space), or None when no isometry exists.

    Backtracking over basis images in lexicographic order, pruned by partial
    Gram agreement; refuses dimensions above 8.
    """
    if f.p != g.p:
        raise DomainError("forms live over different prime fields")
    if f.n != g.n:
        return None
    n = f.n
    if n > _ISOMETRY_DIM_BOUND:
        raise SearchBoundError(
            f"isometry search is capped at dimension {_ISOMETRY_DIM_BOUND}"
        )
    p = f.p
    if gfp.rank(f.matrix(), p) != gfp.rank(g.matrix(), p):
        return None
    if f.is_alternate() != g.is_alternate():
        return None

    G_f = f.matrix()
    G_g = g.matrix()
    chosen: list[np.ndarray] = []

    def candidates(depth: int):
        # Try e_depth first so equal forms yield the identity witness, then
        # every nonzero vector in lexicographic order.
        unit = np.zeros(n, dtype=np.int64)
        unit[depth] = 1
        yield unit
        vec = np.zeros(n, dtype=np.int64)
        for code in range(1, p**n):
            c = code
            for pos in range(n - 1, -1, -1):
                vec[pos] = c % p
                c //= p
            if not np.array_equal(vec, unit):
                yield vec.copy()

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in candidates(i):
            if f.pairing(cand, cand) != G_g[i, i]:
                continue
            ok = True
            for a in range(i):
                if f.pairing(chosen[a], cand) != G_g[a, i]:
                    ok = False
                    break
            if not ok:
                continue
            stack = np.vstack(chosen + [cand]) if chosen else cand.reshape(1, -1)
            if gfp.rank(stack, p) != i + 1:
                continue
            chosen.append(cand)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    T = np.vstack(chosen).T % p
    assert (T.T @ G_f @ T % p == G_g).all()
    return tuple(tuple(int(e) for e in row) for row in T)
