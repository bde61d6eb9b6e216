"""Dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries reduced mod p.  Sizes here are
desk scale (dimensions well under a hundred), so plain Gauss-Jordan
elimination with exact integer arithmetic is all we need.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .errors import DomainError
from .modular import is_prime


def as_matrix(rows, p: int) -> np.ndarray:
    """Copy ``rows`` into an int64 matrix reduced mod p."""
    mat = np.array(rows, dtype=np.int64)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    return mat % p


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(p) and the pivot column list."""
    if not is_prime(p):
        raise DomainError(f"modulus {p} is not prime")
    mat = mat.copy() % p
    rows, cols = mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        pr = int(nz[0]) + r
        if pr != r:
            mat[[r, pr]] = mat[[pr, r]]
        mat[r] = (mat[r] * pow(int(mat[r, c]), -1, p)) % p
        for other in range(rows):
            if other != r and mat[other, c]:
                mat[other] = (mat[other] - mat[other, c] * mat[r]) % p
        pivots.append(c)
        r += 1
    return mat, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rows) of {x : mat @ x = 0} over GF(p)."""
    rows, cols = mat.shape
    reduced, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-reduced[r, fc]) % p
    return basis


def solve(mat: np.ndarray, rhs: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution of mat @ x = rhs over GF(p), or None if inconsistent.

    Free variables are set to zero.
    """
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1) % p
    aug = np.hstack([mat % p, rhs.reshape(-1, 1)])
    reduced, pivots = rref(aug, p)
    cols = mat.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r, cols]
    return x


def solve_lex_min(mat: np.ndarray, rhs: np.ndarray, p: int) -> Optional[np.ndarray]:
    """The lexicographically smallest solution of mat @ x = rhs over GF(p).

    Greedy: fixes x_0, x_1, ... in turn to the least residue keeping the
    system consistent.
    """
    mat = mat % p
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1) % p
    cols = mat.shape[1]
    if solve(mat, rhs, p) is None:
        return None
    fixed_rows: list[np.ndarray] = []
    fixed_rhs: list[int] = []
    for i in range(cols):
        row = np.zeros(cols, dtype=np.int64)
        row[i] = 1
        for value in range(p):
            trial = np.vstack([mat] + fixed_rows + [row])
            trial_rhs = np.concatenate([rhs, np.array(fixed_rhs + [value], dtype=np.int64)])
            if solve(trial, trial_rhs, p) is not None:
                fixed_rows.append(row)
                fixed_rhs.append(value)
                break
        else:  # pragma: no cover - a consistent system always extends
            return None
    return np.array(fixed_rhs, dtype=np.int64)


def inverse(mat: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Inverse over GF(p), or None for a singular matrix."""
    n = mat.shape[0]
    if mat.shape[0] != mat.shape[1]:
        raise DomainError("only square matrices have inverses")
    aug = np.hstack([mat % p, np.eye(n, dtype=np.int64)])
    reduced, pivots = rref(aug, p)
    if pivots != list(range(n)):
        return None
    return reduced[:, n:]
