"""Independent oracles and random generators shared by the tests.

The oracles deliberately avoid the library's code paths: the Magnus oracle
multiplies truncated noncommutative polynomials term by term, the t oracle
enumerates vectors as sets, and the character oracle brute-forces all value
tuples.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from demushkin.words import (
    Generator,
    GroupWord,
    Inverse,
    Power,
    flatten,
    product,
)
from demushkin.forms import SkewForm
from demushkin.presentations import Presentation
from demushkin.words import exponent_vector


# --------------------------------------------------------------------------
# Truncated noncommutative power-series oracle for the Magnus expansion.
# A series is a dict: () -> constant, (i,) -> linear, (i, j) -> quadratic.


def series_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = ka + kb
            if len(key) > 2:
                continue
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v != 0}


def letter_series(index: int, sign: int) -> dict:
    if sign > 0:
        return {(): 1, (index,): 1}
    return {(): 1, (index,): -1, (index, index): 1}


def magnus_oracle(word: GroupWord, n: int) -> tuple[tuple[int, ...], list[list[int]]]:
    """Degree-2 coefficients by generic polynomial multiplication."""
    series = {(): 1}
    for (index, sign) in flatten(word):
        series = series_mul(series, letter_series(index, sign))
    eps = tuple(series.get((i,), 0) for i in range(1, n + 1))
    eps2 = [[series.get((i, j), 0) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return eps, eps2


# --------------------------------------------------------------------------
# Exhaustive set-based oracle for the t invariant over GF(2).


def all_vectors(p: int, n: int):
    return [tuple(v) for v in itertools.product(range(p), repeat=n)]


def t_oracle(form: SkewForm) -> int:
    """t by brute enumeration of all 2^n vectors (pairings batched)."""
    import numpy as np

    n = form.n
    V = np.array(all_vectors(2, n), dtype=np.int64)
    P = V @ form.matrix() @ V.T % 2
    beta = np.diag(P)
    a_rows = np.where(beta == 0)[0]
    a_set = {tuple(int(e) for e in V[i]) for i in a_rows}
    if len(a_rows):
        perp_mask = (P[a_rows, :] == 0).all(axis=0)
    else:
        perp_mask = np.ones(len(V), dtype=bool)
    perp = {tuple(int(e) for e in V[i]) for i in np.where(perp_mask)[0]}
    zero = tuple([0] * n)
    full = set(all_vectors(2, n))
    if a_set == full:
        return 1
    if perp != {zero} and perp <= a_set:
        return 1
    if not perp <= a_set:
        return -1
    return 0


def functionals(p: int, n: int):
    """All nonzero functionals over GF(p) up to scaling (first nonzero = 1)."""
    out = []
    for raw in itertools.product(range(p), repeat=n):
        if not any(raw):
            continue
        first = next(c for c in raw if c)
        if first != 1:
            continue
        out.append(raw)
    return out


# --------------------------------------------------------------------------
# Random words and presentations.


def random_word(rng: random.Random, n: int, length: int) -> GroupWord:
    atoms = []
    for _ in range(length):
        i = rng.randint(1, n)
        atoms.append(Generator(i) if rng.random() < 0.5 else Inverse(Generator(i)))
    return product(atoms)


def random_minimal_presentation(
    rng: random.Random, p: int, n: int, base_length: int
) -> Presentation:
    """A random word corrected with trailing powers so every exponent sum
    vanishes mod p (hence a minimal one-relator presentation)."""
    base = random_word(rng, n, base_length)
    eps = exponent_vector(base, n)
    atoms: list[GroupWord] = [base]
    for i, e in enumerate(eps, start=1):
        fix = (-e) % p
        if fix:
            atoms.append(Power(Generator(i), fix))
    return Presentation(p, n, product(atoms))


def random_alternate_form(rng: random.Random, p: int, n: int) -> SkewForm:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = rng.randrange(p)
            rows[i][j] = c
            rows[j][i] = (-c) % p
    return SkewForm.from_rows(rows, p)


def random_nondegenerate_alternate(
    rng: random.Random, p: int, n: int, tries: int = 200
) -> Optional[SkewForm]:
    from demushkin.forms import is_nondegenerate

    for _ in range(tries):
        form = random_alternate_form(rng, p, n)
        if is_nondegenerate(form):
            return form
    return None


def sigma_of_word(word: GroupWord, values, modulus: int) -> int:
    """Product of character values along a word (the group image of w)."""
    s = 1
    for (i, sign) in flatten(word):
        v = values[i - 1] % modulus
        if sign < 0:
            v = pow(v, -1, modulus)
        s = (s * v) % modulus
    return s
