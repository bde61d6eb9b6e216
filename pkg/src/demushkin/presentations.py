"""One-relator pro-p presentations at finite rank.

Minimality, the power invariant q, abelianization, the cup-product Gram
form, the Demushkin decision, the classification families' relator
constructors, truncation towers, the open-subgroup rank formula, and the
index-p subgroup certificate computed through Reidemeister-Schreier
rewriting.  Also the line-oriented presentation file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import gfp
from .errors import DomainError, NotPrimeError, ParseError
from .forms import SkewForm, is_nondegenerate, t_invariant
from .modular import INFINITY, PrimePower, is_prime, p_valuation
from .words import (
    Commutator,
    GroupWord,
    Identity,
    Power,
    exponent_vector,
    gen,
    magnus_degree2,
    max_index,
    parse_word,
    product,
    project_word,
    rewrite_index_p,
    substitute,
    word_to_text,
)


@dataclass(frozen=True)
class Presentation:
    """The pro-p presentation <x_1..x_n | r> at a prime p."""

    p: int
    n: int
    relator: GroupWord

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrimeError(f"p = {self.p} is not prime")
        if self.n < 1:
            raise DomainError(f"generator count n = {self.n} must be >= 1")
        if isinstance(self.relator, Identity):
            raise DomainError("the relator must not be the identity word")
        m = max_index(self.relator)
        if m > self.n:
            raise DomainError(
                f"relator uses x{m} but the presentation has {self.n} generators"
            )


# --------------------------------------------------------------------------
# Invariants


def is_minimal(pres: Presentation) -> bool:
    """True when the relator lies in the Frattini subgroup: every exponent
    sum vanishes mod p."""
    return all(e % pres.p == 0 for e in exponent_vector(pres.relator, pres.n))


def _require_minimal(pres: Presentation):
    if not is_minimal(pres):
        raise DomainError(
            "the relator is not in the Frattini subgroup "
            "(some exponent sum is nonzero mod p)"
        )


def q_invariant(pres: Presentation) -> int:
    """p^h for the maximal h with the relator in F^{p^h}[F, F]; 0 when the
    relator lies in [F, F]."""
    _require_minimal(pres)
    eps = exponent_vector(pres.relator, pres.n)
    h = min((p_valuation(e, pres.p) for e in eps if e != 0), default=INFINITY)
    if h == INFINITY:
        return 0
    return pres.p ** int(h)


def abelianization(pres: Presentation) -> tuple[int, int]:
    """(torsion order, free rank) of G/[G, G] over Z_p; torsion 0 marks the
    torsion-free case."""
    _require_minimal(pres)
    q = q_invariant(pres)
    if q == 0:
        return (0, pres.n)
    return (q, pres.n - 1)


def cup_form(pres: Presentation) -> SkewForm:
    """The cup-product Gram matrix: entry (i, j) for i < j is the degree-2
    Magnus coefficient of the relator mod p, with the (j, i) entry forced
    skew; the diagonal is the (i, i) coefficient mod p (zero for odd p)."""
    _require_minimal(pres)
    p, n = pres.p, pres.n
    expansion = magnus_degree2(pres.relator, n)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = expansion.eps2[i][i] % p
        for j in range(i + 1, n):
            b = expansion.eps2[i][j] % p
            rows[i][j] = b
            rows[j][i] = (-b) % p
    return SkewForm.from_rows(rows, p)


def is_demushkin(pres: Presentation) -> bool:
    """Minimal with nondegenerate cup product.  (dim H^2 = 1 comes for free
    from the minimal one-relator shape.)"""
    return is_minimal(pres) and is_nondegenerate(cup_form(pres))


@dataclass(frozen=True)
class InvariantReport:
    p: int
    n: int
    minimal: bool
    q: Optional[int]
    abelianization: Optional[tuple[int, int]]
    gram: Optional[SkewForm]
    demushkin: bool
    t: Optional[int]

    def to_json_dict(self) -> dict:
        ab = None
        if self.abelianization is not None:
            ab = {"torsion": self.abelianization[0], "free_rank": self.abelianization[1]}
        return {
            "p": self.p,
            "n": self.n,
            "minimal": self.minimal,
            "q": self.q,
            "abelianization": ab,
            "gram": self.gram.to_json() if self.gram is not None else None,
            "demushkin": self.demushkin,
            "t": self.t,
        }


def analyze(pres: Presentation) -> InvariantReport:
    """Full invariant report; the q/abelianization/gram fields are null for
    non-minimal presentations, where they are undefined."""
    if not is_minimal(pres):
        return InvariantReport(pres.p, pres.n, False, None, None, None, False, None)
    gram = cup_form(pres)
    t = t_invariant(gram)[0] if pres.p == 2 else None
    return InvariantReport(
        p=pres.p,
        n=pres.n,
        minimal=True,
        q=q_invariant(pres),
        abelianization=abelianization(pres),
        gram=gram,
        demushkin=is_nondegenerate(gram),
        t=t,
    )


# --------------------------------------------------------------------------
# Relator constructors


def _check_q(q: int, p: int, allow_two: bool = False):
    if q == 0:
        return
    if q < 2:
        raise DomainError(f"q = {q} must be 0 or a power of p")
    h = p_valuation(q, p)
    if h == INFINITY or p ** int(h) != q:
        raise DomainError(f"q = {q} is not a power of p = {p}")
    if q == 2 and not allow_two:
        raise DomainError("q = 2 is excluded from this construction")


def canonical_relator(p: int, q: int, n: int) -> Presentation:
    """x_1^q [x_1, x_2] [x_3, x_4] ... [x_{n-1}, x_n], omitting the power
    when q = 0.  Requires q != 2 and even n >= 2."""
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    _check_q(q, p)
    if n < 2 or n % 2:
        raise DomainError(f"n = {n} must be even and >= 2")
    factors: list[GroupWord] = []
    if q:
        factors.append(Power(gen(1), q))
    factors.extend(Commutator(gen(2 * i - 1), gen(2 * i)) for i in range(1, n // 2 + 1))
    return Presentation(p, n, product(factors))


def relator_from_form(
    q: int, form: SkewForm, pivot: tuple[int, int] = (1, 2)
) -> Presentation:
    """x_1^q [x_1, x_2] prod_{2 <= i < j} [x_i, x_j]^(form entry).

    The form must be alternate and nondegenerate with the pivot pair
    arranged as a symplectic pair whose first member is orthogonal to all
    other basis vectors; a pivot other than (1, 2) is relabeled to the
    front.  Round trip: cup_form of the result equals the (relabeled) form.
    """
    p = form.p
    _check_q(q, p)
    if not form.is_alternate():
        raise DomainError("the form must be alternate")
    if not is_nondegenerate(form):
        raise DomainError("the form must be nondegenerate")
    n = form.n
    a, b = pivot
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise DomainError(f"bad pivot pair {pivot}")
    if form.gram[a - 1][b - 1] != 1:
        raise DomainError("the pivot pair must pair to 1")
    for j in range(n):
        if j not in (a - 1, b - 1) and form.gram[a - 1][j] != 0:
            raise DomainError(
                "the first pivot vector must be orthogonal to every "
                "non-pivot basis vector"
            )
    order = [a - 1, b - 1] + [j for j in range(n) if j not in (a - 1, b - 1)]
    factors: list[GroupWord] = []
    if q:
        factors.append(Power(gen(1), q))
    factors.append(Commutator(gen(1), gen(2)))
    for i in range(1, n):
        for j in range(i + 1, n):
            alpha = form.gram[order[i]][order[j]]
            if alpha:
                comm = Commutator(gen(i + 1), gen(j + 1))
                factors.append(comm if alpha == 1 else Power(comm, alpha))
    return Presentation(p, n, product(factors))


def _tail_commutators(
    coefficients: Optional[Mapping[tuple[int, int], int]],
    lowest: int,
    n: int,
) -> list[GroupWord]:
    if not coefficients:
        return []
    factors = []
    for (i, j) in sorted(coefficients):
        if not (lowest <= i < j <= n):
            raise DomainError(
                f"tail pair ({i}, {j}) must satisfy {lowest} <= i < j <= {n}"
            )
        c = coefficients[(i, j)] % 2
        if c:
            factors.append(Commutator(gen(i), gen(j)))
    return factors


def pro2_relator(
    case: Union[int, str],
    f_exponent: Optional[int],
    n: int,
    coefficients: Optional[Mapping[tuple[int, int], int]] = None,
) -> Presentation:
    """The pro-2 construction relators.

    Case 1: x_1^(2+2^f) [x_1, x_2] * tail on generators > 2.
    Case 2: x_1^2 [x_1, x_2] x_3^(2^f) [x_3, x_4] * tail on generators > 4.
    Case 3: x_1^2 x_2^(2^f) [x_2, x_3] * tail on generators > 3.
    Case t0: prod [x_i, x_j]^(c_ij) over the supplied coefficients.
    """
    case = str(case)
    if case not in ("1", "2", "3", "t0"):
        raise DomainError(f"case {case!r} must be one of 1, 2, 3, t0")
    if case != "t0":
        if f_exponent is None or f_exponent < 2:
            raise DomainError(f"f = {f_exponent} must be an integer >= 2")
    if case == "1":
        if n < 2:
            raise DomainError("case 1 needs n >= 2")
        head: list[GroupWord] = [
            Power(gen(1), 2 + 2**f_exponent),
            Commutator(gen(1), gen(2)),
        ]
        factors = head + _tail_commutators(coefficients, 3, n)
    elif case == "2":
        if n < 4:
            raise DomainError("case 2 needs n >= 4")
        head = [
            Power(gen(1), 2),
            Commutator(gen(1), gen(2)),
            Power(gen(3), 2**f_exponent),
            Commutator(gen(3), gen(4)),
        ]
        factors = head + _tail_commutators(coefficients, 5, n)
    elif case == "3":
        if n < 3:
            raise DomainError("case 3 needs n >= 3")
        head = [
            Power(gen(1), 2),
            Power(gen(2), 2**f_exponent),
            Commutator(gen(2), gen(3)),
        ]
        factors = head + _tail_commutators(coefficients, 4, n)
    else:
        factors = _tail_commutators(coefficients, 1, n)
        if not factors:
            raise DomainError("the t=0 relator needs at least one nonzero coefficient")
    return Presentation(2, n, product(factors))


def s_family_relator(q: int, q_prime: int, blocks: int) -> Presentation:
    """x_1^q [x_1, x_2] * prod_b x_{2b+1}^q' [x_{2b+1}, x_{2b+2}] with
    ``blocks`` primed blocks; q' must be a power of p exceeding q."""
    power = PrimePower.from_value(q_prime)
    p = power.p
    _check_q(q, p, allow_two=True)
    if q_prime <= q:
        raise DomainError(f"q' = {q_prime} must exceed q = {q}")
    if blocks < 1:
        raise DomainError(f"block count {blocks} must be >= 1")
    n = 2 * blocks + 2
    factors: list[GroupWord] = []
    if q:
        factors.append(Power(gen(1), q))
    factors.append(Commutator(gen(1), gen(2)))
    for b in range(1, blocks + 1):
        factors.append(Power(gen(2 * b + 1), q_prime))
        factors.append(Commutator(gen(2 * b + 1), gen(2 * b + 2)))
    return Presentation(p, n, product(factors))


# --------------------------------------------------------------------------
# Truncation towers and subgroups


def truncate(pres: Presentation, keep: Iterable[int]) -> Optional[Presentation]:
    """Project the relator onto the generators in ``keep`` (renumbered to
    1..|keep| in increasing order).  Returns None, the degenerate-truncation
    marker, when the relator projects to the identity; callers replicating
    the inverse-limit construction should widen the subset.
    """
    kept = sorted(set(keep))
    if not kept:
        raise DomainError("the kept generator subset must be nonempty")
    if kept[0] < 1 or kept[-1] > pres.n:
        raise DomainError(f"kept generators {kept} out of range 1..{pres.n}")
    projected = project_word(pres.relator, kept)
    if isinstance(projected, Identity):
        return None
    renumber = {old: gen(new + 1) for new, old in enumerate(kept)}
    return Presentation(pres.p, len(kept), substitute(projected, renumber))


def subgroup_rank(d: int, index: int) -> int:
    """Rank of an open index-``index`` subgroup of a Demushkin group of rank
    d: index (d - 2) + 2."""
    if d < 2:
        raise DomainError(f"rank d = {d} must be >= 2")
    if index < 1:
        raise DomainError(f"index {index} must be >= 1")
    return index * (d - 2) + 2


@dataclass(frozen=True)
class SubgroupReport:
    """Certificate data for the index-p subgroup cut out by a functional:
    s is the rank mod p of the rewritten relators' exponent vectors over the
    Schreier generators, h2 = p - s, and d_u = p(n-1) + 1 - s."""

    s: int
    h2: int
    d_u: int

    def to_json_dict(self) -> dict:
        return {"s": self.s, "h2": self.h2, "d_U": self.d_u}


def h2_of_index_p_subgroup(pres: Presentation, chi: Sequence[int]) -> SubgroupReport:
    """Rewrite the relator into ker(chi) and report (s, p - s, d(N) - s)."""
    _require_minimal(pres)
    if len(chi) != pres.n:
        raise DomainError(
            f"chi has {len(chi)} entries but the presentation has {pres.n} generators"
        )
    rewrite = rewrite_index_p(pres.relator, chi, pres.p)
    mat = gfp.as_matrix(rewrite.exponent_vectors(), pres.p)
    s = gfp.rank(mat, pres.p)
    p, n = pres.p, pres.n
    return SubgroupReport(s=s, h2=p - s, d_u=(p * (n - 1) + 1) - s)


# --------------------------------------------------------------------------
# Presentation files
#
#   p = <prime>
#   generators = <n>
#   relator = "<word>"
#
# Line-oriented ASCII; blank lines and lines starting with '#' are ignored.


def dump_presentation(pres: Presentation) -> str:
    text = word_to_text(pres.relator)
    return f'p = {pres.p}\ngenerators = {pres.n}\nrelator = "{text}"\n'


def load_presentation(text: str) -> Presentation:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key = key.strip()
        if key not in ("p", "generators", "relator"):
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value.strip()
    for key in ("p", "generators", "relator"):
        if key not in entries:
            raise ParseError(f"missing key {key!r}")
    try:
        p = int(entries["p"])
        n = int(entries["generators"])
    except ValueError as e:
        raise ParseError(f"p and generators must be integers: {e}")
    word_text = entries["relator"]
    if len(word_text) >= 2 and word_text[0] == '"' and word_text[-1] == '"':
        word_text = word_text[1:-1]
    if n < 1:
        raise DomainError(f"generator count n = {n} must be >= 1")
    relator = parse_word(word_text, n)
    return Presentation(p, n, relator)
