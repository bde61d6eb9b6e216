"""Free-group words over generators x1..xn.

Parsing, flattening to letter strings, exponent vectors, degree-2 Magnus
coefficients, character-evaluated Fox derivatives, projection and
substitution homomorphisms, and Reidemeister-Schreier rewriting of a relator
into an index-p subgroup.

The commutator convention is [a, b] = a^-1 b^-1 a b, so that the degree-2
coefficient of [x_i, x_j] at the ordered pair (i, j) with i < j is +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, GeneratorRangeError, NotAUnitError, WordSyntaxError
from .modular import inv_mod


# --------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Identity:
    def __repr__(self):
        return "Identity()"


@dataclass(frozen=True)
class Generator:
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise DomainError(f"generator index {self.index} must be >= 1")


@dataclass(frozen=True)
class Inverse:
    body: "GroupWord"


@dataclass(frozen=True)
class Power:
    body: "GroupWord"
    exponent: int


@dataclass(frozen=True)
class Commutator:
    left: "GroupWord"
    right: "GroupWord"


@dataclass(frozen=True)
class Product:
    factors: tuple["GroupWord", ...]


GroupWord = Union[Identity, Generator, Inverse, Power, Commutator, Product]

IDENTITY = Identity()

#: One signed letter: (generator index, +1 or -1).
Letter = tuple[int, int]
LetterString = tuple[Letter, ...]


def gen(index: int) -> Generator:
    return Generator(index)


def product(factors: Iterable[GroupWord]) -> GroupWord:
    """Product of words, dropping identity factors and unwrapping singletons."""
    kept = tuple(f for f in factors if not isinstance(f, Identity))
    if not kept:
        return IDENTITY
    if len(kept) == 1:
        return kept[0]
    return Product(kept)


def max_index(w: GroupWord) -> int:
    """Largest generator index occurring in w (0 for the identity)."""
    if isinstance(w, Identity):
        return 0
    if isinstance(w, Generator):
        return w.index
    if isinstance(w, (Inverse, Power)):
        return max_index(w.body)
    if isinstance(w, Commutator):
        return max(max_index(w.left), max_index(w.right))
    return max((max_index(f) for f in w.factors), default=0)


# --------------------------------------------------------------------------
# Parsing
#
# word     := atom (WS atom)*
# atom     := factor ("^" sint)?
# factor   := gen | "[" word "," word "]" | "(" word ")"
# gen      := "x" uint
# sint     := "-"? uint
#
# Whitespace separates atoms and "*" counts as whitespace.  Tokens are
# self-delimiting, so adjacent atoms without separators are also accepted.


@dataclass(frozen=True)
class _Token:
    kind: str  # "gen", "int", or a literal "^[](),"
    value: int
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in " \t*":
            i += 1
            continue
        if c == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise WordSyntaxError("expected digits after 'x'", i)
            tokens.append(_Token("gen", int(text[i + 1 : j]), i))
            i = j
            continue
        if c in "^[](),":
            tokens.append(_Token(c, 0, i))
            i += 1
            continue
        if c == "-" or c.isdigit():
            j = i + 1 if c == "-" else i
            k = j
            while k < len(text) and text[k].isdigit():
                k += 1
            if k == j:
                raise WordSyntaxError("expected digits in exponent", i)
            tokens.append(_Token("int", int(text[i:k]), i))
            i = k
            continue
        raise WordSyntaxError(f"unexpected character {c!r}", i)
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.at = 0

    def peek(self):
        return self.tokens[self.at] if self.at < len(self.tokens) else None

    def take(self, kind: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise WordSyntaxError(f"expected {kind!r}, found end of input", len(self.text))
        if tok.kind != kind:
            raise WordSyntaxError(f"expected {kind!r}, found {tok.kind!r}", tok.pos)
        self.at += 1
        return tok

    def word(self) -> GroupWord:
        atoms = [self.atom()]
        while (tok := self.peek()) is not None and tok.kind in ("gen", "[", "("):
            atoms.append(self.atom())
        return product(atoms)

    def atom(self) -> GroupWord:
        w = self.factor()
        if (tok := self.peek()) is not None and tok.kind == "^":
            self.take("^")
            e = self.take("int")
            return Power(w, e.value)
        return w

    def factor(self) -> GroupWord:
        tok = self.peek()
        if tok is None:
            raise WordSyntaxError("expected a generator, '[' or '('", len(self.text))
        if tok.kind == "gen":
            self.take("gen")
            if not 1 <= tok.value <= self.n:
                raise GeneratorRangeError(
                    f"generator x{tok.value} out of range 1..{self.n} "
                    f"(at position {tok.pos})"
                )
            return Generator(tok.value)
        if tok.kind == "[":
            self.take("[")
            left = self.word()
            self.take(",")
            right = self.word()
            self.take("]")
            return Commutator(left, right)
        if tok.kind == "(":
            self.take("(")
            inner = self.word()
            self.take(")")
            return inner
        raise WordSyntaxError(f"unexpected {tok.kind!r}", tok.pos)


def parse_word(text: str, n: int) -> GroupWord:
    """Parse a word over x1..xn; raises WordSyntaxError / GeneratorRangeError."""
    parser = _Parser(text, n)
    w = parser.word()
    if (tok := parser.peek()) is not None:
        raise WordSyntaxError(f"unexpected trailing {tok.kind!r}", tok.pos)
    return w


# --------------------------------------------------------------------------
# Rendering (inverse of parse_word for the constructors' outputs)


def word_to_text(w: GroupWord) -> str:
    if isinstance(w, Identity):
        raise DomainError("the identity word has no text form")
    if isinstance(w, Generator):
        return f"x{w.index}"
    if isinstance(w, Power):
        return f"{_factor_text(w.body)}^{w.exponent}"
    if isinstance(w, Inverse):
        return f"{_factor_text(w.body)}^-1"
    if isinstance(w, Commutator):
        return f"[{word_to_text(w.left)},{word_to_text(w.right)}]"
    return " ".join(_atom_text(f) for f in w.factors)


def _factor_text(w: GroupWord) -> str:
    if isinstance(w, (Generator, Commutator)):
        return word_to_text(w)
    return f"({word_to_text(w)})"


def _atom_text(w: GroupWord) -> str:
    if isinstance(w, Product):
        return f"({word_to_text(w)})"
    return word_to_text(w)


# --------------------------------------------------------------------------
# Flattening


def invert_letters(letters: Sequence[Letter]) -> LetterString:
    return tuple((i, -s) for (i, s) in reversed(letters))


def flatten(w: GroupWord) -> LetterString:
    """Fully expanded letter sequence; no free cancellation is performed."""
    if isinstance(w, Identity):
        return ()
    if isinstance(w, Generator):
        return ((w.index, 1),)
    if isinstance(w, Inverse):
        return invert_letters(flatten(w.body))
    if isinstance(w, Power):
        base = flatten(w.body)
        e = w.exponent
        if e < 0:
            base = invert_letters(base)
            e = -e
        return base * e
    if isinstance(w, Commutator):
        a = flatten(w.left)
        b = flatten(w.right)
        return invert_letters(a) + invert_letters(b) + a + b
    out: list[Letter] = []
    for f in w.factors:
        out.extend(flatten(f))
    return tuple(out)


def free_reduce(letters: Sequence[Letter]) -> LetterString:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _check_range(w: GroupWord, n: int):
    m = max_index(w)
    if m > n:
        raise DomainError(f"word uses x{m} but only {n} generators are declared")


# --------------------------------------------------------------------------
# Exponent vectors and the degree-2 Magnus expansion


def exponent_vector(w: GroupWord, n: int) -> tuple[int, ...]:
    """Signed letter counts per generator; commutators contribute zero."""
    _check_range(w, n)
    eps = [0] * n
    for (i, s) in flatten(w):
        eps[i - 1] += s
    return tuple(eps)


@dataclass(frozen=True)
class DegreeTwoExpansion:
    """Coefficients of 1 + sum eps_i X_i + sum eps2[i][j] X_i X_j.

    Indices are 0-based; entry [i][j] belongs to the ordered generator pair
    (x_{i+1}, x_{j+1}).  All values are exact integers.
    """

    eps: tuple[int, ...]
    eps2: tuple[tuple[int, ...], ...]


def magnus_degree2(w: GroupWord, n: int) -> DegreeTwoExpansion:
    """Degree-2 Magnus coefficients via the concatenation recurrence.

    For u.v: eps_ij(uv) = eps_ij(u) + eps_ij(v) + eps_i(u) * eps_j(v); the
    letter x_i contributes eps_i = 1 and the letter x_i^-1 contributes
    eps_i = -1 together with eps_ii = +1.
    """
    _check_range(w, n)
    eps = [0] * n
    eps2 = [[0] * n for _ in range(n)]
    for (idx, sign) in flatten(w):
        j = idx - 1
        for a in range(n):
            if eps[a]:
                eps2[a][j] += eps[a] * sign
        if sign < 0:
            eps2[j][j] += 1
        eps[j] += sign
    return DegreeTwoExpansion(tuple(eps), tuple(tuple(row) for row in eps2))


# --------------------------------------------------------------------------
# Fox derivatives evaluated through a character


def fox_eval(w: GroupWord, values: Sequence[int], modulus: int) -> tuple[int, ...]:
    """Character-evaluated Fox coefficients of w.

    ``values[i]`` is the image of x_{i+1} in (Z/modulus)^*.  A crossed
    homomorphism D with D(x_i) = d_i satisfies D(w) = sum c_i d_i for the
    returned coefficients c.
    """
    n = len(values)
    _check_range(w, n)
    if modulus < 2:
        raise DomainError(f"modulus {modulus} must be >= 2")
    values = [v % modulus for v in values]
    inverses = []
    for v in values:
        try:
            inverses.append(inv_mod(v, modulus))
        except NotAUnitError:
            raise NotAUnitError(f"character value {v} is not a unit mod {modulus}")
    coeffs = [0] * n
    s = 1
    for (idx, sign) in flatten(w):
        j = idx - 1
        if sign > 0:
            coeffs[j] = (coeffs[j] + s) % modulus
            s = (s * values[j]) % modulus
        else:
            s = (s * inverses[j]) % modulus
            coeffs[j] = (coeffs[j] - s) % modulus
    return tuple(coeffs)


# --------------------------------------------------------------------------
# Homomorphisms: projection and substitution


def project_word(w: GroupWord, keep: Iterable[int]) -> GroupWord:
    """Image of w under x_i -> x_i for i in ``keep`` and x_i -> 1 otherwise.

    Collapsed subterms (empty commutators, empty products, trivial powers)
    simplify to the identity.
    """
    kept = set(keep)
    return _project(w, kept)


def _project(w: GroupWord, kept: set) -> GroupWord:
    if isinstance(w, Identity):
        return IDENTITY
    if isinstance(w, Generator):
        return w if w.index in kept else IDENTITY
    if isinstance(w, Inverse):
        body = _project(w.body, kept)
        return IDENTITY if isinstance(body, Identity) else Inverse(body)
    if isinstance(w, Power):
        body = _project(w.body, kept)
        if isinstance(body, Identity) or w.exponent == 0:
            return IDENTITY
        return Power(body, w.exponent)
    if isinstance(w, Commutator):
        left = _project(w.left, kept)
        right = _project(w.right, kept)
        if isinstance(left, Identity) or isinstance(right, Identity):
            return IDENTITY
        return Commutator(left, right)
    return product(_project(f, kept) for f in w.factors)


def substitute(w: GroupWord, images: Mapping[int, GroupWord]) -> GroupWord:
    """Homomorphic image of w sending x_i to images[i]."""
    if isinstance(w, Identity):
        return IDENTITY
    if isinstance(w, Generator):
        if w.index not in images:
            raise DomainError(f"no image supplied for x{w.index}")
        return images[w.index]
    if isinstance(w, Inverse):
        return Inverse(substitute(w.body, images))
    if isinstance(w, Power):
        return Power(substitute(w.body, images), w.exponent)
    if isinstance(w, Commutator):
        return Commutator(substitute(w.left, images), substitute(w.right, images))
    return product(substitute(f, images) for f in w.factors)


# --------------------------------------------------------------------------
# Reidemeister-Schreier rewriting for index-p subgroups


@dataclass(frozen=True)
class SchreierRewrite:
    """A relator rewritten into the index-p subgroup ker(chi).

    The subgroup is free on the Schreier generators t = y^p and
    w[k, i] = y^k z_i y^-k (0 <= k < p, i running over non-pivot
    generators), where y is the pivot generator and z_i = x_i y^-chi(x_i)
    is the chi-kernel basis.  ``relators`` holds the p conjugates
    y^k r y^-k written over 1-based label numbers into ``labels``.
    """

    prime: int
    n: int
    pivot: int
    chi: tuple[int, ...]
    labels: tuple[tuple, ...]
    relators: tuple[LetterString, ...]

    def __post_init__(self):
        if len(self.relators) != self.prime:
            raise DomainError("a rewrite carries exactly p rewritten relators")
        if len(self.labels) != self.prime * (self.n - 1) + 1:
            raise DomainError("label count must be p(n-1) + 1")

    @property
    def label_count(self) -> int:
        return len(self.labels)

    def label_text(self, label: tuple) -> str:
        if label[0] == "t":
            return "t"
        return f"w[{label[1]},{label[2]}]"

    def exponent_vectors(self) -> list[list[int]]:
        """Signed label counts of each rewritten relator (exact integers)."""
        out = []
        for rel in self.relators:
            row = [0] * self.label_count
            for (label_no, sign) in rel:
                row[label_no - 1] += sign
            out.append(row)
        return out


def rewrite_index_p(r: GroupWord, chi: Sequence[int], p: int) -> SchreierRewrite:
    """Rewrite r into the index-p subgroup cut out by the functional chi.

    chi is a nonzero vector over GF(p) of length n that must vanish on the
    exponent vector of r (automatic for r in the Frattini subgroup).  The
    pivot y is the lowest-index generator with chi != 0 after rescaling
    chi(y) = 1; the basis change z_i = x_i y^-chi(x_i) makes chi dual to y,
    and each conjugate y^k r y^-k is rewritten by scanning letters with a
    y-exponent counter reduced mod p.
    """
    n = len(chi)
    chi_mod = tuple(c % p for c in chi)
    if all(c == 0 for c in chi_mod):
        raise DomainError("chi must be a nonzero functional mod p")
    _check_range(r, n)
    eps = exponent_vector(r, n)
    if sum(c * e for c, e in zip(chi_mod, eps)) % p != 0:
        raise DomainError(
            "chi does not vanish on the relator's exponent vector; "
            "the subgroup would not contain the relator's class"
        )
    pivot = next(i + 1 for i, c in enumerate(chi_mod) if c != 0)
    scale = inv_mod(chi_mod[pivot - 1], p)
    chi_mod = tuple((c * scale) % p for c in chi_mod)

    # x_i = z_i y^chi(x_i) for i != pivot; the pivot maps to y itself.
    images: dict[int, GroupWord] = {pivot: Generator(pivot)}
    for i in range(1, n + 1):
        if i == pivot:
            continue
        c = chi_mod[i - 1]
        if c:
            images[i] = Product((Generator(i), Power(Generator(pivot), c)))
        else:
            images[i] = Generator(i)
    letters = flatten(substitute(r, images))

    nonpivot = [i for i in range(1, n + 1) if i != pivot]
    labels: list[tuple] = [("t",)]
    label_no: dict[tuple[int, int], int] = {}
    for k in range(p):
        for i in nonpivot:
            labels.append(("w", k, i))
            label_no[(k, i)] = len(labels)

    relators = []
    for k in range(p):
        d = k
        out: list[Letter] = []
        for (idx, sign) in letters:
            if idx == pivot:
                if sign > 0:
                    if d == p - 1:
                        out.append((1, 1))
                    d = (d + 1) % p
                else:
                    if d == 0:
                        out.append((1, -1))
                    d = (d - 1) % p
            else:
                out.append((label_no[(d, idx)], sign))
        relators.append(tuple(out))

    return SchreierRewrite(
        prime=p,
        n=n,
        pivot=pivot,
        chi=chi_mod,
        labels=tuple(labels),
        relators=tuple(relators),
    )
