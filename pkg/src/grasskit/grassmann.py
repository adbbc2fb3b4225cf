"""Exact arithmetic in finite-rank Grassmann (exterior) algebras.

An element of the rank-q algebra is a polynomial with rational
coefficients in anticommuting generators xi_1, ..., xi_q.  A monomial is
a subset of generator indices, stored as an integer bitmask (bit i-1 set
means xi_i occurs), and an element is a sparse map from bitmasks to
nonzero Fraction coefficients.  Multiplying two monomials vanishes when
their index sets overlap and otherwise picks up the sign of the merge:
one factor of -1 per pair (a, b) with a in the left set, b in the right
set, and a > b.

The monomial order used everywhere deterministic output matters
(printing, serialization, echelon pivots, tie-breaking) sorts by
cardinality first, then lexicographically by the index tuple.

All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import inf
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    IndexOutOfRange,
    NonCanonicalRank,
    NotInvertible,
    RankMismatch,
)

__all__ = [
    "Scalar",
    "ScalarLike",
    "Parity",
    "GrassmannElement",
    "as_scalar",
    "mask_of",
    "indices_of",
    "sort_with_sign",
    "merge_sign",
    "monomial_key",
    "monomial_masks",
    "zero",
    "one",
    "scalar_element",
    "generator",
    "monomial_element",
    "monomial_basis",
    "normalize",
    "lin_comb",
    "mul",
    "body",
    "parity_decompose",
    "filtration_level",
    "invert",
    "include_rank",
    "project_rank",
    "change_rank",
]

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact scalar expected, got {type(value).__name__}")


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of a set of 1-based generator indices."""
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    """Ascending 1-based generator indices of a monomial bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def sort_with_sign(indices: Sequence[int]) -> tuple[int, int]:
    """Canonicalize a raw index sequence.

    Returns (mask, sign) where sign is the parity of the permutation
    sorting the sequence, or (0, 0) when an index repeats (the monomial
    vanishes).
    """
    seen = 0
    swaps = 0
    for i in indices:
        bit = 1 << (i - 1)
        if seen & bit:
            return 0, 0
        # generators already placed with a larger index must hop over xi_i
        swaps += (seen >> i).bit_count()
        seen |= bit
    return seen, (-1 if swaps & 1 else 1)


def merge_sign(left: int, right: int) -> int:
    """Sign of concatenating two canonical monomials, 0 if they overlap."""
    if left & right:
        return 0
    swaps = 0
    rest = right
    while rest:
        low = rest & -rest
        swaps += (left >> low.bit_length()).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


def monomial_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key realizing the (cardinality, then lex) monomial order."""
    return (mask.bit_count(), indices_of(mask))


def monomial_masks(rank: int) -> list[int]:
    """All monomial bitmasks of the rank-q algebra, in canonical order."""
    _check_rank(rank)
    out: list[int] = []
    for size in range(rank + 1):
        for combo in combinations(range(1, rank + 1), size):
            out.append(mask_of(combo))
    return out


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


def _check_rank(rank: int) -> None:
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise TypeError("rank must be an int")
    if rank < 0:
        raise NonCanonicalRank(f"rank must be nonnegative, got {rank}")


class GrassmannElement:
    """An element of the rank-q Grassmann algebra over the rationals.

    Instances are immutable; arithmetic returns new elements.  Equality
    compares both the rank and the term map, so equal-looking elements
    of different ranks are distinct values.
    """

    __slots__ = ("_rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[int, Fraction]):
        _check_rank(rank)
        limit = 1 << rank
        for mask, coeff in terms.items():
            if not isinstance(mask, int) or mask < 0 or mask >= limit:
                raise IndexOutOfRange(
                    f"monomial {mask!r} does not fit in rank {rank}"
                )
            if not isinstance(coeff, Fraction):
                raise TypeError("coefficients must be Fraction")
            if coeff == 0:
                raise ValueError("zero coefficients must be dropped")
        self._rank = rank
        self._terms = dict(terms)
        self._hash: int | None = None

    @classmethod
    def _make(cls, rank: int, terms: dict[int, Fraction]) -> "GrassmannElement":
        # trusted path for canonical dicts produced internally
        self = object.__new__(cls)
        self._rank = rank
        self._terms = terms
        self._hash = None
        return self

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def terms(self) -> Mapping[int, Fraction]:
        """Read-only view of the bitmask -> coefficient map."""
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms as (mask, coeff) pairs in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coefficient(self, monomial: int | Iterable[int]) -> Fraction:
        """Coefficient of a monomial, given as a bitmask or index set."""
        mask = monomial if isinstance(monomial, int) else mask_of(monomial)
        return self._terms.get(mask, Fraction(0))

    def body(self) -> Fraction:
        """The constant (augmentation) coefficient."""
        return self._terms.get(0, Fraction(0))

    def soul(self) -> "GrassmannElement":
        """The element minus its body; always nilpotent."""
        rest = {m: c for m, c in self._terms.items() if m}
        return GrassmannElement._make(self._rank, rest)

    @property
    def parity(self) -> Parity:
        has_even = any(m.bit_count() % 2 == 0 for m in self._terms)
        has_odd = any(m.bit_count() % 2 == 1 for m in self._terms)
        if has_even and has_odd:
            return Parity.MIXED
        if has_odd:
            return Parity.ODD
        return Parity.EVEN

    def even_part(self) -> "GrassmannElement":
        kept = {m: c for m, c in self._terms.items() if m.bit_count() % 2 == 0}
        return GrassmannElement._make(self._rank, kept)

    def odd_part(self) -> "GrassmannElement":
        kept = {m: c for m, c in self._terms.items() if m.bit_count() % 2 == 1}
        return GrassmannElement._make(self._rank, kept)

    def filtration_level(self):
        """Largest k such that every monomial has at least k factors.

        The zero element lies in every filtration ideal, reported as
        math.inf.
        """
        if not self._terms:
            return inf
        return min(m.bit_count() for m in self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        if self._rank != other._rank:
            raise RankMismatch(
                f"cannot add rank {self._rank} and rank {other._rank} elements"
            )
        acc = dict(self._terms)
        for mask, coeff in other._terms.items():
            new = acc.get(mask, Fraction(0)) + coeff
            if new:
                acc[mask] = new
            else:
                acc.pop(mask, None)
        return GrassmannElement._make(self._rank, acc)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement._make(
            self._rank, {m: -c for m, c in self._terms.items()}
        )

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self._scaled(as_scalar(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(as_scalar(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            if c == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self._scaled(1 / c)
        return NotImplemented

    def __pow__(self, exponent: int) -> "GrassmannElement":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return invert(self) ** (-exponent)
        result = one(self._rank)
        for _ in range(exponent):
            result = mul(result, self)
        return result

    def _scaled(self, c: Fraction) -> "GrassmannElement":
        if c == 0:
            return GrassmannElement._make(self._rank, {})
        return GrassmannElement._make(
            self._rank, {m: coeff * c for m, coeff in self._terms.items()}
        )

    def to_text(self, zeta: bool = False) -> str:
        """Canonical text form, terms in (cardinality, lex) order.

        With zeta=True the generator xi1 prints as "zeta", the
        conventional name for the single generator of the rank-1 target
        algebra.
        """
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for mask, coeff in self.items():
            if mask == 0:
                factors = ""
            else:
                names = [
                    "zeta" if (zeta and i == 1) else f"xi{i}"
                    for i in indices_of(mask)
                ]
                factors = "*".join(names)
            mag = abs(coeff)
            if not factors:
                text = str(mag)
            elif mag == 1:
                text = factors
            else:
                text = f"{mag}*{factors}"
            if not chunks:
                chunks.append(text if coeff > 0 else f"-{text}")
            else:
                chunks.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(chunks)

    def to_json(self) -> dict:
        """JSON-ready dict: rank plus terms in canonical order."""
        return {
            "rank": self._rank,
            "terms": [
                {"indices": list(indices_of(mask)), "coeff": str(coeff)}
                for mask, coeff in self.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GrassmannElement":
        terms = [
            (term["indices"], as_scalar(term["coeff"])) for term in doc["terms"]
        ]
        return normalize(doc["rank"], terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"GrassmannElement({self._rank}, {self.to_text()!r})"


def zero(rank: int) -> GrassmannElement:
    _check_rank(rank)
    return GrassmannElement._make(rank, {})


def one(rank: int) -> GrassmannElement:
    _check_rank(rank)
    return GrassmannElement._make(rank, {0: Fraction(1)})


def scalar_element(rank: int, value: ScalarLike) -> GrassmannElement:
    _check_rank(rank)
    c = as_scalar(value)
    return GrassmannElement._make(rank, {0: c} if c else {})


def generator(rank: int, index: int) -> GrassmannElement:
    """The generator xi_index of the rank-q algebra."""
    return monomial_element(rank, (index,))


def monomial_element(rank: int, indices: Iterable[int]) -> GrassmannElement:
    """The monomial with the given ascending index set, coefficient 1."""
    return normalize(rank, [(tuple(indices), Fraction(1))])


def monomial_basis(rank: int) -> list[GrassmannElement]:
    """All 2**q monomials as elements, in canonical order."""
    return [
        GrassmannElement._make(rank, {mask: Fraction(1)})
        for mask in monomial_masks(rank)
    ]


def normalize(
    rank: int, raw_terms: Iterable[tuple[Sequence[int], ScalarLike]]
) -> GrassmannElement:
    """Build an element from raw (index sequence, coefficient) pairs.

    Index sequences may be unsorted; each is canonicalized with the sign
    of its sorting permutation, repeated indices kill the term, and like
    monomials are merged with zero coefficients dropped.
    """
    _check_rank(rank)
    acc: dict[int, Fraction] = {}
    for indices, raw_coeff in raw_terms:
        coeff = as_scalar(raw_coeff)
        for i in indices:
            if not isinstance(i, int) or isinstance(i, bool):
                raise TypeError("generator indices must be ints")
            if i < 1 or i > rank:
                raise IndexOutOfRange(
                    f"index {i} outside 1..{rank}"
                )
        mask, sign = sort_with_sign(list(indices))
        if sign == 0 or coeff == 0:
            continue
        new = acc.get(mask, Fraction(0)) + (coeff if sign > 0 else -coeff)
        if new:
            acc[mask] = new
        else:
            acc.pop(mask, None)
    return GrassmannElement._make(rank, acc)


def lin_comb(
    pairs: Sequence[tuple[ScalarLike, GrassmannElement]]
) -> GrassmannElement:
    """Exact linear combination sum(c_i * a_i); pairs must share one rank."""
    if not pairs:
        raise ValueError("lin_comb needs at least one (scalar, element) pair")
    rank = pairs[0][1].rank
    acc: dict[int, Fraction] = {}
    for raw_c, elem in pairs:
        if elem.rank != rank:
            raise RankMismatch(
                f"mixed ranks {rank} and {elem.rank} in linear combination"
            )
        c = as_scalar(raw_c)
        if c == 0:
            continue
        for mask, coeff in elem.terms.items():
            new = acc.get(mask, Fraction(0)) + c * coeff
            if new:
                acc[mask] = new
            else:
                acc.pop(mask, None)
    return GrassmannElement._make(rank, acc)


def mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Product in the Grassmann algebra."""
    if a.rank != b.rank:
        raise RankMismatch(
            f"cannot multiply rank {a.rank} and rank {b.rank} elements"
        )
    acc: dict[int, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign = merge_sign(ma, mb)
            if sign == 0:
                continue
            mask = ma | mb
            piece = ca * cb if sign > 0 else -(ca * cb)
            new = acc.get(mask, Fraction(0)) + piece
            if new:
                acc[mask] = new
            else:
                acc.pop(mask, None)
    return GrassmannElement._make(a.rank, acc)


def body(a: GrassmannElement) -> Fraction:
    """Constant coefficient; a unital algebra map onto the scalars."""
    return a.body()


def parity_decompose(
    a: GrassmannElement,
) -> tuple[GrassmannElement, GrassmannElement, Parity]:
    """Split into (even part, odd part) and report the overall parity."""
    return a.even_part(), a.odd_part(), a.parity


def filtration_level(a: GrassmannElement):
    """Largest k with a in the k-th power of the soul ideal (inf for 0)."""
    return a.filtration_level()


def invert(a: GrassmannElement) -> GrassmannElement:
    """Multiplicative inverse, when the body is nonzero.

    With b = body(a) and s = a - b, the inverse is the finite geometric
    series (1/b) * sum_k (-s/b)^k; s is nilpotent so the series stops at
    k = rank at the latest.
    """
    b = a.body()
    if b == 0:
        raise NotInvertible("zero body, element has no inverse")
    rank = a.rank
    s = a.soul()
    inv_b = 1 / b
    term = scalar_element(rank, inv_b)
    total = term
    while True:
        term = mul(term, s) * (-inv_b)
        if term.is_zero:
            break
        total = total + term
    return total


def include_rank(a: GrassmannElement, target: int) -> GrassmannElement:
    """Reinterpret at a larger rank; the canonical algebra embedding."""
    _check_rank(target)
    if target < a.rank:
        raise RankMismatch(
            f"cannot include rank {a.rank} into smaller rank {target}"
        )
    return GrassmannElement._make(target, dict(a.terms))


def project_rank(a: GrassmannElement, target: int) -> GrassmannElement:
    """Drop monomials touching indices above target and reinterpret.

    For target >= rank this is the inclusion, so composing a projection
    after an inclusion gives the canonical map for any pair of ranks.
    """
    _check_rank(target)
    if target >= a.rank:
        return include_rank(a, target)
    limit = 1 << target
    kept = {m: c for m, c in a.terms.items() if m < limit}
    return GrassmannElement._make(target, kept)


def change_rank(a: GrassmannElement, target: int, mode: str) -> GrassmannElement:
    """Move an element between ranks; mode is "include" or "project"."""
    if mode == "include":
        return include_rank(a, target)
    if mode == "project":
        return project_rank(a, target)
    raise ValueError(f"unknown change_rank mode {mode!r}")
