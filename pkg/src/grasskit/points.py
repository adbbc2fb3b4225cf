"""Points of a superdomain with coordinates in a Grassmann algebra.

A superdomain of dimension (m, n) has m even and n odd coordinates.  Its
rank-q points assign an even algebra element to every even coordinate
and an odd element to every odd coordinate; as a rational vector space
the set of such points has dimension (m + n) * 2**(q-1) for q >= 1 and
m for q = 0.

Superfunctions are polynomials in the even coordinates x_1..x_m and the
odd coordinates th_1..th_n (the th's anticommute, so they never repeat).
Evaluating a superfunction at a rank-q point lands in the rank-q
algebra, and evaluation is natural: pushing the point forward along an
algebra homomorphism and then evaluating equals evaluating first and
mapping the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    DomainMismatch,
    IndexOutOfRange,
    NonCanonicalRank,
    ParityViolation,
    RankMismatch,
)
from .grassmann import (
    GrassmannElement,
    Parity,
    ScalarLike,
    as_scalar,
    indices_of,
    merge_sign,
    mul,
    scalar_element,
    sort_with_sign,
    zero,
)
from .homs import GradedHom, apply_hom, augmentation_hom

__all__ = [
    "SuperDomainSpec",
    "SuperFunction",
    "QPoint",
    "points_dim",
    "eval_superfunction",
    "induced_point_map",
    "body_of_point",
    "embed_point",
]


@dataclass(frozen=True)
class SuperDomainSpec:
    """Shape of a superdomain: counts of even and odd coordinates."""

    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise NonCanonicalRank("dimensions must be nonnegative")


def _term_key(key: tuple[tuple[int, ...], int]):
    exponents, amask = key
    return (
        sum(exponents) + amask.bit_count(),
        exponents,
        indices_of(amask),
    )


class SuperFunction:
    """A polynomial superfunction on a superdomain.

    Terms map (even exponent tuple, odd index bitmask) to a nonzero
    rational coefficient.  Instances are immutable.
    """

    __slots__ = ("_spec", "_terms", "_hash")

    def __init__(
        self,
        spec: SuperDomainSpec,
        terms: Mapping[tuple[tuple[int, ...], int], Fraction],
    ):
        limit = 1 << spec.odd_dim
        for (exponents, amask), coeff in terms.items():
            if len(exponents) != spec.even_dim:
                raise DomainMismatch(
                    f"{spec.even_dim} exponents expected, got {len(exponents)}"
                )
            if any(e < 0 for e in exponents):
                raise ValueError("exponents must be nonnegative")
            if amask < 0 or amask >= limit:
                raise IndexOutOfRange(
                    f"odd monomial {amask!r} does not fit in {spec.odd_dim} "
                    "odd coordinates"
                )
            if not isinstance(coeff, Fraction) or coeff == 0:
                raise ValueError("coefficients must be nonzero Fractions")
        self._spec = spec
        self._terms = dict(terms)
        self._hash: int | None = None

    @classmethod
    def _make(cls, spec, terms) -> "SuperFunction":
        self = object.__new__(cls)
        self._spec = spec
        self._terms = terms
        self._hash = None
        return self

    @classmethod
    def from_terms(
        cls,
        spec: SuperDomainSpec,
        raw_terms: Iterable[tuple[Sequence[int], Sequence[int], ScalarLike]],
    ) -> "SuperFunction":
        """Build from raw (exponents, odd index sequence, coeff) triples."""
        acc: dict[tuple[tuple[int, ...], int], Fraction] = {}
        for exponents, odd_indices, raw_coeff in raw_terms:
            coeff = as_scalar(raw_coeff)
            exponents = tuple(exponents)
            if len(exponents) != spec.even_dim:
                raise DomainMismatch(
                    f"{spec.even_dim} exponents expected, got {len(exponents)}"
                )
            if any(e < 0 for e in exponents):
                raise ValueError("exponents must be nonnegative")
            for a in odd_indices:
                if a < 1 or a > spec.odd_dim:
                    raise IndexOutOfRange(
                        f"odd index {a} outside 1..{spec.odd_dim}"
                    )
            amask, sign = sort_with_sign(list(odd_indices))
            if sign == 0 or coeff == 0:
                continue
            key = (exponents, amask)
            new = acc.get(key, Fraction(0)) + (coeff if sign > 0 else -coeff)
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return cls._make(spec, acc)

    @classmethod
    def constant(cls, spec: SuperDomainSpec, value: ScalarLike) -> "SuperFunction":
        c = as_scalar(value)
        key = ((0,) * spec.even_dim, 0)
        return cls._make(spec, {key: c} if c else {})

    @classmethod
    def coordinate(cls, spec: SuperDomainSpec, name: str, index: int) -> "SuperFunction":
        """The coordinate superfunction x_index or th_index."""
        if name == "x":
            if index < 1 or index > spec.even_dim:
                raise IndexOutOfRange(f"index {index} outside 1..{spec.even_dim}")
            exponents = tuple(
                1 if i == index else 0 for i in range(1, spec.even_dim + 1)
            )
            return cls._make(spec, {(exponents, 0): Fraction(1)})
        if name == "th":
            if index < 1 or index > spec.odd_dim:
                raise IndexOutOfRange(f"index {index} outside 1..{spec.odd_dim}")
            key = ((0,) * spec.even_dim, 1 << (index - 1))
            return cls._make(spec, {key: Fraction(1)})
        raise ValueError(f"unknown coordinate kind {name!r}")

    @property
    def spec(self) -> SuperDomainSpec:
        return self._spec

    @property
    def terms(self) -> Mapping[tuple[tuple[int, ...], int], Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[tuple[tuple[int, ...], int], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _term_key(kv[0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self._spec == other._spec and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._spec, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        if not isinstance(other, SuperFunction):
            return NotImplemented
        if self._spec != other._spec:
            raise DomainMismatch("superfunctions live on different domains")
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            new = acc.get(key, Fraction(0)) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return SuperFunction._make(self._spec, acc)

    def __neg__(self) -> "SuperFunction":
        return SuperFunction._make(
            self._spec, {k: -c for k, c in self._terms.items()}
        )

    def __sub__(self, other: "SuperFunction") -> "SuperFunction":
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            if self._spec != other._spec:
                raise DomainMismatch("superfunctions live on different domains")
            acc: dict[tuple[tuple[int, ...], int], Fraction] = {}
            for (e1, a1), c1 in self._terms.items():
                for (e2, a2), c2 in other._terms.items():
                    sign = merge_sign(a1, a2)
                    if sign == 0:
                        continue
                    key = (tuple(x + y for x, y in zip(e1, e2)), a1 | a2)
                    piece = c1 * c2 if sign > 0 else -(c1 * c2)
                    new = acc.get(key, Fraction(0)) + piece
                    if new:
                        acc[key] = new
                    else:
                        acc.pop(key, None)
            return SuperFunction._make(self._spec, acc)
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            if c == 0:
                return SuperFunction._make(self._spec, {})
            return SuperFunction._make(
                self._spec, {k: coeff * c for k, coeff in self._terms.items()}
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "SuperFunction":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SuperFunction.constant(self._spec, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for (exponents, amask), coeff in self.items():
            factors = []
            for i, e in enumerate(exponents, start=1):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            factors.extend(f"th{a}" for a in indices_of(amask))
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not chunks:
                chunks.append(text if coeff > 0 else f"-{text}")
            else:
                chunks.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(chunks)

    def to_json(self) -> dict:
        return {
            "even_dim": self._spec.even_dim,
            "odd_dim": self._spec.odd_dim,
            "terms": [
                {
                    "exponents": list(exponents),
                    "odd_indices": list(indices_of(amask)),
                    "coeff": str(coeff),
                }
                for (exponents, amask), coeff in self.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SuperFunction":
        spec = SuperDomainSpec(doc["even_dim"], doc["odd_dim"])
        return cls.from_terms(
            spec,
            [
                (term["exponents"], term["odd_indices"], term["coeff"])
                for term in doc["terms"]
            ],
        )

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return (
            f"SuperFunction(({self._spec.even_dim}, {self._spec.odd_dim}), "
            f"{self.to_text()!r})"
        )


@dataclass(frozen=True)
class QPoint:
    """A rank-q point: even coordinates even, odd coordinates odd.

    Zero is accepted in either position.  All coordinates must share the
    declared rank.
    """

    rank: int
    evens: tuple[GrassmannElement, ...]
    odds: tuple[GrassmannElement, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise NonCanonicalRank("rank must be nonnegative")
        for kind, coords, wanted in (
            ("even", self.evens, Parity.EVEN),
            ("odd", self.odds, Parity.ODD),
        ):
            for i, coord in enumerate(coords, start=1):
                if coord.rank != self.rank:
                    raise RankMismatch(
                        f"{kind} coordinate {i} has rank {coord.rank}, "
                        f"expected {self.rank}"
                    )
                if not coord.is_zero and coord.parity is not wanted:
                    raise ParityViolation(
                        f"{kind} coordinate {i} is not {wanted.value}: {coord}"
                    )

    @property
    def spec(self) -> SuperDomainSpec:
        return SuperDomainSpec(len(self.evens), len(self.odds))

    def to_text(self, with_rank: bool = False) -> str:
        coords = "; ".join(c.to_text() for c in (*self.evens, *self.odds))
        if with_rank:
            return f"q={self.rank}: {coords}" if coords else f"q={self.rank}:"
        return coords

    def to_json(self) -> dict:
        return {
            "q": self.rank,
            "evens": [c.to_json() for c in self.evens],
            "odds": [c.to_json() for c in self.odds],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "QPoint":
        return cls(
            doc["q"],
            tuple(GrassmannElement.from_json(d) for d in doc["evens"]),
            tuple(GrassmannElement.from_json(d) for d in doc["odds"]),
        )


def points_dim(spec: SuperDomainSpec, q: int) -> int:
    """Rational dimension of the space of rank-q points.

    The even part of the rank-q algebra and the odd part each have
    dimension 2**(q-1) once q >= 1, so the point space has dimension
    (m + n) * 2**(q-1); at q = 0 only the even coordinates survive.
    """
    if q < 0:
        raise NonCanonicalRank("rank must be nonnegative")
    if q == 0:
        return spec.even_dim
    return (spec.even_dim + spec.odd_dim) * (1 << (q - 1))


def eval_superfunction(f: SuperFunction, point: QPoint) -> GrassmannElement:
    """Evaluate a superfunction at a point; lands in the point's algebra."""
    if f.spec != point.spec:
        raise DomainMismatch(
            f"function on ({f.spec.even_dim}, {f.spec.odd_dim}) cannot see a "
            f"point of ({point.spec.even_dim}, {point.spec.odd_dim})"
        )
    rank = point.rank
    total = zero(rank)
    power_cache: dict[tuple[int, int], GrassmannElement] = {}

    def even_power(i: int, e: int) -> GrassmannElement:
        key = (i, e)
        found = power_cache.get(key)
        if found is None:
            found = point.evens[i] ** e
            power_cache[key] = found
        return found

    for (exponents, amask), coeff in f.terms.items():
        value = scalar_element(rank, coeff)
        for i, e in enumerate(exponents):
            if e and not value.is_zero:
                value = mul(value, even_power(i, e))
        for a in indices_of(amask):
            if value.is_zero:
                break
            value = mul(value, point.odds[a - 1])
        total = total + value
    return total


def induced_point_map(hom: GradedHom, point: QPoint) -> QPoint:
    """Push a point forward by applying a homomorphism coordinatewise."""
    if point.rank != hom.source_rank:
        raise RankMismatch(
            f"point rank {point.rank} does not match source rank "
            f"{hom.source_rank}"
        )
    return QPoint(
        hom.target_rank,
        tuple(apply_hom(hom, c) for c in point.evens),
        tuple(apply_hom(hom, c) for c in point.odds),
    )


def body_of_point(point: QPoint) -> QPoint:
    """Collapse every coordinate to its constant term; a rank-0 point."""
    return induced_point_map(augmentation_hom(point.rank), point)


def embed_point(point: QPoint, q: int) -> QPoint:
    """Reinterpret a rank-0 point at rank q with zero odd coordinates."""
    if point.rank != 0:
        raise RankMismatch(f"only rank-0 points embed, got rank {point.rank}")
    return QPoint(
        q,
        tuple(scalar_element(q, c.body()) for c in point.evens),
        tuple(zero(q) for _ in point.odds),
    )
