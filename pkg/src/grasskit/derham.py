"""The super de Rham complex of a superdomain, with exact coefficients.

Generators and their gradings, for a domain with m even coordinates x_i
and n odd coordinates xi_a:

    generator   form degree   total parity   weight
    x_i         0             0              1
    xi_a        0             1              1
    dx_i        1             1              1
    dxi_a       1             0              1

Total parity is what governs commutation: two factors commute up to
(-1) to the product of their total parities.  In particular dx's
anticommute among themselves while dxi's commute, so a single dxi_a can
appear to any power and the complex is unbounded above.

Monomials are kept in the canonical block order x, xi, dx, dxi.  The
differential d is the parity-1 derivation with d(x_i) = dx_i,
d(xi_a) = dxi_a, d(dx_i) = d(dxi_a) = 0; it satisfies d after d = 0.
The Euler contraction i_E is the parity-1 derivation with
i_E(dx_i) = x_i, i_E(dxi_a) = xi_a, and zero on coordinates.  Both
preserve weight (the total generator count), and on a weight-w form
d i_E + i_E d = w * id.  That identity kills every cohomology block of
positive weight, which is why the cohomology reduces to the constants:
H^0 = 1 and H^p = 0 for p >= 1.

All coefficients are exact rationals and all values immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from . import linalg
from .errors import (
    BudgetExceeded,
    GrasskitError,
    IndexOutOfRange,
    NonCanonicalRank,
    NotClosed,
    ParityViolation,
)
from .grassmann import ScalarLike, as_scalar, indices_of, merge_sign, sort_with_sign

__all__ = [
    "FormMonomial",
    "SuperForm",
    "constant_form",
    "x_form",
    "xi_form",
    "dx_form",
    "dxi_form",
    "wedge",
    "exterior_d",
    "euler_contract",
    "DerivationSpec",
    "partial_x",
    "partial_xi",
    "graded_derivation_apply",
    "antiderivative",
    "form_blocks",
    "cohomology_dims",
    "cohomology_dims_by_homotopy",
]


class FormMonomial(NamedTuple):
    """One monomial: x exponents, xi subset, dx subset, dxi exponents."""

    x_exp: tuple[int, ...]
    xi_mask: int
    dx_mask: int
    dxi_exp: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.dx_mask.bit_count() + sum(self.dxi_exp)

    @property
    def weight(self) -> int:
        return (
            sum(self.x_exp)
            + self.xi_mask.bit_count()
            + self.dx_mask.bit_count()
            + sum(self.dxi_exp)
        )

    @property
    def total_parity(self) -> int:
        return (self.xi_mask.bit_count() + self.dx_mask.bit_count()) & 1

    def sort_key(self):
        return (
            self.degree,
            self.weight,
            self.x_exp,
            indices_of(self.xi_mask),
            indices_of(self.dx_mask),
            self.dxi_exp,
        )


def _wedge_mono(a: FormMonomial, b: FormMonomial) -> tuple[FormMonomial, int] | None:
    """Merge two canonical monomials; None when the product vanishes.

    The sign is the xi-merge sign times the dx-merge sign times one
    factor of -1 for each dx of the left operand hopping over each xi of
    the right operand.
    """
    s_xi = merge_sign(a.xi_mask, b.xi_mask)
    if s_xi == 0:
        return None
    s_dx = merge_sign(a.dx_mask, b.dx_mask)
    if s_dx == 0:
        return None
    sign = s_xi * s_dx
    if (a.dx_mask.bit_count() * b.xi_mask.bit_count()) & 1:
        sign = -sign
    mono = FormMonomial(
        tuple(x + y for x, y in zip(a.x_exp, b.x_exp)),
        a.xi_mask | b.xi_mask,
        a.dx_mask | b.dx_mask,
        tuple(x + y for x, y in zip(a.dxi_exp, b.dxi_exp)),
    )
    return mono, sign


class SuperForm:
    """A differential form on a superdomain, as a sparse monomial sum."""

    __slots__ = ("_even_dim", "_odd_dim", "_terms", "_hash")

    def __init__(self, even_dim: int, odd_dim: int, terms: Mapping[FormMonomial, Fraction]):
        if even_dim < 0 or odd_dim < 0:
            raise NonCanonicalRank("dimensions must be nonnegative")
        for mono, coeff in terms.items():
            if len(mono.x_exp) != even_dim or len(mono.dxi_exp) != odd_dim:
                raise IndexOutOfRange(
                    f"monomial shape does not match ({even_dim}, {odd_dim})"
                )
            if mono.xi_mask >> odd_dim or mono.dx_mask >> even_dim:
                raise IndexOutOfRange(
                    f"monomial uses indices outside ({even_dim}, {odd_dim})"
                )
            if any(e < 0 for e in mono.x_exp) or any(e < 0 for e in mono.dxi_exp):
                raise ValueError("exponents must be nonnegative")
            if not isinstance(coeff, Fraction) or coeff == 0:
                raise ValueError("coefficients must be nonzero Fractions")
        self._even_dim = even_dim
        self._odd_dim = odd_dim
        self._terms = dict(terms)
        self._hash: int | None = None

    @classmethod
    def _make(cls, even_dim, odd_dim, terms) -> "SuperForm":
        self = object.__new__(cls)
        self._even_dim = even_dim
        self._odd_dim = odd_dim
        self._terms = terms
        self._hash = None
        return self

    @classmethod
    def from_terms(
        cls,
        even_dim: int,
        odd_dim: int,
        raw_terms: Iterable[
            tuple[Sequence[int], Sequence[int], Sequence[int], Sequence[int], ScalarLike]
        ],
    ) -> "SuperForm":
        """Build from raw (x exponents, xi indices, dx indices, dxi
        exponents, coeff) tuples; odd index lists may be unsorted."""
        acc: dict[FormMonomial, Fraction] = {}
        for x_exp, xi_idx, dx_idx, dxi_exp, raw_coeff in raw_terms:
            coeff = as_scalar(raw_coeff)
            x_exp = tuple(x_exp)
            dxi_exp = tuple(dxi_exp)
            if len(x_exp) != even_dim or len(dxi_exp) != odd_dim:
                raise IndexOutOfRange(
                    f"term shape does not match ({even_dim}, {odd_dim})"
                )
            for i in xi_idx:
                if i < 1 or i > odd_dim:
                    raise IndexOutOfRange(f"xi index {i} outside 1..{odd_dim}")
            for i in dx_idx:
                if i < 1 or i > even_dim:
                    raise IndexOutOfRange(f"dx index {i} outside 1..{even_dim}")
            xi_mask, s1 = sort_with_sign(list(xi_idx))
            if s1 == 0:
                continue
            dx_mask, s2 = sort_with_sign(list(dx_idx))
            if s2 == 0:
                continue
            if coeff == 0:
                continue
            mono = FormMonomial(x_exp, xi_mask, dx_mask, dxi_exp)
            signed = coeff * s1 * s2
            new = acc.get(mono, Fraction(0)) + signed
            if new:
                acc[mono] = new
            else:
                acc.pop(mono, None)
        return cls._make(even_dim, odd_dim, acc)

    @property
    def even_dim(self) -> int:
        return self._even_dim

    @property
    def odd_dim(self) -> int:
        return self._odd_dim

    @property
    def terms(self) -> Mapping[FormMonomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[FormMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    @property
    def form_degree(self) -> int | None:
        """Common form degree of all terms, or None when mixed/zero."""
        degrees = {m.degree for m in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def weight(self) -> int | None:
        weights = {m.weight for m in self._terms}
        return weights.pop() if len(weights) == 1 else None

    @property
    def total_parity(self) -> int | None:
        parities = {m.total_parity for m in self._terms}
        return parities.pop() if len(parities) == 1 else None

    def weight_split(self) -> dict[int, "SuperForm"]:
        """Decompose into homogeneous-weight pieces."""
        buckets: dict[int, dict[FormMonomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            buckets.setdefault(mono.weight, {})[mono] = coeff
        return {
            w: SuperForm._make(self._even_dim, self._odd_dim, terms)
            for w, terms in sorted(buckets.items())
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperForm):
            return NotImplemented
        return (
            self._even_dim == other._even_dim
            and self._odd_dim == other._odd_dim
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self._even_dim, self._odd_dim, frozenset(self._terms.items()))
            )
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check_same_domain(self, other: "SuperForm") -> None:
        if self._even_dim != other._even_dim or self._odd_dim != other._odd_dim:
            raise IndexOutOfRange(
                f"forms live on different domains: "
                f"({self._even_dim}, {self._odd_dim}) vs "
                f"({other._even_dim}, {other._odd_dim})"
            )

    def __add__(self, other: "SuperForm") -> "SuperForm":
        if not isinstance(other, SuperForm):
            return NotImplemented
        self._check_same_domain(other)
        acc = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = acc.get(mono, Fraction(0)) + coeff
            if new:
                acc[mono] = new
            else:
                acc.pop(mono, None)
        return SuperForm._make(self._even_dim, self._odd_dim, acc)

    def __neg__(self) -> "SuperForm":
        return SuperForm._make(
            self._even_dim, self._odd_dim, {m: -c for m, c in self._terms.items()}
        )

    def __sub__(self, other: "SuperForm") -> "SuperForm":
        if not isinstance(other, SuperForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperForm):
            return wedge(self, other)
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            if c == 0:
                return SuperForm._make(self._even_dim, self._odd_dim, {})
            return SuperForm._make(
                self._even_dim,
                self._odd_dim,
                {m: coeff * c for m, coeff in self._terms.items()},
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "SuperForm":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = constant_form(self._even_dim, self._odd_dim, 1)
        for _ in range(exponent):
            result = wedge(result, self)
        return result

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.items():
            factors = []
            for i, e in enumerate(mono.x_exp, start=1):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            factors.extend(f"xi{a}" for a in indices_of(mono.xi_mask))
            factors.extend(f"dx{i}" for i in indices_of(mono.dx_mask))
            for a, e in enumerate(mono.dxi_exp, start=1):
                if e == 1:
                    factors.append(f"dxi{a}")
                elif e > 1:
                    factors.append(f"dxi{a}^{e}")
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
            "even_dim": self._even_dim,
            "odd_dim": self._odd_dim,
            "terms": [
                {
                    "x_exponents": list(mono.x_exp),
                    "xi_indices": list(indices_of(mono.xi_mask)),
                    "dx_indices": list(indices_of(mono.dx_mask)),
                    "dxi_exponents": list(mono.dxi_exp),
                    "coeff": str(coeff),
                }
                for mono, coeff in self.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SuperForm":
        return cls.from_terms(
            doc["even_dim"],
            doc["odd_dim"],
            [
                (
                    term["x_exponents"],
                    term["xi_indices"],
                    term["dx_indices"],
                    term["dxi_exponents"],
                    term["coeff"],
                )
                for term in doc["terms"]
            ],
        )

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return (
            f"SuperForm(({self._even_dim}, {self._odd_dim}), {self.to_text()!r})"
        )


def constant_form(even_dim: int, odd_dim: int, value: ScalarLike) -> SuperForm:
    c = as_scalar(value)
    mono = FormMonomial((0,) * even_dim, 0, 0, (0,) * odd_dim)
    return SuperForm._make(even_dim, odd_dim, {mono: c} if c else {})


def _unit_mono(even_dim: int, odd_dim: int, kind: str, index: int) -> FormMonomial:
    if kind == "x":
        if index < 1 or index > even_dim:
            raise IndexOutOfRange(f"x index {index} outside 1..{even_dim}")
        return FormMonomial(
            tuple(1 if i == index else 0 for i in range(1, even_dim + 1)),
            0,
            0,
            (0,) * odd_dim,
        )
    if kind == "xi":
        if index < 1 or index > odd_dim:
            raise IndexOutOfRange(f"xi index {index} outside 1..{odd_dim}")
        return FormMonomial((0,) * even_dim, 1 << (index - 1), 0, (0,) * odd_dim)
    if kind == "dx":
        if index < 1 or index > even_dim:
            raise IndexOutOfRange(f"dx index {index} outside 1..{even_dim}")
        return FormMonomial((0,) * even_dim, 0, 1 << (index - 1), (0,) * odd_dim)
    if kind == "dxi":
        if index < 1 or index > odd_dim:
            raise IndexOutOfRange(f"dxi index {index} outside 1..{odd_dim}")
        return FormMonomial(
            (0,) * even_dim,
            0,
            0,
            tuple(1 if a == index else 0 for a in range(1, odd_dim + 1)),
        )
    raise ValueError(f"unknown generator kind {kind!r}")


def x_form(even_dim: int, odd_dim: int, index: int) -> SuperForm:
    return SuperForm._make(
        even_dim, odd_dim, {_unit_mono(even_dim, odd_dim, "x", index): Fraction(1)}
    )


def xi_form(even_dim: int, odd_dim: int, index: int) -> SuperForm:
    return SuperForm._make(
        even_dim, odd_dim, {_unit_mono(even_dim, odd_dim, "xi", index): Fraction(1)}
    )


def dx_form(even_dim: int, odd_dim: int, index: int) -> SuperForm:
    return SuperForm._make(
        even_dim, odd_dim, {_unit_mono(even_dim, odd_dim, "dx", index): Fraction(1)}
    )


def dxi_form(even_dim: int, odd_dim: int, index: int) -> SuperForm:
    return SuperForm._make(
        even_dim, odd_dim, {_unit_mono(even_dim, odd_dim, "dxi", index): Fraction(1)}
    )


def wedge(a: SuperForm, b: SuperForm) -> SuperForm:
    """Exterior product with total-parity signs."""
    a._check_same_domain(b)
    acc: dict[FormMonomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            merged = _wedge_mono(ma, mb)
            if merged is None:
                continue
            mono, sign = merged
            piece = ca * cb if sign > 0 else -(ca * cb)
            new = acc.get(mono, Fraction(0)) + piece
            if new:
                acc[mono] = new
            else:
                acc.pop(mono, None)
    return SuperForm._make(a.even_dim, a.odd_dim, acc)


_SLOT_PARITY = {"x": 0, "xi": 1, "dx": 1, "dxi": 0}


def _slots(mono: FormMonomial) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for i, e in enumerate(mono.x_exp, start=1):
        out.extend(("x", i) for _ in range(e))
    out.extend(("xi", a) for a in indices_of(mono.xi_mask))
    out.extend(("dx", i) for i in indices_of(mono.dx_mask))
    for a, e in enumerate(mono.dxi_exp, start=1):
        out.extend(("dxi", a) for _ in range(e))
    return out


def _mono_from_slots(
    even_dim: int, odd_dim: int, slots: Sequence[tuple[str, int]]
) -> FormMonomial:
    x_exp = [0] * even_dim
    xi_mask = 0
    dx_mask = 0
    dxi_exp = [0] * odd_dim
    for kind, idx in slots:
        if kind == "x":
            x_exp[idx - 1] += 1
        elif kind == "xi":
            xi_mask |= 1 << (idx - 1)
        elif kind == "dx":
            dx_mask |= 1 << (idx - 1)
        else:
            dxi_exp[idx - 1] += 1
    return FormMonomial(tuple(x_exp), xi_mask, dx_mask, tuple(dxi_exp))


def _derive(
    form: SuperForm,
    op_parity: int,
    value_of: Callable[[str, int], SuperForm | None],
) -> SuperForm:
    """Apply a parity-homogeneous derivation given by generator values.

    Each slot of each monomial is replaced in turn by its value, with
    the sign (-1)**(op parity times the total parity of the prefix).
    """
    m, n = form.even_dim, form.odd_dim
    acc: dict[FormMonomial, Fraction] = {}
    for mono, coeff in form.terms.items():
        slots = _slots(mono)
        prefix_parity = 0
        for t, (kind, idx) in enumerate(slots):
            val = value_of(kind, idx)
            if val is not None and not val.is_zero:
                sign = -1 if (op_parity and prefix_parity) else 1
                prefix = _mono_from_slots(m, n, slots[:t])
                suffix = _mono_from_slots(m, n, slots[t + 1 :])
                piece = wedge(
                    wedge(SuperForm._make(m, n, {prefix: Fraction(coeff * sign)}), val),
                    SuperForm._make(m, n, {suffix: Fraction(1)}),
                )
                for pm, pc in piece.terms.items():
                    new = acc.get(pm, Fraction(0)) + pc
                    if new:
                        acc[pm] = new
                    else:
                        acc.pop(pm, None)
            prefix_parity ^= _SLOT_PARITY[kind]
    return SuperForm._make(m, n, acc)


def exterior_d(form: SuperForm) -> SuperForm:
    """The differential: parity-1 derivation, x -> dx, xi -> dxi."""
    m, n = form.even_dim, form.odd_dim

    def value_of(kind: str, idx: int) -> SuperForm | None:
        if kind == "x":
            return dx_form(m, n, idx)
        if kind == "xi":
            return dxi_form(m, n, idx)
        return None

    return _derive(form, 1, value_of)


def euler_contract(form: SuperForm) -> SuperForm:
    """Contraction with the Euler field: dx -> x, dxi -> xi."""
    m, n = form.even_dim, form.odd_dim

    def value_of(kind: str, idx: int) -> SuperForm | None:
        if kind == "dx":
            return x_form(m, n, idx)
        if kind == "dxi":
            return xi_form(m, n, idx)
        return None

    return _derive(form, 1, value_of)


@dataclass(frozen=True)
class DerivationSpec:
    """A parity-homogeneous derivation pinned down on the coordinates.

    x_values[i-1] and xi_values[a-1] are the images of x_i and xi_a;
    all must be degree-0 forms, with total parity equal to the
    derivation's parity on even coordinates and flipped on odd ones.
    """

    parity: int
    x_values: tuple[SuperForm, ...]
    xi_values: tuple[SuperForm, ...]

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ParityViolation(f"parity must be 0 or 1, got {self.parity}")
        for label, values, wanted in (
            ("x", self.x_values, self.parity),
            ("xi", self.xi_values, self.parity ^ 1),
        ):
            for i, val in enumerate(values, start=1):
                if not val.is_zero and val.form_degree != 0:
                    raise ValueError(
                        f"value of {label}{i} must be a degree-0 form"
                    )
                if not val.is_zero and val.total_parity != wanted:
                    raise ParityViolation(
                        f"value of {label}{i} must have total parity {wanted}"
                    )


def partial_x(even_dim: int, odd_dim: int, index: int) -> DerivationSpec:
    """The even derivation d/dx_index."""
    return DerivationSpec(
        0,
        tuple(
            constant_form(even_dim, odd_dim, 1 if i == index else 0)
            for i in range(1, even_dim + 1)
        ),
        tuple(constant_form(even_dim, odd_dim, 0) for _ in range(odd_dim)),
    )


def partial_xi(even_dim: int, odd_dim: int, index: int) -> DerivationSpec:
    """The odd derivation d/dxi_index, acting from the left."""
    return DerivationSpec(
        1,
        tuple(constant_form(even_dim, odd_dim, 0) for _ in range(even_dim)),
        tuple(
            constant_form(even_dim, odd_dim, 1 if a == index else 0)
            for a in range(1, odd_dim + 1)
        ),
    )


def graded_derivation_apply(spec: DerivationSpec, f: SuperForm) -> SuperForm:
    """Apply a coordinate derivation to a degree-0 form."""
    if len(spec.x_values) != f.even_dim or len(spec.xi_values) != f.odd_dim:
        raise IndexOutOfRange(
            "derivation values do not match the form's domain"
        )
    if not f.is_zero and f.form_degree != 0:
        raise ValueError("graded derivations act on degree-0 forms")

    def value_of(kind: str, idx: int) -> SuperForm | None:
        if kind == "x":
            return spec.x_values[idx - 1]
        if kind == "xi":
            return spec.xi_values[idx - 1]
        return None

    return _derive(f, spec.parity, value_of)


def antiderivative(form: SuperForm) -> SuperForm:
    """A primitive of a closed form, built from the Euler contraction.

    For closed omega with weight decomposition sum of omega_w, returns
    tau = sum over w >= 1 of (1/w) euler_contract(omega_w), which
    satisfies d(tau) = omega minus its weight-0 (constant) part.
    """
    if not exterior_d(form).is_zero:
        raise NotClosed("form is not closed, it has no primitive")
    total = constant_form(form.even_dim, form.odd_dim, 0)
    for w, piece in form.weight_split().items():
        if w == 0:
            continue
        total = total + euler_contract(piece) * Fraction(1, w)
    return total


def _bounded_tuples(parts: int, max_total: int):
    if parts == 0:
        yield ()
        return
    for head in range(max_total + 1):
        for tail in _bounded_tuples(parts - 1, max_total - head):
            yield (head,) + tail


def form_blocks(
    even_dim: int,
    odd_dim: int,
    max_degree: int,
    max_weight: int,
    budget: int = 100_000,
) -> dict[tuple[int, int], list[FormMonomial]]:
    """All monomials bucketed by (form degree, weight), within bounds.

    Raises BudgetExceeded when more than budget monomials would be
    enumerated.
    """
    if max_degree < 0 or max_weight < 0:
        raise NonCanonicalRank("bounds must be nonnegative")
    blocks: dict[tuple[int, int], list[FormMonomial]] = {}
    count = 0
    for x_exp in _bounded_tuples(even_dim, max_weight):
        left_x = max_weight - sum(x_exp)
        for xi_mask in range(1 << odd_dim):
            left_xi = left_x - xi_mask.bit_count()
            if left_xi < 0:
                continue
            for dx_mask in range(1 << even_dim):
                left_dx = left_xi - dx_mask.bit_count()
                if left_dx < 0 or dx_mask.bit_count() > max_degree:
                    continue
                for dxi_exp in _bounded_tuples(odd_dim, left_dx):
                    mono = FormMonomial(x_exp, xi_mask, dx_mask, dxi_exp)
                    if mono.degree > max_degree:
                        continue
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(
                            f"more than {budget} monomials in the requested "
                            "degree/weight window"
                        )
                    blocks.setdefault((mono.degree, mono.weight), []).append(mono)
    for block in blocks.values():
        block.sort(key=FormMonomial.sort_key)
    return blocks


def cohomology_dims(
    even_dim: int,
    odd_dim: int,
    max_degree: int,
    max_weight: int,
    budget: int = 100_000,
) -> list[int]:
    """Cohomology dimensions H^0 .. H^max_degree by block elimination.

    d preserves weight and raises degree by one, so each (degree,
    weight) block contributes independently: the dimension at degree p
    is the nullity of d on the block minus the rank of d arriving from
    degree p-1.  All ranks are computed exactly over the rationals.
    """
    blocks = form_blocks(even_dim, odd_dim, max_degree, max_weight, budget)
    ranks: dict[tuple[int, int], int] = {}
    for (p, w), monos in blocks.items():
        images = [exterior_d(SuperForm._make(even_dim, odd_dim, {m: Fraction(1)})) for m in monos]
        target_index: dict[FormMonomial, int] = {}
        for img in images:
            for mono in img.terms:
                if mono not in target_index:
                    target_index[mono] = len(target_index)
        if not target_index:
            ranks[(p, w)] = 0
            continue
        rows = []
        for img in images:
            row = [Fraction(0)] * len(target_index)
            for mono, coeff in img.terms.items():
                row[target_index[mono]] = coeff
            rows.append(row)
        ranks[(p, w)] = linalg.rank_of(rows)

    dims = []
    for p in range(max_degree + 1):
        total = 0
        for w in range(max_weight + 1):
            block = blocks.get((p, w), [])
            nullity = len(block) - ranks.get((p, w), 0)
            total += nullity - ranks.get((p - 1, w), 0)
        dims.append(total)
    return dims


def cohomology_dims_by_homotopy(
    even_dim: int,
    odd_dim: int,
    max_degree: int,
    max_weight: int,
    budget: int = 100_000,
) -> list[int]:
    """Cohomology dimensions via the Euler homotopy certificate.

    Verifies d i_E + i_E d = weight * id on every monomial of every
    block in the window.  The identity makes every positive-weight
    closed form exact, so only the weight-0 block survives, and that
    block is the constants sitting in degree 0.
    """
    blocks = form_blocks(even_dim, odd_dim, max_degree, max_weight, budget)
    for (p, w), monos in blocks.items():
        for mono in monos:
            single = SuperForm._make(even_dim, odd_dim, {mono: Fraction(1)})
            homotopy = exterior_d(euler_contract(single)) + euler_contract(
                exterior_d(single)
            )
            if homotopy != single * Fraction(w):
                raise GrasskitError(
                    "internal check failed: Euler homotopy identity broke "
                    f"on {single.to_text()}"
                )
    return [1] + [0] * max_degree
