"""Exact sparse polynomials, multilinear in half-edge variables.

A monomial is a set of half-edge variables ``a<id>`` (stored as a bitmask)
times ``r**r_exp * q**q_exp``.  Coefficients are Python integers.
"""

from __future__ import annotations

import json
import math
import re
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "Monomial",
    "Polynomial",
    "MultilinearityError",
    "MissingAssignmentError",
    "mask_of",
    "ids_of",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_substitute",
    "poly_eval",
    "poly_canonical_text",
    "parse_polynomial",
]

Rational = Union[int, Fraction]


class MultilinearityError(ValueError):
    """A product or substitution would square a half-edge variable."""


class MissingAssignmentError(KeyError):
    """Evaluation point lacks a value for a variable."""


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for h in ids:
        m |= 1 << h
    return m


def ids_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return tuple(out)


class Monomial(NamedTuple):
    mask: int
    r: int = 0
    q: int = 0

    @property
    def vars(self) -> tuple[int, ...]:
        return ids_of(self.mask)

    @classmethod
    def of(cls, ids: Iterable[int] = (), r: int = 0, q: int = 0) -> "Monomial":
        ids = list(ids)
        m = mask_of(ids)
        if bin(m).count("1") != len(ids):
            raise MultilinearityError(f"repeated variable in {ids}")
        return cls(m, r, q)

    def sort_key(self):
        return (self.vars, self.r, self.q)

    def text(self) -> str:
        parts = [f"a{h}" for h in self.vars]
        if self.r:
            parts.append("r" if self.r == 1 else f"r^{self.r}")
        if self.q:
            parts.append("q" if self.q == 1 else f"q^{self.q}")
        return "*".join(parts)


class Polynomial:
    """Immutable mapping Monomial -> nonzero int."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = defaultdict(int)
        for mono, c in items:
            acc[Monomial(*mono)] += c
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already canonical: Monomial keys, nonzero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def from_masks(cls, masks: Iterable[int], coeff: int = 1) -> "Polynomial":
        acc: dict[Monomial, int] = defaultdict(int)
        for m in masks:
            acc[Monomial(m, 0, 0)] += coeff
        return cls._raw({k: c for k, c in acc.items() if c})

    # constructors
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def const(cls, n: int) -> "Polynomial":
        return cls._raw({Monomial(0): n} if n else {})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.const(1)

    @classmethod
    def var(cls, h: int) -> "Polynomial":
        return cls._raw({Monomial(1 << h): 1})

    @classmethod
    def r(cls, k: int = 1) -> "Polynomial":
        return cls._raw({Monomial(0, k, 0): 1})

    @classmethod
    def q(cls, k: int = 1) -> "Polynomial":
        return cls._raw({Monomial(0, 0, k): 1})

    @classmethod
    def linear(cls, ids: Iterable[int]) -> "Polynomial":
        """Sum of the variables ``a_h`` for ``h`` in ``ids``."""
        return cls.from_masks(1 << h for h in ids)

    # views
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def coefficients(self) -> list[int]:
        return list(self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> int:
        """Bitmask of half-edge variables occurring in any term."""
        m = 0
        for mono in self._terms:
            m |= mono.mask
        return m

    def variables(self) -> tuple[int, ...]:
        return ids_of(self.support())

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(Monomial(*mono), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.text()!r})"

    def __str__(self) -> str:
        return self.text()

    # arithmetic
    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, n: int) -> "Polynomial":
        if not n:
            return Polynomial.zero()
        return Polynomial._raw({m: c * n for m, c in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.support() & other.support():
            raise MultilinearityError(
                f"operands share variables {list(ids_of(self.support() & other.support()))}"
            )
        acc: dict[Monomial, int] = defaultdict(int)
        for (m1, r1, q1), c1 in self._terms.items():
            for (m2, r2, q2), c2 in other._terms.items():
                acc[Monomial(m1 | m2, r1 + r2, q1 + q2)] += c1 * c2
        return Polynomial._raw({k: c for k, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        # only meaningful for polynomials free of half-edge variables
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one()
        for _ in range(n):
            out = out * self
        return out

    # substitution and evaluation
    def substitute(self, h: int, replacement: "Polynomial") -> "Polynomial":
        """Replace ``a_h`` by ``replacement`` and re-expand."""
        bit = 1 << h
        if replacement.support() & bit:
            raise ValueError(f"replacement mentions a{h}")
        acc: dict[Monomial, int] = defaultdict(int)
        for (m, r, q), c in self._terms.items():
            if not m & bit:
                acc[Monomial(m, r, q)] += c
                continue
            rest = m ^ bit
            for (m2, r2, q2), c2 in replacement._terms.items():
                if rest & m2:
                    raise MultilinearityError(f"substituting a{h} squares a variable")
                acc[Monomial(rest | m2, r + r2, q + q2)] += c * c2
        return Polynomial._raw({k: c for k, c in acc.items() if c})

    def subs_r(self, value: "Polynomial | int") -> "Polynomial":
        """Substitute ``r := value`` where ``value`` has no half-edge variables."""
        return self._subs_extra(value, 1)

    def subs_q(self, value: "Polynomial | int") -> "Polynomial":
        return self._subs_extra(value, 2)

    def _subs_extra(self, value, slot: int) -> "Polynomial":
        if isinstance(value, int):
            value = Polynomial.const(value)
        if value.support():
            raise ValueError("r/q substitutions may not contain half-edge variables")
        powers: dict[int, Polynomial] = {0: Polynomial.one()}
        acc: dict[Monomial, int] = defaultdict(int)
        for (m, r, q), c in self._terms.items():
            k = (r, q)[slot - 1]
            if k not in powers:
                powers[k] = value ** k
            r0, q0 = (0, q) if slot == 1 else (r, 0)
            for (_, r2, q2), c2 in powers[k]._terms.items():
                acc[Monomial(m, r0 + r2, q0 + q2)] += c * c2
        return Polynomial._raw({k: c for k, c in acc.items() if c})

    def evaluate(
        self,
        assignment: Mapping[int, Rational],
        r: Rational | None = None,
        q: Rational | None = None,
    ) -> Fraction:
        # scale every variable to a common denominator so the inner loop is integer-only
        values = {h: Fraction(x) for h, x in assignment.items()}
        den = math.lcm(*(x.denominator for x in values.values())) if values else 1
        scaled = {h: x.numerator * (den // x.denominator) for h, x in values.items()}
        by_shape: dict[tuple[int, int, int], int] = defaultdict(int)
        for (m, rk, qk), c in self._terms.items():
            val = c
            deg = 0
            while m:
                low = m & -m
                h = low.bit_length() - 1
                if h not in scaled:
                    raise MissingAssignmentError(f"no value for a{h}")
                val *= scaled[h]
                deg += 1
                m ^= low
            by_shape[deg, rk, qk] += val
        total = Fraction(0)
        for (deg, rk, qk), val in by_shape.items():
            if rk and r is None:
                raise MissingAssignmentError("no value for r")
            if qk and q is None:
                raise MissingAssignmentError("no value for q")
            term = Fraction(val, den**deg)
            if rk:
                term *= Fraction(r) ** rk
            if qk:
                term *= Fraction(q) ** qk
            total += term
        return total

    def monomial_degrees(self) -> set[int]:
        return {bin(m.mask).count("1") for m in self._terms}

    # formats
    def text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mono, c in self.sorted_items():
            body = mono.text()
            out.append(f"{c:+d}*{body}" if body else f"{c:+d}")
        return " ".join(out)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c, "vars": list(m.vars), "r": m.r, "q": m.q} for m, c in self.sorted_items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Polynomial":
        return cls(
            (Monomial.of(t["vars"], t.get("r", 0), t.get("q", 0)), int(t["coeff"])) for t in data
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


_FACTOR = re.compile(r"^(?:a(\d+)|([rq])(?:\^(\d+))?)$")


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :meth:`Polynomial.text`."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero()
    terms = []
    for tok in text.split():
        coeff_s, *factors = tok.split("*")
        if not re.fullmatch(r"[+-]\d+", coeff_s):
            raise ValueError(f"bad coefficient in term {tok!r}")
        ids, r, q = [], 0, 0
        for f in factors:
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"bad factor {f!r} in term {tok!r}")
            if m.group(1) is not None:
                ids.append(int(m.group(1)))
            elif m.group(2) == "r":
                r += int(m.group(3) or 1)
            else:
                q += int(m.group(3) or 1)
        terms.append((Monomial.of(ids, r, q), int(coeff_s)))
    return Polynomial(terms)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, n: int) -> Polynomial:
    return p.scale(n)


def poly_substitute(p: Polynomial, h: int, replacement: Polynomial) -> Polynomial:
    return p.substitute(h, replacement)


def poly_eval(
    p: Polynomial,
    assignment: Mapping[int, Rational],
    r_val: Rational | None = None,
    q_val: Rational | None = None,
) -> Fraction:
    return p.evaluate(assignment, r_val, q_val)


def poly_canonical_text(p: Polynomial) -> str:
    return p.text()
