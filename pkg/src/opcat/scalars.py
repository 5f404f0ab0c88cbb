"""Scalar monoids C(I,I) and their homomorphisms into the nonnegative reals.

A homomorphism p interprets scalars as probabilities: p(id)=1 and
p(s.t)=p(s)p(t).  Finite monoids take explicit value tables; infinite
ones (matrix backends) take one of a fixed set of named rules.  For
categories with finite hom-sets there is also a canonical choice,
p(s) = |det R_s| with R_s the right-regular action on functions on the
monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .fincat import FinSMC, Morphism, ValidationReport
from .linalg import DEFAULT_TOLERANCES, Tolerances


class ScalarHomError(Exception):
    """A scalar homomorphism is malformed or inapplicable."""


class InfiniteScalars(ScalarHomError):
    """The canonical determinant homomorphism needs a finite scalar monoid."""


class NotClosed(ScalarHomError):
    """The enumerated scalar monoid is not closed under composition."""


@dataclass
class ScalarMonoid:
    """The monoid C(I,I), either enumerated with its composition table or
    described by a closed-form rule (matrix backends)."""

    category: FinSMC
    elements: Optional[list[Morphism]]
    table: Optional[dict[tuple[int, int], int]]
    description: str

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    def sample(self, rng: np.random.Generator, n: int) -> list[Morphism]:
        cat = self.category
        if self.is_finite:
            return [self.elements[int(rng.integers(len(self.elements)))]
                    for _ in range(n)]
        return [cat.sample_morphism(rng, cat.unit, cat.unit) for _ in range(n)]


def scalar_monoid(cat: FinSMC) -> ScalarMonoid:
    """Enumerate C(I,I) with its composition table, or return the
    closed-form description for infinite-hom backends."""
    if not getattr(cat, "scalars_finite", True):
        field = getattr(cat, "field", "real")
        return ScalarMonoid(cat, None, None,
                            f"{field} numbers under multiplication")
    elements: list[Morphism] = []
    keys: dict = {}
    for s in cat.states(cat.unit):
        k = cat.canonical_key(s)
        if k not in keys:
            keys[k] = len(elements)
            elements.append(s)
    table: dict[tuple[int, int], int] = {}
    for i, s in enumerate(elements):
        for j, t in enumerate(elements):
            st = cat.compose(s, t)
            k = cat.canonical_key(st)
            if k not in keys:
                raise NotClosed(f"composite {cat.describe(s)} after "
                                f"{cat.describe(t)} is not an enumerated scalar")
            table[(i, j)] = keys[k]
    return ScalarMonoid(cat, elements, table, f"finite ({len(elements)} elements)")


class ScalarHom:
    """Base for p : C(I,I) -> nonnegative reals."""

    def __init__(self, cat: FinSMC, label: str):
        self.category = cat
        self.exact = cat.exact
        self.label = label

    def value(self, s: Morphism):
        raise NotImplementedError

    def value_block(self, raw: np.ndarray) -> np.ndarray:
        """Vectorized p over a matrix of raw scalar values (see
        FinSMC.scalar_block); the default is unsupported."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.label}


class RuleScalarHom(ScalarHom):
    """A named closed-form rule applied to the backend's raw scalar value."""

    RULES = ("abs2", "abs", "identity-on-nonneg")

    def __init__(self, cat: FinSMC, rule: str):
        if rule not in self.RULES:
            raise ScalarHomError(f"unknown scalar rule {rule!r}")
        super().__init__(cat, f"rule:{rule}")
        self.rule = rule

    def _apply(self, v):
        if self.rule == "abs2":
            return abs(v) ** 2
        if self.rule == "abs":
            return abs(v)
        return v

    def value(self, s: Morphism):
        v = self._apply(self.category.scalar_value(s))
        if self.exact:
            return Fraction(v)
        return float(np.real(v))

    def value_block(self, raw: np.ndarray) -> np.ndarray:
        if self.rule == "abs2":
            out = np.abs(raw) ** 2
        elif self.rule == "abs":
            out = np.abs(raw)
        else:
            out = raw
        if self.exact:
            return linalg.exact_matrix(np.asarray(out).tolist())
        return np.asarray(np.real(out), dtype=float)


class TableScalarHom(ScalarHom):
    """Explicit values per enumerated scalar, keyed by canonical form."""

    def __init__(self, cat: FinSMC, values: dict, label: str = "table"):
        super().__init__(cat, label)
        self._values = dict(values)

    @classmethod
    def from_morphism_values(cls, cat: FinSMC, pairs: list[tuple[Morphism, object]],
                             label: str = "table") -> "TableScalarHom":
        vals = {}
        for s, v in pairs:
            vals[cat.canonical_key(s)] = Fraction(v) if cat.exact else float(v)
        return cls(cat, vals, label=label)

    def value(self, s: Morphism):
        k = self.category.canonical_key(s)
        if k not in self._values:
            raise ScalarHomError(f"scalar {self.category.describe(s)} has no "
                                 f"assigned value")
        return self._values[k]


def canonical_det_hom(cat: FinSMC, tols: Tolerances = DEFAULT_TOLERANCES) -> TableScalarHom:
    """p(s) = |det R_s| for the right-regular action R_s(f)(x) = f(x.s).

    Requires a finite scalar monoid; the result is validated before it is
    returned.
    """
    monoid = scalar_monoid(cat)
    if not monoid.is_finite:
        raise InfiniteScalars(f"{cat.name} has a rule-described scalar monoid")
    n = len(monoid.elements)
    pairs = []
    for si, s in enumerate(monoid.elements):
        action = linalg.zeros((n, n), exact=True)
        for xi in range(n):
            action[xi, monoid.table[(xi, si)]] = Fraction(1)
        pairs.append((s, abs(linalg.bareiss_determinant(action))))
    hom = TableScalarHom.from_morphism_values(cat, pairs, label="canonical-det")
    report = validate_hom(hom, monoid, tols=tols)
    if not report.passed:
        raise ScalarHomError(
            f"canonical determinant homomorphism failed validation: "
            f"{[c.name for c in report.failures()]}")
    return hom


def default_scalar_hom(cat: FinSMC) -> ScalarHom:
    """The textbook homomorphism for each built-in backend: Born-rule
    squared modulus on matrix categories, the 0/1 inclusion on relations
    and semilattices, and the determinant homomorphism on bare tables."""
    if not getattr(cat, "scalars_finite", True):
        return RuleScalarHom(cat, "abs2")
    if hasattr(cat, "scalar_value"):
        return RuleScalarHom(cat, "identity-on-nonneg")
    return canonical_det_hom(cat)


def validate_hom(hom: ScalarHom, monoid: ScalarMonoid, budget: int = 1000,
                 seed: int = 0, tols: Tolerances = DEFAULT_TOLERANCES) -> ValidationReport:
    """Check unitality, nonnegativity and multiplicativity of p.

    Exhaustive on finite monoids; at least ``budget`` random pairs on
    rule-described ones.
    """
    cat = monoid.category
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:{hom.label}")
    ident = cat.identity(cat.unit)
    p_id = hom.value(ident)
    if hom.exact:
        unital = p_id == 1
    else:
        unital = abs(float(p_id) - 1.0) <= tols.num
    if (p_id == 0) if hom.exact else (abs(float(p_id)) <= tols.num):
        report.warnings.append(
            "p(id)=0 is the everywhere-degenerate homomorphism; it collapses "
            "every represented space to zero and is rejected")
    report.add("unital", unital, detail=f"p(id)={p_id}")

    if monoid.is_finite:
        elems = monoid.elements
        pairs = [(s, t) for s in elems for t in elems]
    else:
        elems = monoid.sample(rng, max(budget, 64))
        pairs = [(elems[int(rng.integers(len(elems)))],
                  elems[int(rng.integers(len(elems)))]) for _ in range(budget)]

    bad = None
    for s in elems:
        v = hom.value(s)
        neg = (v < 0) if hom.exact else (float(v) < -tols.num)
        if neg:
            bad = {"scalar": cat.describe(s), "value": float(v)}
            break
    report.add("nonnegative", bad is None, witness=bad,
               detail=f"{len(elems)} scalars")

    bad = None
    for s, t in pairs:
        lhs = hom.value(cat.compose(s, t))
        rhs = hom.value(s) * hom.value(t)
        if hom.exact:
            equal = lhs == rhs
        else:
            equal = abs(float(lhs) - float(rhs)) <= tols.num * max(1.0, abs(float(rhs)))
        if not equal:
            bad = {"s": cat.describe(s), "t": cat.describe(t),
                   "p(st)": float(lhs), "p(s)p(t)": float(rhs)}
            break
    report.add("multiplicative", bad is None, witness=bad,
               detail=f"{len(pairs)} pairs")
    return report
