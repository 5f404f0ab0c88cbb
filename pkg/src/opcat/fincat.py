"""Data model and validator for strict symmetric monoidal categories.

A category is presented either by finite tables or by backends whose
state/effect hom-sets are enumerable (possibly as seeded probe sets).
Only C(I,A), C(A,I) and C(I,I) are ever enumerated; general morphisms
are values composed on demand.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np


class CategoryError(Exception):
    """Malformed category data."""


class TypeMismatch(CategoryError):
    """Composition or tensor applied to morphisms whose types do not match."""


@dataclass(frozen=True)
class ObjectId:
    """An object of the category.

    ``index`` is the backend-canonical key (size for relations, dimension
    for matrix backends, table/poset position otherwise); labels are
    display-only and synthesized for tensor products.
    """

    index: int
    label: str = field(compare=False)

    def __repr__(self):
        return f"Ob({self.label})"


@dataclass(frozen=True, eq=False)
class Morphism:
    """A morphism with a backend-specific payload.

    Equality is payload equality within one category; use
    ``FinSMC.canonical_key`` / ``FinSMC.morphisms_equal`` rather than
    ``==`` (payloads are frequently numpy arrays).
    """

    dom: ObjectId
    cod: ObjectId
    payload: Any
    name: Optional[str] = None

    def __repr__(self):
        tag = self.name if self.name is not None else "morphism"
        return f"{tag}:{self.dom.label}->{self.cod.label}"


@dataclass(frozen=True)
class Duality:
    """Compact-closure data for one object: dual object, cup and cap."""

    dual: ObjectId
    cup: Morphism   # I -> dual (x) object
    cap: Morphism   # object (x) dual -> I


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ValidationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(CheckResult(name, bool(passed), detail, witness))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "warnings": list(self.warnings),
        }


class FinSMC(ABC):
    """A strict symmetric monoidal category presented by finite data.

    Subclasses supply the raw operations; instances are immutable after
    construction and all operations are pure, so sharing across threads
    is safe.
    """

    name: str = "category"
    exact: bool = True
    scalars_finite: bool = True

    def __init__(self, objects: tuple[ObjectId, ...], unit: ObjectId):
        self.objects = tuple(objects)
        self.unit = unit
        labels = [o.label for o in self.objects]
        if len(set(labels)) != len(labels):
            raise CategoryError(f"duplicate object labels: {labels}")
        if unit not in self.objects:
            raise CategoryError("unit object is not among the declared objects")

    # -- raw structure ----------------------------------------------------

    @abstractmethod
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g after f."""

    @abstractmethod
    def identity(self, a: ObjectId) -> Morphism:
        ...

    @abstractmethod
    def tensor_obj(self, a: ObjectId, b: ObjectId) -> ObjectId:
        ...

    @abstractmethod
    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        ...

    @abstractmethod
    def symmetry(self, a: ObjectId, b: ObjectId) -> Morphism:
        """The swap a (x) b -> b (x) a."""

    @abstractmethod
    def states(self, a: ObjectId, count: Optional[int] = None) -> list[Morphism]:
        """Enumeration of C(I,a), deterministic and prefix-stable in count."""

    @abstractmethod
    def effects(self, a: ObjectId, count: Optional[int] = None) -> list[Morphism]:
        """Enumeration of C(a,I), deterministic and prefix-stable in count."""

    @abstractmethod
    def canonical_key(self, f: Morphism):
        """Hashable canonical form deciding morphism equality."""

    def duality(self, a: ObjectId) -> Optional[Duality]:
        return None

    def sample_morphism(self, rng: np.random.Generator, a: ObjectId,
                        b: ObjectId) -> Optional[Morphism]:
        """A pseudo-random element of C(a,b); None when the hom is empty."""
        return None

    def scalar_block(self, states: list[Morphism],
                     effects: list[Morphism]) -> Optional[np.ndarray]:
        """Optional fast path: the (n_states x n_effects) matrix of raw
        scalar values of effect.state composites; None to use the generic
        compose loop."""
        return None

    def collision_variants(self, f: Morphism) -> list[Morphism]:
        """Morphisms known to share f's represented map (e.g. sign or
        phase twins); used to seed collision searches."""
        return []

    def cone_membership(self, space, coords: np.ndarray, tols) -> Optional[dict]:
        """Certificate that a coordinate vector lies in the represented
        cone, or None.  The default decides linear feasibility over the
        enumerated generators; backends with richer structure may decide
        membership in the true cone instead."""
        from . import linalg
        c = linalg.nonneg_combination(space.cone_generators, coords,
                                      self.exact, tols)
        if c is None:
            return None
        return {"kind": "combination",
                "coefficients": [float(x) for x in c]}

    def enumerate_hom(self, a: ObjectId, b: ObjectId) -> Optional[list[Morphism]]:
        """Full hom-set when finitely enumerable at reasonable size."""
        return None

    def hom_size(self, a: ObjectId, b: ObjectId) -> Optional[int]:
        return None

    def backend_checks(self, report: ValidationReport, budget: int,
                       rng: np.random.Generator) -> None:
        """Extra structural checks a backend wants in the validation report."""

    # -- shared helpers ----------------------------------------------------

    def morphisms_equal(self, f: Morphism, g: Morphism) -> bool:
        return (f.dom == g.dom and f.cod == g.cod
                and self.canonical_key(f) == self.canonical_key(g))

    def describe(self, f: Morphism) -> str:
        return repr(f)

    def object_by_label(self, label: str) -> ObjectId:
        for o in self.objects:
            if o.label == label:
                return o
        raise CategoryError(f"no object labeled {label!r}")

    def check_types(self, g: Morphism, f: Morphism) -> None:
        if f.cod != g.dom:
            raise TypeMismatch(
                f"cannot compose {self.describe(g)} after {self.describe(f)}: "
                f"{f.cod.label} != {g.dom.label}")


def hom_states(cat: FinSMC, a: ObjectId) -> list[Morphism]:
    return cat.states(a)


def hom_effects(cat: FinSMC, a: ObjectId) -> list[Morphism]:
    return cat.effects(a)


def _sampled_morphisms(cat: FinSMC, rng, budget: int) -> list[Morphism]:
    """A pool of morphisms for law checking: enumerated homs when small,
    otherwise seeded samples, plus all identities and state/effect probes."""
    pool: list[Morphism] = [cat.identity(o) for o in cat.objects]
    for o in cat.objects:
        pool.extend(cat.states(o))
        pool.extend(cat.effects(o))
    for a in cat.objects:
        for b in cat.objects:
            hom = cat.enumerate_hom(a, b)
            if hom is not None and len(hom) <= budget:
                pool.extend(hom)
            else:
                for _ in range(4):
                    f = cat.sample_morphism(rng, a, b)
                    if f is not None:
                        pool.append(f)
    return pool


def validate(cat: FinSMC, budget: int = 1000, seed: int = 0) -> ValidationReport:
    """Check the symmetric-monoidal axioms on enumerated or sampled data.

    Every axiom gets a named entry with a witness on failure; strictness
    of the tensor is checked on all declared object pairs and triples.
    """
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=cat.name)
    objs = cat.objects

    # unit flagged and present
    report.add("unit_object", cat.unit in objs, detail=f"unit={cat.unit.label}")

    # strictness of the object tensor
    bad = None
    for a, b, c in itertools.islice(itertools.product(objs, repeat=3), budget):
        left = cat.tensor_obj(cat.tensor_obj(a, b), c)
        right = cat.tensor_obj(a, cat.tensor_obj(b, c))
        if left != right:
            bad = {"objects": [a.label, b.label, c.label]}
            break
    report.add("tensor_strictly_associative", bad is None, witness=bad)
    bad = None
    for a in objs:
        if cat.tensor_obj(cat.unit, a) != a or cat.tensor_obj(a, cat.unit) != a:
            bad = {"object": a.label}
            break
    report.add("tensor_strictly_unital", bad is None, witness=bad)

    pool = _sampled_morphisms(cat, rng, budget)
    by_dom: dict[int, list[Morphism]] = {}
    for f in pool:
        by_dom.setdefault(f.dom.index, []).append(f)

    # identities are units for composition
    bad = None
    for f in pool[:budget]:
        if not cat.morphisms_equal(cat.compose(f, cat.identity(f.dom)), f):
            bad = {"morphism": cat.describe(f), "side": "right"}
            break
        if not cat.morphisms_equal(cat.compose(cat.identity(f.cod), f), f):
            bad = {"morphism": cat.describe(f), "side": "left"}
            break
    report.add("identity_unital", bad is None, witness=bad,
               detail=f"{min(len(pool), budget)} morphisms")

    # associativity on composable triples drawn from the pool
    bad = None
    checked = 0
    for f in pool:
        if checked >= budget:
            break
        for g in by_dom.get(f.cod.index, []):
            if checked >= budget:
                break
            for h in by_dom.get(g.cod.index, []):
                left = cat.compose(h, cat.compose(g, f))
                right = cat.compose(cat.compose(h, g), f)
                checked += 1
                if not cat.morphisms_equal(left, right):
                    bad = {"f": cat.describe(f), "g": cat.describe(g),
                           "h": cat.describe(h)}
                    break
                if checked >= budget:
                    break
            if bad:
                break
        if bad:
            break
    report.add("composition_associative", bad is None, witness=bad,
               detail=f"{checked} triples")

    # interchange law on composable quadruples
    bad = None
    checked = 0
    for f in pool:
        if bad or checked >= budget:
            break
        for g in by_dom.get(f.cod.index, []):
            if bad or checked >= budget:
                break
            for h in pool:
                if checked >= budget:
                    break
                for k in by_dom.get(h.cod.index, []):
                    left = cat.tensor_mor(cat.compose(g, f), cat.compose(k, h))
                    right = cat.compose(cat.tensor_mor(g, k), cat.tensor_mor(f, h))
                    checked += 1
                    if not cat.morphisms_equal(left, right):
                        bad = {"f": cat.describe(f), "g": cat.describe(g),
                               "h": cat.describe(h), "k": cat.describe(k)}
                        break
                    if checked >= budget:
                        break
                if bad:
                    break
    report.add("interchange", bad is None, witness=bad, detail=f"{checked} quadruples")

    # symmetry: involutive and natural
    bad = None
    for a, b in itertools.product(objs, repeat=2):
        s = cat.symmetry(a, b)
        s_back = cat.symmetry(b, a)
        if not cat.morphisms_equal(cat.compose(s_back, s),
                                   cat.identity(cat.tensor_obj(a, b))):
            bad = {"objects": [a.label, b.label]}
            break
    report.add("symmetry_involutive", bad is None, witness=bad)
    bad = None
    checked = 0
    for f in pool:
        if bad or checked >= budget:
            break
        for g in pool:
            s_in = cat.symmetry(f.dom, g.dom)
            s_out = cat.symmetry(f.cod, g.cod)
            left = cat.compose(s_out, cat.tensor_mor(f, g))
            right = cat.compose(cat.tensor_mor(g, f), s_in)
            checked += 1
            if not cat.morphisms_equal(left, right):
                bad = {"f": cat.describe(f), "g": cat.describe(g)}
                break
            if checked >= budget:
                break
    report.add("symmetry_natural", bad is None, witness=bad, detail=f"{checked} squares")

    # scalar enumerations: states(I) and effects(I) both enumerate C(I,I)
    s_keys = {cat.canonical_key(m) for m in cat.states(cat.unit)}
    e_keys = {cat.canonical_key(m) for m in cat.effects(cat.unit)}
    report.add("scalar_enumerations_agree", s_keys == e_keys,
               detail=f"{len(s_keys)} scalar probes")

    # empty state enumerations are allowed but worth flagging
    for o in objs:
        if not cat.states(o):
            report.warnings.append(f"C(I,{o.label}) is empty; the represented "
                                   f"space of {o.label} will be zero")

    # snake equations when duality is declared
    for o in objs:
        dual = cat.duality(o)
        if dual is None:
            continue
        ok, witness = _snake_holds(cat, o, dual)
        report.add(f"snake_{o.label}", ok, witness=witness)

    cat.backend_checks(report, budget, rng)
    return report


def _snake_holds(cat: FinSMC, a: ObjectId, d: Duality):
    """Both triangle identities for (cup, cap) at object a."""
    id_a = cat.identity(a)
    id_d = cat.identity(d.dual)
    left = cat.compose(cat.tensor_mor(d.cap, id_a), cat.tensor_mor(id_a, d.cup))
    if not cat.morphisms_equal(left, id_a):
        return False, {"object": a.label, "identity": "first"}
    right = cat.compose(cat.tensor_mor(id_d, d.cap), cat.tensor_mor(d.cup, id_d))
    if not cat.morphisms_equal(right, id_d):
        return False, {"object": a.label, "identity": "second"}
    return True, None
