"""Units, normalized states, effect intervals, and the physical subcategory.

A unit is a strictly positive functional per object that dominates every
enumerated effect up to scale and is multiplicative across the tensor.
Fixing one yields normalized-state sections, the effect interval [0,u]
with its partial sum, sub-normalizing ("physical") morphisms, and
certified marginals of joint states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg, monoidal
from .backends import MatrixCategory, RelCategory, SemilatticeCategory
from .fincat import Morphism, ObjectId, ValidationReport
from .monoidal import CompositeStructure, bilinear_apply, marginal_vectors
from .oprep import OperationalSpace, Representation, effect_functional


class NoCanonicalUnit(Exception):
    """The backend has no canonical unit; one must be supplied."""


class NotOrthogonal(Exception):
    """Partial sum of interval elements falls outside the interval."""


class ConeCertificateFailure(Exception):
    """A vector required to lie in a represented cone has no nonnegative
    decomposition over the generators; this would violate the positive-
    marginal condition of the composite."""


@dataclass
class UnitFunctional:
    object: ObjectId
    row: np.ndarray            # against the object's basis
    provenance: str
    degenerate: bool = False   # zero-dimensional space: no strict positivity

    def value(self, coords: np.ndarray):
        return linalg.matmul(self.row, coords, self.row.dtype == object)


@dataclass
class Com:
    """A represented space with a validated unit: normalized generators,
    the effect interval, and order-unit bookkeeping."""

    space: OperationalSpace
    unit: UnitFunctional
    omega_generators: np.ndarray          # u=1 rescalings of nonzero generators
    omega_state_indices: list[int]
    unit_in_dual_span: bool
    unit_dual_combination: Optional[np.ndarray]
    order_unit_certified: bool
    degenerate: bool = False


def _unit_from_row(rep, obj, row, provenance) -> UnitFunctional:
    space = rep.space(obj)
    return UnitFunctional(object=obj, row=row, provenance=provenance,
                          degenerate=space.dim == 0)


def builtin_unit(rep: Representation, obj: ObjectId) -> UnitFunctional:
    """The canonical unit of a built-in backend: the full-set effect on
    relations, the trace on matrix categories, the unique effect to the
    top on semilattices.  Bare table categories have none."""
    cat = rep.cat
    space = rep.space(obj)
    if isinstance(cat, RelCategory):
        full = cat.effects(obj)[-1]    # all-ones subset is enumerated last
        row = effect_functional(cat, rep.hom, space, full)
        return _unit_from_row(rep, obj, row, "full-set")
    if isinstance(cat, MatrixCategory):
        row = linalg.zeros((space.dim,), exact=False)
        for j, alpha in enumerate(space.basis_states()):
            v = alpha.payload.reshape(-1)
            row[j] = float(np.real(np.vdot(v, v)))
        return _unit_from_row(rep, obj, row, "trace")
    if isinstance(cat, SemilatticeCategory):
        eff = cat.effects(obj)
        row = effect_functional(cat, rep.hom, space, eff[0]) if eff else \
            linalg.zeros((space.dim,), cat.exact)
        return _unit_from_row(rep, obj, row, "discard")
    raise NoCanonicalUnit(f"{cat.name}: no canonical unit; supply one")


def unit_from_discard(rep: Representation, obj: ObjectId,
                      discard: Morphism) -> UnitFunctional:
    """A unit from a designated discard morphism obj -> I."""
    row = effect_functional(rep.cat, rep.hom, rep.space(obj), discard)
    return _unit_from_row(rep, obj, row, "discard")


def unit_from_vector(rep: Representation, obj: ObjectId, coords) -> UnitFunctional:
    space = rep.space(obj)
    if len(coords) != space.dim:
        raise NoCanonicalUnit(
            f"unit vector for {obj.label} has length {len(coords)}, "
            f"need {space.dim}")
    if rep.cat.exact:
        row = linalg.exact_matrix([list(coords)])[0]
    else:
        row = np.asarray([float(c) for c in coords], dtype=float)
    return _unit_from_row(rep, obj, row, "user")


def _nonzero_generators(space: OperationalSpace, tols) -> list[int]:
    return [i for i in range(len(space.states))
            if not linalg.is_zero_vector(space.cone_generators[i],
                                         space.exact, tols.num)]


def minimal_dominating_scale(unit: UnitFunctional, row: np.ndarray,
                             space: OperationalSpace, tols):
    """The least t >= 0 with row <= t * unit on the cone, or None when a
    generator outside the unit's support sees the row."""
    exact = space.exact
    best = Fraction(0) if exact else 0.0
    for i in _nonzero_generators(space, tols):
        g = space.cone_generators[i]
        ug = unit.value(g)
        rg = linalg.matmul(row, g, exact)
        if (ug == 0) if exact else (float(ug) <= tols.num):
            if (rg > 0) if exact else (float(rg) > tols.num):
                return None
            continue
        ratio = rg / ug
        if ratio > best:
            best = ratio
    return best


def validate_unit(rep: Representation, units: dict[int, UnitFunctional],
                  object_pairs: Optional[list] = None, budget: int = 1000,
                  seed: int = 0) -> ValidationReport:
    """Strict positivity on generators, domination of every enumerated
    effect with explicit minimal scale, and multiplicativity across
    composites of the supplied pairs."""
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:units")

    for idx in sorted(units):
        unit = units[idx]
        space = rep.space(unit.object)
        label = unit.object.label
        if unit.degenerate or space.dim == 0:
            report.add(f"unit_{label}_degenerate", True,
                       detail="zero-dimensional space; strict positivity is vacuous")
            continue
        bad = None
        for i in _nonzero_generators(space, tols):
            v = unit.value(space.cone_generators[i])
            pos = (v > 0) if exact else (float(v) > tols.num)
            if not pos:
                bad = {"state": cat.describe(space.states[i]), "value": float(v)}
                break
        report.add(f"unit_{label}_strictly_positive", bad is None, witness=bad)

        bad = None
        t_max = Fraction(0) if exact else 0.0
        for e_idx in range(len(space.effects)):
            row = space.dual_cone_generators[e_idx]
            t = minimal_dominating_scale(unit, row, space, tols)
            if t is None:
                bad = {"effect": cat.describe(space.effects[e_idx]),
                       "reason": "effect sees a generator the unit annihilates"}
                break
            resid_bad = None
            for i in _nonzero_generators(space, tols):
                g = space.cone_generators[i]
                slack = t * unit.value(g) - linalg.matmul(row, g, exact)
                if (slack < 0) if exact else (float(slack) < -tols.num):
                    resid_bad = {"effect": cat.describe(space.effects[e_idx]),
                                 "state": cat.describe(space.states[i]),
                                 "slack": float(slack)}
                    break
            if resid_bad:
                bad = resid_bad
                break
            t_max = max(t_max, t)
        report.add(f"unit_{label}_dominates_effects", bad is None, witness=bad,
                   detail=f"max minimal t = {float(t_max):g} over "
                          f"{len(space.effects)} effects")

    if object_pairs:
        bad = None
        checked = 0
        worst = 0.0
        for a_obj, b_obj in object_pairs:
            comp = monoidal.build_composite(rep, a_obj, b_obj)
            ua = units.get(a_obj.index)
            ub = units.get(b_obj.index)
            uj = units.get(comp.joint.index)
            if ua is None or ub is None or uj is None:
                report.add(f"unit_multiplicative_{a_obj.label}_{b_obj.label}",
                           True, detail="skipped: pair lacks a joint unit")
                continue
            sa, sb = comp.space_a, comp.space_b
            pairs = [(i, j) for i in range(len(sa.states))
                     for j in range(len(sb.states))]
            if not exact and len(pairs) > budget:
                pairs = [(int(rng.integers(len(sa.states))),
                          int(rng.integers(len(sb.states))))
                         for _ in range(budget)]
            for i, j in pairs:
                joint_vec = bilinear_apply(comp.circ_tensor,
                                           sa.cone_generators[i],
                                           sb.cone_generators[j], exact)
                lhs = uj.value(joint_vec)
                rhs = ua.value(sa.cone_generators[i]) * \
                    ub.value(sb.cone_generators[j])
                err = abs(lhs - rhs)
                checked += 1
                if not exact:
                    worst = max(worst, float(err))
                if (err != 0) if exact else \
                        (float(err) > tols.num * max(1.0, abs(float(rhs)))):
                    bad = {"pair": [a_obj.label, b_obj.label],
                           "alpha": cat.describe(sa.states[i]),
                           "beta": cat.describe(sb.states[j]),
                           "error": float(err)}
                    break
            if bad:
                break
        detail = f"{checked} state pairs"
        if not exact:
            detail += f", max error {worst:.3e}"
        report.add("unit_multiplicative", bad is None, witness=bad, detail=detail)
    return report


def assemble_com(rep: Representation, unit: UnitFunctional) -> Com:
    """Normalize the cone generators against the unit and certify the
    order-unit property on the dual span."""
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    space = rep.space(unit.object)
    if space.dim == 0:
        return Com(space=space, unit=unit,
                   omega_generators=linalg.zeros((0, 0), exact),
                   omega_state_indices=[], unit_in_dual_span=True,
                   unit_dual_combination=None, order_unit_certified=True,
                   degenerate=True)
    omega_rows = []
    omega_idx = []
    for i in _nonzero_generators(space, tols):
        g = space.cone_generators[i]
        ug = unit.value(g)
        if (ug <= 0) if exact else (float(ug) <= tols.num):
            continue
        omega_rows.append(g / ug)
        omega_idx.append(i)
    omega = np.stack(omega_rows) if omega_rows else linalg.zeros((0, space.dim), exact)

    combo, ok = linalg.solve_rows(space.dual_cone_generators,
                                  unit.row.reshape(1, -1), exact, tols)
    in_span = bool(ok[0])

    certified = in_span
    if in_span:
        probes = [space.dual_cone_generators[i] for i in space.dual_basis_indices]
        rng = np.random.default_rng(0)
        for _ in range(8):
            w = rng.standard_normal(len(probes)) if probes else []
            if probes:
                mix = sum((float(c) if not exact else Fraction(c).limit_denominator(97))
                          * p for c, p in zip(w, probes))
                probes.append(mix)
        for f in probes:
            t = minimal_dominating_scale(unit, np.asarray(f), space, tols)
            if t is None:
                certified = False
                break
            for i in _nonzero_generators(space, tols):
                g = space.cone_generators[i]
                slack = t * unit.value(g) - linalg.matmul(np.asarray(f), g, exact)
                if (slack < 0) if exact else (float(slack) < -tols.feas):
                    certified = False
                    break
            if not certified:
                break
    return Com(space=space, unit=unit, omega_generators=omega,
               omega_state_indices=omega_idx, unit_in_dual_span=in_span,
               unit_dual_combination=combo[0] if in_span else None,
               order_unit_certified=certified)


def effect_interval_membership(com: Com, f_row: np.ndarray):
    """Is 0 <= f <= u on the cone?  Returns (bool, violating certificate)."""
    space = com.space
    exact = space.exact
    tols = linalg.DEFAULT_TOLERANCES
    for i in range(len(space.states)):
        g = space.cone_generators[i]
        low = linalg.matmul(f_row, g, exact)
        high = com.unit.value(g) - low
        if (low < 0) if exact else (float(low) < -tols.num):
            return False, {"generator": i, "side": "below 0", "value": float(low)}
        if (high < 0) if exact else (float(high) < -tols.num):
            return False, {"generator": i, "side": "above u", "value": float(high)}
    return True, None


def effect_algebra_sum(com: Com, f_row: np.ndarray, g_row: np.ndarray) -> np.ndarray:
    """The partial sum of the effect algebra: defined iff f+g stays in
    the interval."""
    for name, row in (("f", f_row), ("g", g_row)):
        ok, cert = effect_interval_membership(com, row)
        if not ok:
            raise NotOrthogonal(f"{name} is not an interval element: {cert}")
    total = f_row + g_row
    ok, cert = effect_interval_membership(com, total)
    if not ok:
        raise NotOrthogonal(f"f+g leaves the interval: {cert}")
    return total


def orthosupplement(com: Com, f_row: np.ndarray) -> np.ndarray:
    ok, cert = effect_interval_membership(com, f_row)
    if not ok:
        raise NotOrthogonal(f"f is not an interval element: {cert}")
    return com.unit.row - f_row


@dataclass
class PhysicalSubcategory:
    """Morphisms whose represented maps pull the codomain unit below the
    domain unit; closed under composition."""

    rep: Representation
    units: dict[int, UnitFunctional]

    def membership(self, phi: Morphism):
        rep = self.rep
        cat, tols = rep.cat, rep.tols
        exact = cat.exact
        ua = self.units[phi.dom.index]
        ub = self.units[phi.cod.index]
        m = rep.matrix(phi)
        pulled = linalg.matmul(ub.row, m.matrix, exact)
        space = rep.space(phi.dom)
        worst = Fraction(0) if exact else 0.0
        for i in range(len(space.states)):
            g = space.cone_generators[i]
            gap = linalg.matmul(pulled, g, exact) - ua.value(g)
            if gap > worst:
                worst = gap
        member = (worst <= 0) if exact else (float(worst) <= tols.num)
        return member, worst

    def closure_report(self, budget: int = 500, seed: int = 0) -> ValidationReport:
        """Members compose to members, exhaustively over enumerable homs
        when small and on seeded samples otherwise."""
        rep = self.rep
        cat = rep.cat
        rng = np.random.default_rng(seed)
        report = ValidationReport(subject=f"{cat.name}:physical-closure")
        from .oprep import _composable_pairs
        pairs, exhaustive = _composable_pairs(rep, rng, budget)
        bad = None
        member_pairs = 0
        for f, g in pairs:
            if not (f.dom.index in self.units and f.cod.index in self.units
                    and g.cod.index in self.units):
                continue
            ok_f, _ = self.membership(f)
            ok_g, _ = self.membership(g)
            if not (ok_f and ok_g):
                continue
            member_pairs += 1
            ok_gf, worst = self.membership(cat.compose(g, f))
            if not ok_gf:
                bad = {"f": cat.describe(f), "g": cat.describe(g),
                       "excess": float(worst)}
                break
        report.add("members_closed_under_composition", bad is None, witness=bad,
                   detail=f"{member_pairs} member pairs "
                          f"({'exhaustive' if exhaustive else 'sampled'})")
        return report


def physical_subcategory(rep: Representation,
                         units: dict[int, UnitFunctional]) -> PhysicalSubcategory:
    return PhysicalSubcategory(rep=rep, units=units)


def cone_certificate(rep: Representation, space: OperationalSpace,
                     coords: np.ndarray):
    """Certificate of cone membership via the backend's decision
    procedure (feasibility over generators, or spectral on matrix
    backends)."""
    return rep.cat.cone_membership(space, coords, rep.tols)


def marginal_states(rep: Representation, comp: CompositeStructure,
                    unit_a: UnitFunctional, unit_b: UnitFunctional,
                    omega: np.ndarray):
    """Both marginals of a joint vector, paired against the units, with
    cone certificates.  Raises ConeCertificateFailure when a marginal of
    a cone element is not certified inside the local cone."""
    m1 = marginal_vectors(comp, omega, row_b=unit_b.row)
    m2 = marginal_vectors(comp, omega, row_a=unit_a.row)
    cert1 = cone_certificate(rep, comp.space_a, m1)
    cert2 = cone_certificate(rep, comp.space_b, m2)
    if cert1 is None or cert2 is None:
        side = comp.space_a.object.label if cert1 is None else \
            comp.space_b.object.label
        raise ConeCertificateFailure(
            f"marginal on {side} has no nonnegative decomposition")
    return m1, m2, cert1, cert2


def _random_interval_element(com: Com, rng, tols):
    """A random element of [0,u]: a sparse nonnegative mix of evaluation
    rows, rescaled under the unit by its minimal dominating t."""
    space = com.space
    exact = space.exact
    n = len(space.effects)
    row = linalg.zeros((space.dim,), exact)
    for _ in range(3):
        i = int(rng.integers(n))
        w = rng.random()
        c = Fraction(w).limit_denominator(64) if exact else float(w)
        row = row + c * space.dual_cone_generators[i]
    t = minimal_dominating_scale(com.unit, row, space, tols)
    if t is None or ((t == 0) if exact else (float(t) <= tols.num)):
        return com.unit.row * (Fraction(1, 2) if exact else 0.5)
    return row / t


def check_no_signaling(rep: Representation, comp: CompositeStructure,
                       com_a: Com, com_b: Com, n_samples: int = 100,
                       seed: int = 0) -> ValidationReport:
    """Marginals are independent of the effect decomposition used.

    For sampled joint cone elements, the marginal through the one-element
    family {u} agrees with the marginal through a random two-effect
    splitting {f, u-f}; both marginals carry cone certificates.
    """
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:no-signaling"
                                      f"({comp.pair[0].label},{comp.pair[1].label})")
    sj = comp.space_joint
    gens = [i for i in range(len(sj.states))
            if not linalg.is_zero_vector(sj.cone_generators[i], exact, tols.num)]
    if not gens:
        report.add("marginals_decomposition_independent", True,
                   detail="no nonzero joint generators; vacuous")
        return report
    bad = None
    worst = 0.0
    certified = 0
    for _ in range(n_samples):
        omega = linalg.zeros((sj.dim,), exact)
        for _ in range(3):
            i = gens[int(rng.integers(len(gens)))]
            w = rng.random()
            c = Fraction(w).limit_denominator(64) if exact else float(w)
            omega = omega + c * sj.cone_generators[i]
        f = _random_interval_element(com_a, rng, tols)
        one_shot = marginal_vectors(comp, omega, row_a=com_a.unit.row)
        split = marginal_vectors(comp, omega, row_a=f) + \
            marginal_vectors(comp, omega, row_a=com_a.unit.row - f)
        err = linalg.max_abs_diff(one_shot, split)
        if not exact:
            worst = max(worst, float(err))
        if (err != 0) if exact else (float(err) > tols.num * 10):
            bad = {"error": float(err)}
            break
        cert = cone_certificate(comp.space_b, one_shot, tols)
        if cert is None:
            bad = {"reason": "marginal not certified in the cone"}
            break
        certified += 1
    detail = f"{n_samples} joint elements, {certified} certified marginals"
    if not exact:
        detail += f", max error {worst:.3e}"
    report.add("marginals_decomposition_independent", bad is None,
               witness=bad, detail=detail)
    return report


def finite_completion_report(rep: Representation, com: Com,
                             budget: int = 200, seed: int = 0) -> ValidationReport:
    """Finite-dimensional degeneracy of the completion constructions.

    In finite dimension the normalized section is closed, the completed
    cone is the represented cone, and the interval's finitely additive
    measures are spanned by the represented states; these reduce to
    checkable linear facts recorded here, with an explicit degeneracy
    note.
    """
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    space = com.space
    report = ValidationReport(subject=f"{cat.name}:completions({space.object.label})")
    if com.degenerate:
        report.add("completion_degenerate_space", True,
                   detail="zero-dimensional space; all completions are zero")
        return report

    # base property: g = u(g) * (g/u(g)) with the section point normalized
    bad = None
    for pos, i in enumerate(com.omega_state_indices):
        point = com.omega_generators[pos]
        v = com.unit.value(point)
        if (v != 1) if exact else (abs(float(v) - 1.0) > tols.num):
            bad = {"state": cat.describe(space.states[i]), "u": float(v)}
            break
    report.add("normalized_section_is_base", bad is None, witness=bad,
               detail=f"{len(com.omega_state_indices)} section points")

    # states act as finitely additive measures on the interval
    bad = None
    for _ in range(min(budget, 50)):
        f = _random_interval_element(com, rng, tols)
        ok, _ = effect_interval_membership(com, f)
        rest = com.unit.row - f
        for pos in range(com.omega_generators.shape[0]):
            w = com.omega_generators[pos]
            total = linalg.matmul(f, w, exact) + linalg.matmul(rest, w, exact)
            err = abs(total - com.unit.value(w))
            if (err != 0) if exact else (float(err) > tols.num * 10):
                bad = {"error": float(err)}
                break
        if bad:
            break
    report.add("states_are_interval_measures", bad is None, witness=bad)

    report.add("completions_coincide", True,
               detail="finite-dimensional degeneracy: the normalized section "
                      "equals its closure and every completion coincides with "
                      "the represented space")
    return report


def check_physical_normalization(rep: Representation,
                                 units: dict[int, UnitFunctional],
                                 budget: int = 200, seed: int = 0) -> ValidationReport:
    """Physical morphisms act positively and sub-normalize the section
    (the finite-dimensional content of the normalization functors)."""
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:physical-normalization")
    sub = physical_subcategory(rep, units)
    checked = 0
    bad = None
    objs = [o for o in cat.objects if o.index in units]
    for _ in range(budget):
        a = objs[int(rng.integers(len(objs)))]
        b = objs[int(rng.integers(len(objs)))]
        phi = cat.sample_morphism(rng, a, b)
        if phi is None:
            continue
        ok, _ = sub.membership(phi)
        if not ok:
            continue
        m = rep.matrix(phi)
        space_a, space_b = rep.space(a), rep.space(b)
        ub = units[b.index]
        for i in range(len(space_a.states)):
            g = space_a.cone_generators[i]
            img = linalg.matmul(m.matrix, g, exact)
            if cone_certificate(space_b, img, tols) is None:
                bad = {"phi": cat.describe(phi),
                       "state": cat.describe(space_a.states[i]),
                       "reason": "image not certified in the cone"}
                break
            gap = linalg.matmul(ub.row, img, exact) - units[a.index].value(g)
            if (gap > 0) if exact else (float(gap) > tols.num):
                bad = {"phi": cat.describe(phi),
                       "state": cat.describe(space_a.states[i]),
                       "excess": float(gap)}
                break
        checked += 1
        if bad or checked >= max(1, budget // 10):
            break
    report.add("physical_maps_positive_subnormalizing", bad is None,
               witness=bad, detail=f"{checked} physical morphisms")
    return report
