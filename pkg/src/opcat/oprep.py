"""The operational representation: hat vectors, represented spaces, and
the positive linear maps carrying morphisms.

Every state alpha : I -> A yields the vector of probabilities
alpha_hat(a) = p(a . alpha) over the enumerated effects of A.  The
represented space of A is the span of these vectors with its pointwise
cone; a morphism phi : A -> B acts by alpha_hat -> (phi.alpha)_hat,
expressed as a matrix against reproducible leftmost-greedy bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .fincat import FinSMC, Morphism, ObjectId, ValidationReport
from .linalg import DEFAULT_TOLERANCES, Tolerances
from .scalars import ScalarHom


class SpanError(Exception):
    """A vector expected inside a represented span is not in it.

    On matrix backends this signals an inadequate probe set."""


class RankUnstable(Exception):
    """Probe-set growth failed to stabilize the rank across two
    consecutive doublings."""


@dataclass
class StateVector:
    object: ObjectId
    coords: np.ndarray                 # over the effect enumeration
    provenance: Optional[Morphism] = None


@dataclass
class RepMatrix:
    dom: ObjectId
    cod: ObjectId
    matrix: np.ndarray                 # dim(cod) x dim(dom), basis coords


@dataclass
class OperationalSpace:
    """The ordered dual pair attached to one object.

    ``basis_matrix`` rows are the selected hat vectors (coordinates over
    the effect enumeration); ``cone_generators`` re-expresses every
    enumerated hat in basis coordinates; the dual side consists of the
    evaluation rows of the enumerated effects against the basis.
    """

    object: ObjectId
    exact: bool
    states: list[Morphism]
    effects: list[Morphism]
    hat_matrix: np.ndarray             # n_states x n_effects
    basis_indices: list[int]
    basis_matrix: np.ndarray           # dim x n_effects
    cone_generators: np.ndarray        # n_states x dim
    dual_basis_indices: list[int]
    dual_cone_generators: np.ndarray   # n_effects x dim

    @property
    def dim(self) -> int:
        return len(self.basis_indices)

    @property
    def dual_dim(self) -> int:
        return len(self.dual_basis_indices)

    @property
    def dual_basis(self) -> np.ndarray:
        return self.dual_cone_generators[self.dual_basis_indices]

    def basis_states(self) -> list[Morphism]:
        return [self.states[i] for i in self.basis_indices]

    def dual_groups(self) -> list[list[int]]:
        """Effect indices grouped by equal evaluation rows: the map
        a -> a_hat need not be injective, so duplicates carry a shared
        row with multiple provenances."""
        groups: dict[bytes, list[int]] = {}
        for i, row in enumerate(self.dual_cone_generators):
            if self.exact:
                key = repr(tuple(row))
            else:
                key = (np.round(np.asarray(row, dtype=float), 9) + 0.0).tobytes()
            groups.setdefault(key, []).append(i)
        return sorted(groups.values())


def hat_block(cat: FinSMC, hom: ScalarHom, states: list[Morphism],
              effects: list[Morphism]) -> np.ndarray:
    """Matrix of hat values: rows are states, columns enumerated effects."""
    n_s, n_e = len(states), len(effects)
    raw = cat.scalar_block(states, effects) if n_s and n_e else None
    if raw is not None:
        return hom.value_block(raw)
    out = linalg.zeros((n_s, n_e), cat.exact)
    for i, alpha in enumerate(states):
        for j, a in enumerate(effects):
            out[i, j] = hom.value(cat.compose(a, alpha))
    return out


def hat(cat: FinSMC, hom: ScalarHom, alpha: Morphism,
        effects: Optional[list[Morphism]] = None) -> StateVector:
    """The state vector of alpha over the effect enumeration of its codomain."""
    effects = effects if effects is not None else cat.effects(alpha.cod)
    coords = hat_block(cat, hom, [alpha], effects)[0]
    return StateVector(object=alpha.cod, coords=coords, provenance=alpha)


def _space_from_enumerations(cat, hom, obj, states, effects, H, tols):
    basis_idx = linalg.row_basis(H, cat.exact, tols)
    basis = H[basis_idx] if basis_idx else linalg.zeros((0, H.shape[1]), cat.exact)
    coords, ok = linalg.solve_rows(basis, H, cat.exact, tols)
    if not bool(np.all(ok)):
        raise SpanError(f"hat vector of enumerated state escapes the basis "
                        f"span on {obj.label}")
    dual = basis.T.copy()
    dual_idx = linalg.row_basis(dual, cat.exact, tols)
    return OperationalSpace(
        object=obj, exact=cat.exact, states=states, effects=effects,
        hat_matrix=H, basis_indices=basis_idx, basis_matrix=basis,
        cone_generators=coords, dual_basis_indices=dual_idx,
        dual_cone_generators=dual)


def build_space(cat: FinSMC, hom: ScalarHom, obj: ObjectId,
                tols: Tolerances = DEFAULT_TOLERANCES,
                max_doublings: int = 6) -> OperationalSpace:
    """Construct the represented space of one object.

    Exact backends use their complete state/effect enumerations.  On
    matrix backends the probe sets are grown (prefix-stably) until the
    rank is unchanged across two consecutive doublings; the first stable
    count is kept.  Raises RankUnstable when growth never settles.
    """
    if cat.exact:
        states, effects = cat.states(obj), cat.effects(obj)
        H = hat_block(cat, hom, states, effects)
        return _space_from_enumerations(cat, hom, obj, states, effects, H, tols)

    base_s = max(len(cat.states(obj)), 1)
    base_e = max(len(cat.effects(obj)), 1)
    ranks: list[int] = []
    blocks: list = []
    for i in range(max_doublings + 3):
        states = cat.states(obj, base_s << i)
        effects = cat.effects(obj, base_e << i)
        H = hat_block(cat, hom, states, effects)
        ranks.append(linalg.float_rank(H, tols.rank))
        blocks.append((states, effects, H))
        if len(ranks) >= 3 and ranks[-1] == ranks[-2] == ranks[-3]:
            states, effects, H = blocks[-3]
            return _space_from_enumerations(cat, hom, obj, states, effects, H, tols)
    raise RankUnstable(
        f"rank of {obj.label} kept changing under probe doubling: {ranks}")


def effect_functional(cat: FinSMC, hom: ScalarHom, space: OperationalSpace,
                      a: Morphism) -> np.ndarray:
    """The evaluation row of an arbitrary effect a against the basis.

    Works for effects outside the enumeration because basis vectors carry
    their generating states.
    """
    return hat_block(cat, hom, space.basis_states(), [a])[:, 0]


def rep_morphism(cat: FinSMC, hom: ScalarHom, dom_space: OperationalSpace,
                 cod_space: OperationalSpace, phi: Morphism,
                 tols: Tolerances = DEFAULT_TOLERANCES) -> RepMatrix:
    """The represented linear map of phi in basis coordinates.

    Columns are the codomain-basis coordinates of (phi . alpha)_hat for
    the domain basis states alpha; raises SpanError when an image hat
    escapes the codomain span (probe inadequacy on matrix backends).
    """
    images = [cat.compose(phi, s) for s in dom_space.basis_states()]
    rows = hat_block(cat, hom, images, cod_space.effects)
    coords, ok = linalg.solve_rows(cod_space.basis_matrix, rows, cat.exact, tols)
    if not bool(np.all(ok)):
        raise SpanError(f"image of {cat.describe(phi)} leaves the represented "
                        f"span of {cod_space.object.label}")
    return RepMatrix(dom=phi.dom, cod=phi.cod, matrix=coords.T)


def rep_apply(rep: RepMatrix, coords: np.ndarray) -> np.ndarray:
    return linalg.matmul(rep.matrix, coords, rep.matrix.dtype == object)


class Representation:
    """Caches of spaces and represented morphisms for one (category, p)."""

    def __init__(self, cat: FinSMC, hom: ScalarHom,
                 tols: Tolerances = DEFAULT_TOLERANCES):
        self.cat = cat
        self.hom = hom
        self.tols = tols
        self._spaces: dict[int, OperationalSpace] = {}
        self._reps: dict = {}
        self.composites: dict = {}   # populated by the composite builder

    def space(self, obj: ObjectId) -> OperationalSpace:
        if obj.index not in self._spaces:
            self._spaces[obj.index] = build_space(self.cat, self.hom, obj,
                                                  self.tols)
        return self._spaces[obj.index]

    def matrix(self, phi: Morphism) -> RepMatrix:
        key = (phi.dom.index, phi.cod.index, self.cat.canonical_key(phi))
        if key not in self._reps:
            self._reps[key] = rep_morphism(self.cat, self.hom,
                                           self.space(phi.dom),
                                           self.space(phi.cod), phi, self.tols)
        return self._reps[key]

    def state_coords(self, alpha: Morphism) -> np.ndarray:
        """Basis coordinates of alpha_hat."""
        space = self.space(alpha.cod)
        rows = hat_block(self.cat, self.hom, [alpha], space.effects)
        coords, ok = linalg.solve_rows(space.basis_matrix, rows,
                                       self.cat.exact, self.tols)
        if not ok[0]:
            raise SpanError(f"state {self.cat.describe(alpha)} escapes the "
                            f"represented span")
        return coords[0]

    def effect_row(self, a: Morphism) -> np.ndarray:
        return effect_functional(self.cat, self.hom, self.space(a.dom), a)

    def matrices_equal(self, m1: RepMatrix, m2: RepMatrix) -> bool:
        if m1.dom != m2.dom or m1.cod != m2.cod:
            return False
        return linalg.vectors_equal(m1.matrix, m2.matrix, self.cat.exact,
                                    self.tols.num)


def _composable_pairs(rep: Representation, rng, budget: int):
    """Composable (phi, psi) pairs: exhaustive over enumerable homs when
    the total fits the budget, seeded samples otherwise."""
    cat = rep.cat
    objs = cat.objects
    triples = [(a, b, c) for a in objs for b in objs for c in objs]
    total = 0
    enumerable = True
    for a, b, c in triples:
        n1, n2 = cat.hom_size(a, b), cat.hom_size(b, c)
        if n1 is None or n2 is None:
            enumerable = False
            break
        total += n1 * n2
    pairs = []
    if enumerable and total <= budget:
        for a, b, c in triples:
            for f in cat.enumerate_hom(a, b):
                for g in cat.enumerate_hom(b, c):
                    pairs.append((f, g))
        return pairs, True
    attempts = 0
    while len(pairs) < budget and attempts < 50 * budget:
        attempts += 1
        a, b, c = (objs[int(rng.integers(len(objs)))] for _ in range(3))
        f = cat.sample_morphism(rng, a, b)
        g = cat.sample_morphism(rng, b, c)
        if f is not None and g is not None:
            pairs.append((f, g))
    return pairs, False


def check_functoriality(rep: Representation, budget: int = 1000,
                        seed: int = 0) -> ValidationReport:
    """Identities go to identities, composites to matrix products, and
    hats are natural: (phi.alpha)_hat = V(phi) alpha_hat."""
    cat = rep.cat
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:functoriality")

    bad = None
    for o in cat.objects:
        m = rep.matrix(cat.identity(o)).matrix
        eye = linalg.exact_matrix(np.eye(rep.space(o).dim).tolist()) \
            if cat.exact else np.eye(rep.space(o).dim)
        if not linalg.vectors_equal(m, eye, cat.exact, rep.tols.num):
            bad = {"object": o.label}
            break
    report.add("identity_to_identity", bad is None, witness=bad)

    pairs, exhaustive = _composable_pairs(rep, rng, budget)
    bad = None
    worst = 0.0
    for f, g in pairs:
        lhs = rep.matrix(cat.compose(g, f)).matrix
        rhs = linalg.matmul(rep.matrix(g).matrix, rep.matrix(f).matrix, cat.exact)
        err = linalg.max_abs_diff(lhs, rhs)
        if not cat.exact:
            worst = max(worst, float(err))
        if (err != 0) if cat.exact else (float(err) > rep.tols.num):
            bad = {"f": cat.describe(f), "g": cat.describe(g),
                   "max_error": float(err)}
            break
    detail = f"{len(pairs)} pairs ({'exhaustive' if exhaustive else 'sampled'})"
    if not cat.exact:
        detail += f", max error {worst:.3e}"
    report.add("composition_to_product", bad is None, witness=bad, detail=detail)

    # naturality of the hat construction on enumerated states
    bad = None
    checked = 0
    for f, _ in pairs[:max(1, budget // 10)]:
        space_d = rep.space(f.dom)
        space_c = rep.space(f.cod)
        m = rep.matrix(f).matrix
        for idx, alpha in enumerate(space_d.states):
            lhs = rep.state_coords(cat.compose(f, alpha))
            rhs = linalg.matmul(m, space_d.cone_generators[idx], cat.exact)
            checked += 1
            if not linalg.vectors_equal(lhs, rhs, cat.exact, rep.tols.num):
                bad = {"phi": cat.describe(f), "alpha": cat.describe(alpha)}
                break
        if bad:
            break
    report.add("hat_natural", bad is None, witness=bad, detail=f"{checked} states")
    return report


@dataclass
class ScalarLine:
    """The identification of the unit object's represented space with the
    real line: every scalar's hat is p(s) times the vector of p-values."""

    space: OperationalSpace
    p_vector: np.ndarray
    basis_scale: object     # hat(basis state) = basis_scale * p_vector


def canonical_scalar_iso(rep: Representation) -> tuple[ValidationReport, ScalarLine]:
    """Verify dim V(I) = 1 and s_hat = p(s) * p for every enumerated scalar."""
    cat, hom = rep.cat, rep.hom
    report = ValidationReport(subject=f"{cat.name}:scalar-line")
    space = rep.space(cat.unit)
    p_vec = linalg.zeros((len(space.effects),), cat.exact)
    for j, t in enumerate(space.effects):
        p_vec[j] = hom.value(t)
    report.add("unit_space_dimension", space.dim == 1, detail=f"dim={space.dim}")

    bad = None
    worst = 0.0
    for i, s in enumerate(space.states):
        ps = hom.value(s)
        expected = ps * p_vec
        err = linalg.max_abs_diff(space.hat_matrix[i], expected)
        if not cat.exact:
            worst = max(worst, float(err))
        if (err != 0) if cat.exact else (float(err) > rep.tols.num):
            bad = {"scalar": cat.describe(s), "max_error": float(err)}
            break
    detail = f"{len(space.states)} scalars"
    if not cat.exact:
        detail += f", max error {worst:.3e}"
    report.add("scalar_hat_is_multiple_of_p", bad is None, witness=bad,
               detail=detail)

    scale = hom.value(space.states[space.basis_indices[0]]) if space.dim else None
    line = ScalarLine(space=space, p_vector=p_vec, basis_scale=scale)
    return report, line
