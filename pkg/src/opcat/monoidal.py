"""Composite structure on pairs of represented spaces.

For objects A and B the joint space carries a bilinear state product
(the unique bilinear extension of alpha_hat, beta_hat -> (alpha(x)beta)_hat),
a bilinear effect product pairing local effects into joint ones, and the
localization map sending a joint state to its matrix of local joint
probabilities.  Injectivity of the latter is local tomography.

Also here: the well-definedness searches (do represented-map collisions
survive tensoring?) and the compact-closure path through names of
morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .fincat import Morphism, ObjectId, ValidationReport
from .oprep import (OperationalSpace, Representation, hat_block,
                    effect_functional)


class IllDefined(Exception):
    """States with equal hats produced different joint hats: the bilinear
    extension would not be well-defined.  Mathematically impossible for a
    genuine scalar homomorphism, so reaching this is a theorem violation."""


@dataclass
class CompositeStructure:
    pair: tuple[ObjectId, ObjectId]
    joint: ObjectId
    space_a: OperationalSpace
    space_b: OperationalSpace
    space_joint: OperationalSpace
    circ_tensor: np.ndarray    # (dimA, dimB, dimJ): structure coefficients of the state product
    pi_tensor: np.ndarray      # (dimA, dimB, dimJ): product-effect rows over the joint basis
    lambda_matrix: np.ndarray  # (dimA*dimB, dimJ): localization, rows = dual-basis pairs
    tols: linalg.Tolerances = linalg.DEFAULT_TOLERANCES

    @property
    def exact(self) -> bool:
        return self.space_joint.exact


@dataclass
class TomographyVerdict:
    pair: tuple[str, str]
    rank_lambda: int
    dim_joint: int
    locally_tomographic: bool
    kernel_witness: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        out = {"pair": list(self.pair), "dim_joint": self.dim_joint,
               "rank_lambda": self.rank_lambda,
               "locally_tomographic": self.locally_tomographic}
        if self.kernel_witness is not None:
            out["kernel_witness"] = [float(x) for x in self.kernel_witness]
        return out


def bilinear_apply(tensor: np.ndarray, va: np.ndarray, vb: np.ndarray,
                   exact: bool) -> np.ndarray:
    """Contract structure coefficients (kA,kB,kJ) with vectors (kA),(kB)."""
    ka, kb, kj = tensor.shape
    if ka == 0 or kb == 0:
        return linalg.zeros((kj,), exact)
    flat = tensor.reshape(ka, kb * kj)
    mid = linalg.matmul(va, flat, exact).reshape(kb, kj)
    return linalg.matmul(vb, mid, exact)


def build_composite(rep: Representation, a_obj: ObjectId, b_obj: ObjectId,
                    check_budget: int = 1000, seed: int = 0,
                    cache: bool = True) -> CompositeStructure:
    """Construct the joint structure for (a_obj, b_obj) and verify that
    the state product is well-defined.

    The verification covers: the defining identity
    (alpha (x) beta)_hat(f) = alpha_hat(f . (id (x) beta)) on enumerated
    triples, agreement of the bilinear extension with direct hats on all
    enumerated state pairs, and stability of joint hats across hat-equal
    states (raising IllDefined on violation).
    """
    key = (a_obj.index, b_obj.index)
    if cache and key in rep.composites:
        return rep.composites[key]
    cat, hom, tols = rep.cat, rep.hom, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    sa, sb = rep.space(a_obj), rep.space(b_obj)
    joint = cat.tensor_obj(a_obj, b_obj)
    sj = rep.space(joint)
    ka, kb, kj = sa.dim, sb.dim, sj.dim

    # hats of every enumerated tensor state, solved against the joint basis
    tensor_states = [cat.tensor_mor(al, be) for al in sa.states for be in sb.states]
    if tensor_states:
        t_hat = hat_block(cat, hom, tensor_states, sj.effects)
        t_coords, ok = linalg.solve_rows(sj.basis_matrix, t_hat, exact, tols)
        if not bool(np.all(ok)):
            raise linalg_span_error(cat, a_obj, b_obj)
    else:
        t_hat = linalg.zeros((0, len(sj.effects)), exact)
        t_coords = linalg.zeros((0, kj), exact)

    n_sb = len(sb.states)
    circ = linalg.zeros((ka, kb, kj), exact)
    for i, si in enumerate(sa.basis_indices):
        for j, sjx in enumerate(sb.basis_indices):
            circ[i, j, :] = t_coords[si * n_sb + sjx]

    # bilinear extension must reproduce every enumerated tensor-state hat
    bad = None
    for i in range(len(sa.states)):
        for j in range(n_sb):
            got = bilinear_apply(circ, sa.cone_generators[i],
                                 sb.cone_generators[j], exact)
            want = t_coords[i * n_sb + j]
            if not linalg.vectors_equal(got, want, exact, tols.num):
                bad = (i, j)
                break
        if bad:
            break
    if bad is not None:
        raise IllDefined(
            f"bilinear extension disagrees with the direct hat at state pair "
            f"{cat.describe(sa.states[bad[0]])}, {cat.describe(sb.states[bad[1]])}")

    # hat-equal states must give identical joint hats
    _collision_stability(cat, sa, sb, t_coords, exact, tols)

    # defining identity: (alpha (x) beta)_hat(f) = alpha_hat(f.(id (x) beta))
    _proof_identity(rep, sa, sb, sj, t_hat, check_budget, rng)

    # product effects over the dual bases
    eff_a = [sa.effects[i] for i in sa.dual_basis_indices]
    eff_b = [sb.effects[i] for i in sb.dual_basis_indices]
    pi = linalg.zeros((len(eff_a), len(eff_b), kj), exact)
    joint_basis_states = sj.basis_states()
    tensor_effects = [cat.tensor_mor(ea, eb) for ea in eff_a for eb in eff_b]
    if tensor_effects and joint_basis_states:
        rows = hat_block(cat, hom, joint_basis_states, tensor_effects).T
    else:
        rows = linalg.zeros((len(tensor_effects), kj), exact)
    for i in range(len(eff_a)):
        for j in range(len(eff_b)):
            pi[i, j, :] = rows[i * len(eff_b) + j]
    lam = pi.reshape(len(eff_a) * len(eff_b), kj)

    comp = CompositeStructure(pair=(a_obj, b_obj), joint=joint, space_a=sa,
                              space_b=sb, space_joint=sj, circ_tensor=circ,
                              pi_tensor=pi, lambda_matrix=lam, tols=tols)
    if cache:
        rep.composites[key] = comp
    return comp


def linalg_span_error(cat, a_obj, b_obj):
    from .oprep import SpanError
    return SpanError(f"tensor-state hat escapes the joint span of "
                     f"{a_obj.label},{b_obj.label}: probe set inadequate")


def _collision_stability(cat, sa, sb, t_coords, exact, tols):
    """Joint hats must depend on states only through their hats."""
    groups: dict = {}
    for i, row in enumerate(sa.hat_matrix):
        if exact:
            key = repr(tuple(row))
        else:
            key = (np.round(np.asarray(row, dtype=float), 9) + 0.0).tobytes()
        groups.setdefault(key, []).append(i)
    n_sb = len(sb.states)
    for members in groups.values():
        if len(members) < 2:
            continue
        first = members[0]
        for other in members[1:]:
            for j in range(n_sb):
                lhs = t_coords[first * n_sb + j]
                rhs = t_coords[other * n_sb + j]
                if not linalg.vectors_equal(lhs, rhs, exact, tols.num):
                    raise IllDefined(
                        f"states {cat.describe(sa.states[first])} and "
                        f"{cat.describe(sa.states[other])} have equal hats but "
                        f"different joint hats with {cat.describe(sb.states[j])}")


def _proof_identity(rep, sa, sb, sj, t_hat, budget, rng):
    """(alpha (x) beta)_hat(f) = alpha_hat(f . (id_A (x) beta)) on
    enumerated triples; exhaustive when small, seeded samples otherwise."""
    cat, hom, tols = rep.cat, rep.hom, rep.tols
    exact = cat.exact
    n_sa, n_sb, n_ej = len(sa.states), len(sb.states), len(sj.effects)
    total = n_sa * n_sb * n_ej
    if total == 0:
        return
    id_a = cat.identity(sa.object)
    if total <= budget or exact:
        triples = [(i, j, k) for i in range(n_sa) for j in range(n_sb)
                   for k in range(n_ej)]
    else:
        triples = [(int(rng.integers(n_sa)), int(rng.integers(n_sb)),
                    int(rng.integers(n_ej))) for _ in range(budget)]
    # group by (j, k): f.(id (x) beta) is an effect of A
    by_jk: dict = {}
    for i, j, k in triples:
        by_jk.setdefault((j, k), []).append(i)
    for (j, k), i_list in sorted(by_jk.items()):
        beta = sb.states[j]
        f = sj.effects[k]
        curried = cat.compose(f, cat.tensor_mor(id_a, beta))
        vals = hat_block(cat, hom, [sa.states[i] for i in i_list], [curried])[:, 0]
        for pos, i in enumerate(i_list):
            lhs = t_hat[i * n_sb + j, k]
            rhs = vals[pos]
            if exact:
                equal = lhs == rhs
            else:
                equal = abs(float(lhs) - float(rhs)) <= tols.num * max(1.0, abs(float(rhs)))
            if not equal:
                raise IllDefined(
                    f"defining identity fails at state {cat.describe(sa.states[i])}, "
                    f"{cat.describe(beta)}, effect {cat.describe(f)}")


def pi_row(comp: CompositeStructure, row_a: np.ndarray,
           row_b: np.ndarray) -> np.ndarray:
    """The joint functional of a pair of local dual vectors.

    ``row_a``/``row_b`` are evaluation rows against the local bases; they
    are expanded over the dual bases and pushed through the product-effect
    coefficients.
    """
    exact = comp.exact
    ca, ok_a = linalg.solve_rows(comp.space_a.dual_basis,
                                 row_a.reshape(1, -1), exact, comp.tols)
    cb, ok_b = linalg.solve_rows(comp.space_b.dual_basis,
                                 row_b.reshape(1, -1), exact, comp.tols)
    if not (ok_a[0] and ok_b[0]):
        raise ValueError("dual vector outside the represented dual span")
    return bilinear_apply(comp.pi_tensor, ca[0], cb[0], exact)


def lambda_apply(comp: CompositeStructure, omega: np.ndarray) -> np.ndarray:
    """The local joint-probability matrix of a joint vector: entry (i,j)
    evaluates omega at the product of dual-basis effects i and j."""
    ka, kb, kj = comp.pi_tensor.shape
    if kj == 0:
        return linalg.zeros((ka, kb), comp.exact)
    flat = comp.pi_tensor.reshape(ka * kb, kj)
    return linalg.matmul(flat, omega, comp.exact).reshape(ka, kb)


def marginal_vectors(comp: CompositeStructure, omega: np.ndarray,
                     row_a: Optional[np.ndarray] = None,
                     row_b: Optional[np.ndarray] = None):
    """Marginal of a joint vector against a dual vector on one factor.

    With ``row_b`` given: the element m of V(A) with a_i(m) =
    Lambda(omega)(a_i, row_b) for the dual basis a_i; symmetrically for
    ``row_a``.  Exactly one side must be supplied.
    """
    exact = comp.exact
    tols = comp.tols
    probs = lambda_apply(comp, omega)
    if (row_a is None) == (row_b is None):
        raise ValueError("supply exactly one of row_a, row_b")
    if row_b is not None:
        cb, ok = linalg.solve_rows(comp.space_b.dual_basis,
                                   row_b.reshape(1, -1), exact, tols)
        if not ok[0]:
            raise ValueError("row_b outside the represented dual span")
        vals = linalg.matmul(probs, cb[0], exact)          # a_i pairings
        coords, ok2 = linalg.solve_rows(comp.space_a.dual_basis.T.copy(),
                                        vals.reshape(1, -1), exact, tols)
        if not ok2[0]:
            raise ValueError("marginal pairing is inconsistent")
        return coords[0]
    ca, ok = linalg.solve_rows(comp.space_a.dual_basis,
                               row_a.reshape(1, -1), exact, tols)
    if not ok[0]:
        raise ValueError("row_a outside the represented dual span")
    vals = linalg.matmul(ca[0], probs, exact)
    coords, ok2 = linalg.solve_rows(comp.space_b.dual_basis.T.copy(),
                                    vals.reshape(1, -1), exact, tols)
    if not ok2[0]:
        raise ValueError("marginal pairing is inconsistent")
    return coords[0]


def marginal_by_state_action(rep: Representation, comp: CompositeStructure,
                             a: Morphism) -> np.ndarray:
    """Independent route to the second marginal: the matrix sending joint
    basis coordinates to V(B) coordinates of ((a (x) id_B) . w)_hat, using
    the provenance states w of the joint basis."""
    cat, hom, tols = rep.cat, rep.hom, rep.tols
    id_b = cat.identity(comp.space_b.object)
    proj = cat.tensor_mor(a, id_b)
    images = [cat.compose(proj, w) for w in comp.space_joint.basis_states()]
    if not images:
        return linalg.zeros((comp.space_b.dim, 0), cat.exact)
    rows = hat_block(cat, hom, images, comp.space_b.effects)
    coords, ok = linalg.solve_rows(comp.space_b.basis_matrix, rows,
                                   cat.exact, tols)
    if not bool(np.all(ok)):
        raise linalg_span_error(cat, comp.pair[0], comp.pair[1])
    return coords.T


def tomography_verdict(comp: CompositeStructure,
                       tols: linalg.Tolerances = linalg.DEFAULT_TOLERANCES
                       ) -> TomographyVerdict:
    """Rank of the localization map versus the joint dimension; a kernel
    witness (a joint vector invisible to all product effects) is returned
    when the map is not injective."""
    exact = comp.exact
    rank = linalg.rank(comp.lambda_matrix, exact, tols)
    dim_joint = comp.space_joint.dim
    witness = None
    if rank < dim_joint:
        witness = linalg.null_vector(comp.lambda_matrix, exact, tols)
    return TomographyVerdict(
        pair=(comp.pair[0].label, comp.pair[1].label),
        rank_lambda=int(rank), dim_joint=int(dim_joint),
        locally_tomographic=bool(rank == dim_joint),
        kernel_witness=witness)


def check_composite_laws(rep: Representation, comp: CompositeStructure,
                         budget: int = 1000, seed: int = 0) -> ValidationReport:
    """The two composite conditions over the full enumerations.

    (a) product effects factor on product states:
        pi(a,b)(alpha (x) beta) = a_hat(alpha_hat) * b_hat(beta_hat);
    (b) positive local pairings of positive joint states give cone
        members (checked here as nonnegativity against all generators;
        cone certificates live in the normalization layer).
    """
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:composite"
                                      f"({comp.pair[0].label},{comp.pair[1].label})")
    sa, sb = comp.space_a, comp.space_b
    n_ea, n_eb = len(sa.effects), len(sb.effects)
    n_sa, n_sb = len(sa.states), len(sb.states)
    total = n_ea * n_eb * n_sa * n_sb
    if total <= (max(budget, 4096) if exact else budget):
        quads = [(i, j, k, l) for i in range(n_ea) for j in range(n_eb)
                 for k in range(n_sa) for l in range(n_sb)]
    else:
        quads = [(int(rng.integers(n_ea)), int(rng.integers(n_eb)),
                  int(rng.integers(n_sa)), int(rng.integers(n_sb)))
                 for _ in range(budget)]
    # dual-basis expansions of every evaluation row, solved once
    ca_all, _ = linalg.solve_rows(sa.dual_basis, sa.dual_cone_generators,
                                  exact, tols)
    cb_all, _ = linalg.solve_rows(sb.dual_basis, sb.dual_cone_generators,
                                  exact, tols)
    bad = None
    worst = 0.0
    for i, j, k, l in quads:
        row_a = sa.dual_cone_generators[i]
        row_b = sb.dual_cone_generators[j]
        va = sa.cone_generators[k]
        vb = sb.cone_generators[l]
        joint_vec = bilinear_apply(comp.circ_tensor, va, vb, exact)
        prow = bilinear_apply(comp.pi_tensor, ca_all[i], cb_all[j], exact)
        lhs = linalg.matmul(prow, joint_vec, exact) \
            if comp.space_joint.dim else 0
        rhs = linalg.matmul(row_a, va, exact) * linalg.matmul(row_b, vb, exact) \
            if sa.dim and sb.dim else 0
        err = abs(lhs - rhs)
        if not exact:
            worst = max(worst, float(err))
        if (err != 0) if exact else (float(err) > tols.num * max(1.0, abs(float(rhs)))):
            bad = {"effect_a": cat.describe(sa.effects[i]),
                   "effect_b": cat.describe(sb.effects[j]),
                   "state_a": cat.describe(sa.states[k]),
                   "state_b": cat.describe(sb.states[l]),
                   "error": float(err)}
            break
    detail = f"{len(quads)} quadruples"
    if not exact:
        detail += f", max error {worst:.3e}"
    report.add("product_effect_factorization", bad is None, witness=bad,
               detail=detail)

    # (b): positive pairings of joint cone generators stay nonnegative
    bad = None
    for g_idx in range(len(comp.space_joint.states)):
        omega = comp.space_joint.cone_generators[g_idx]
        probs = lambda_apply(comp, omega)
        neg = None
        for i in range(probs.shape[0]):
            for j in range(probs.shape[1]):
                v = probs[i, j]
                if (v < 0) if exact else (float(v) < -tols.num):
                    neg = (i, j, v)
                    break
            if neg:
                break
        if neg is not None:
            bad = {"joint_state": cat.describe(comp.space_joint.states[g_idx]),
                   "pair": [int(neg[0]), int(neg[1])], "value": float(neg[2])}
            break
    report.add("local_pairings_nonnegative", bad is None, witness=bad,
               detail=f"{len(comp.space_joint.states)} joint generators")
    return report


def _morphism_pool(cat, a, b, rng, budget):
    """Morphisms of C(a,b) for collision searching: exhaustive below the
    spec's 10^4 cap, otherwise seeded samples plus deliberate variants
    (sign/phase twins on matrix backends) that are known to collide."""
    size = cat.hom_size(a, b)
    if size is not None and size <= min(budget, 10_000):
        hom = cat.enumerate_hom(a, b)
        if hom is not None:
            return hom, True
    pool = []
    n = max(4, budget // 50)
    for _ in range(n):
        f = cat.sample_morphism(rng, a, b)
        if f is None:
            break
        pool.append(f)
        pool.extend(cat.collision_variants(f))
    return pool, False


def check_welldefined_morphism_product(rep: Representation,
                                       object_pairs: Optional[list] = None,
                                       budget: int = 1000, seed: int = 0,
                                       tol: float = 1e-8) -> ValidationReport:
    """Search for represented-map collisions and verify products respect them.

    Two morphisms phi != phi' with equal represented maps must keep equal
    represented maps after tensoring with any psi; a counterexample would
    contradict the product being well-defined on the image.  Reports
    "vacuous" when no collisions exist in the searched pool.
    """
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    report = ValidationReport(subject=f"{cat.name}:morphism-product")
    if object_pairs is None:
        object_pairs = [(a, b) for a in cat.objects for b in cat.objects]

    def matrix_key(m):
        if exact:
            return repr(tuple(tuple(row) for row in m.matrix))
        return (np.round(np.asarray(m.matrix, dtype=float), 9) + 0.0).tobytes()

    collisions = []
    searched = 0
    for a, b in object_pairs:
        pool, _ = _morphism_pool(cat, a, b, rng, budget)
        searched += len(pool)
        buckets: dict = {}
        for f in pool:
            key = (f.dom.index, f.cod.index, matrix_key(rep.matrix(f)))
            buckets.setdefault(key, [])
            # skip payload-identical duplicates
            if any(cat.morphisms_equal(f, g) for g in buckets[key]):
                continue
            buckets[key].append(f)
        for members in buckets.values():
            if len(members) >= 2:
                collisions.append((members[0], members[1]))

    bad = None
    products_checked = 0
    worst = 0.0
    psi_budget = max(1, budget // max(1, len(collisions) or 1) // 4)
    for phi, phi2 in collisions:
        for c, d in object_pairs:
            psis, _ = _morphism_pool(cat, c, d, rng, budget)
            for psi in psis[:psi_budget]:
                m1 = rep.matrix(cat.tensor_mor(phi, psi))
                m2 = rep.matrix(cat.tensor_mor(phi2, psi))
                products_checked += 1
                err = linalg.max_abs_diff(m1.matrix, m2.matrix)
                if not exact:
                    worst = max(worst, float(err))
                if (err != 0) if exact else (float(err) > tol):
                    bad = {"phi": cat.describe(phi), "phi2": cat.describe(phi2),
                           "psi": cat.describe(psi), "error": float(err)}
                    break
            if bad:
                break
        if bad:
            break
    detail = (f"{len(collisions)} collisions in {searched} morphisms, "
              f"{products_checked} products")
    if not collisions:
        detail += "; vacuous"
    if not exact and products_checked:
        detail += f", max error {worst:.3e}"
    report.add("products_respect_collisions", bad is None, witness=bad,
               detail=detail)
    return report


def _name_of(cat, phi):
    """The state of dual(dom) (x) cod naming phi through the cup."""
    d = cat.duality(phi.dom)
    return cat.compose(cat.tensor_mor(cat.identity(d.dual), phi), d.cup)


def _unname(cat, omega, a_obj, b_obj):
    """Recover a morphism a -> b from its name via the cap."""
    d = cat.duality(a_obj)
    bent = cat.tensor_mor(cat.identity(a_obj), omega)
    return cat.compose(cat.tensor_mor(d.cap, cat.identity(b_obj)), bent)


def compact_closure_path(rep: Representation, a_obj: ObjectId, b_obj: ObjectId,
                         second_pair: Optional[tuple] = None,
                         budget: int = 100, seed: int = 0,
                         max_joint_states: Optional[int] = None) -> ValidationReport:
    """Name/morphism correspondence and the product-of-names identity.

    Checks (i) the snake identities at both objects, (ii) that every
    sampled morphism is recovered from its name, and (iii) that tensoring
    names through the middle swap reproduces the name of the tensor, both
    as payloads and at the level of represented maps (the latter skipped
    when exact joint enumerations exceed ``max_joint_states``).
    """
    from .fincat import _snake_holds
    cat, tols = rep.cat, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    c_obj, d_obj = second_pair if second_pair is not None else (a_obj, b_obj)
    report = ValidationReport(
        subject=f"{cat.name}:compact-closure({a_obj.label},{b_obj.label})")

    snake_ok = True
    for o in {a_obj, b_obj, c_obj, d_obj}:
        dual = cat.duality(o)
        if dual is None:
            report.add("duality_declared", False,
                       detail=f"{o.label} has no duality data")
            return report
        ok, witness = _snake_holds(cat, o, dual)
        if not ok:
            snake_ok = False
            report.add(f"snake_{o.label}", False, witness=witness)
    report.add("snake_identities", snake_ok)

    def draw(a, b):
        hom = None
        size = cat.hom_size(a, b)
        if size is not None and size <= budget:
            hom = cat.enumerate_hom(a, b)
        if hom:
            return hom
        out = []
        for _ in range(budget):
            f = cat.sample_morphism(rng, a, b)
            if f is None:
                return out
            out.append(f)
        return out

    # name -> morphism round trip
    bad = None
    phis = draw(a_obj, b_obj)
    for phi in phis:
        if not cat.morphisms_equal(_unname(cat, _name_of(cat, phi), a_obj, b_obj), phi):
            bad = {"phi": cat.describe(phi)}
            break
    report.add("name_round_trip", bad is None, witness=bad,
               detail=f"{len(phis)} morphisms")

    # product of names: unname(omega) (x) unname(mu) = unname(tau.(omega (x) mu))
    psis = draw(c_obj, d_obj)
    if not phis or not psis:
        report.add("name_product_identity", True, detail="no morphisms to test")
        return report
    pairs = [(phis[int(rng.integers(len(phis)))], psis[int(rng.integers(len(psis)))])
             for _ in range(budget)]
    dual_c = cat.duality(c_obj).dual
    sigma = cat.symmetry(b_obj, dual_c)
    tau = cat.tensor_mor(cat.tensor_mor(cat.identity(cat.duality(a_obj).dual),
                                        sigma), cat.identity(d_obj))
    ac = cat.tensor_obj(a_obj, c_obj)
    bd = cat.tensor_obj(b_obj, d_obj)
    vo_compared = 0
    bad = None
    worst = 0.0
    vo_allowed = True
    if exact and max_joint_states is not None:
        def n_states(o):
            n = cat.hom_size(cat.unit, o)
            return n if n is not None else len(cat.states(o))
        vo_allowed = (n_states(ac) <= max_joint_states
                      and n_states(bd) <= max_joint_states)
    for phi, psi in pairs:
        lhs = cat.tensor_mor(phi, psi)
        braided = cat.compose(tau, cat.tensor_mor(_name_of(cat, phi),
                                                  _name_of(cat, psi)))
        rhs = _unname(cat, braided, ac, bd)
        if not cat.morphisms_equal(lhs, rhs):
            bad = {"phi": cat.describe(phi), "psi": cat.describe(psi),
                   "level": "payload"}
            break
        if vo_allowed:
            m1 = rep.matrix(lhs)
            m2 = rep.matrix(rhs)
            vo_compared += 1
            err = linalg.max_abs_diff(m1.matrix, m2.matrix)
            if not exact:
                worst = max(worst, float(err))
            if (err != 0) if exact else (float(err) > tols.num):
                bad = {"phi": cat.describe(phi), "psi": cat.describe(psi),
                       "level": "represented", "error": float(err)}
                break
    detail = f"{len(pairs)} pairs, {vo_compared} compared as represented maps"
    if not exact and vo_compared:
        detail += f", max error {worst:.3e}"
    report.add("name_product_identity", bad is None, witness=bad, detail=detail)
    return report


def monoidal_functor_check(rep: Representation, comp: CompositeStructure,
                           comp_cod: Optional[CompositeStructure] = None,
                           budget: int = 1000, seed: int = 0) -> ValidationReport:
    """The monoidal-representation conditions on one composite.

    (i) state products of hats are hats of tensors and effect products of
    evaluation rows are rows of tensor effects, over the full
    enumerations (sampled above the budget on floating backends);
    (ii) represented maps interchange with the state product:
    V(phi (x) psi)(v . w) = V(phi)v . V(psi)w on basis vectors.
    """
    cat, hom, tols = rep.cat, rep.hom, rep.tols
    exact = cat.exact
    rng = np.random.default_rng(seed)
    sa, sb = comp.space_a, comp.space_b
    report = ValidationReport(subject=f"{cat.name}:monoidal"
                                      f"({sa.object.label},{sb.object.label})")

    # (iii)-states: circ on all enumerated hats reproduces tensor hats
    n_sa, n_sb = len(sa.states), len(sb.states)
    pairs = [(i, j) for i in range(n_sa) for j in range(n_sb)]
    if not exact and len(pairs) > budget:
        pairs = [(int(rng.integers(n_sa)), int(rng.integers(n_sb)))
                 for _ in range(budget)]
    bad = None
    for i, j in pairs:
        tensor_state = cat.tensor_mor(sa.states[i], sb.states[j])
        want = rep.state_coords(tensor_state)
        got = bilinear_apply(comp.circ_tensor, sa.cone_generators[i],
                             sb.cone_generators[j], exact)
        if not linalg.vectors_equal(got, want, exact, tols.num):
            bad = {"alpha": cat.describe(sa.states[i]),
                   "beta": cat.describe(sb.states[j])}
            break
    report.add("state_product_matches_tensor", bad is None, witness=bad,
               detail=f"{len(pairs)} state pairs")

    # (iii)-effects: pi on evaluation rows reproduces tensor-effect rows
    n_ea, n_eb = len(sa.effects), len(sb.effects)
    epairs = [(i, j) for i in range(n_ea) for j in range(n_eb)]
    if not exact and len(epairs) > budget:
        epairs = [(int(rng.integers(n_ea)), int(rng.integers(n_eb)))
                  for _ in range(budget)]
    bad = None
    for i, j in epairs:
        got = pi_row(comp, sa.dual_cone_generators[i], sb.dual_cone_generators[j])
        tensor_effect = cat.tensor_mor(sa.effects[i], sb.effects[j])
        want = effect_functional(cat, hom, comp.space_joint, tensor_effect)
        if not linalg.vectors_equal(got, want, exact, tols.num):
            bad = {"a": cat.describe(sa.effects[i]),
                   "b": cat.describe(sb.effects[j])}
            break
    report.add("effect_product_matches_tensor", bad is None, witness=bad,
               detail=f"{len(epairs)} effect pairs")

    # interchange of the product with represented maps on basis vectors
    target = comp_cod if comp_cod is not None else comp
    bad = None
    checked = 0
    n_draw = max(1, budget // max(1, comp.space_a.dim * comp.space_b.dim or 1) // 4)
    n_draw = min(n_draw, 50)
    for _ in range(n_draw):
        phi = cat.sample_morphism(rng, sa.object, target.space_a.object)
        psi = cat.sample_morphism(rng, sb.object, target.space_b.object)
        if phi is None or psi is None:
            break
        m_phi = rep.matrix(phi).matrix
        m_psi = rep.matrix(psi).matrix
        m_joint = rep.matrix(cat.tensor_mor(phi, psi)).matrix
        for i in range(sa.dim):
            for j in range(sb.dim):
                v = comp.circ_tensor[i, j, :]
                lhs = linalg.matmul(m_joint, v, exact)
                rhs = bilinear_apply(target.circ_tensor, m_phi[:, i],
                                     m_psi[:, j], exact)
                checked += 1
                if not linalg.vectors_equal(lhs, rhs, exact, tols.num * 10):
                    bad = {"phi": cat.describe(phi), "psi": cat.describe(psi),
                           "basis_pair": [int(i), int(j)]}
                    break
            if bad:
                break
        if bad:
            break
    report.add("product_interchanges_with_maps", bad is None, witness=bad,
               detail=f"{checked} basis images")
    return report
