"""Built-in category backends.

* finite sets and relations (boolean matrices, exact arithmetic)
* finite-dimensional real/complex matrix categories with seeded probe
  enumerations of states and effects
* finite meet-semilattices (degenerate but instructive)
* explicitly tabulated categories

Tensor products of objects flatten pairs as (i, j) -> i * |B| + j, which
makes the tensor strictly associative and strictly unital on indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fincat import (CategoryError, Duality, FinSMC, Morphism, ObjectId,
                     ValidationReport)

_DEFAULT_LABELS = "ABCDEFGHJKLMNPQRSTUVWXYZ"

MAX_REL_SIZE = 16          # states are the 2^n subsets
MAX_HOM_ENUMERATION = 1 << 16


def _auto_labels(keys: list[int], unit_key: int, labels: Optional[list[str]]):
    if labels is not None:
        if len(labels) != len(keys):
            raise CategoryError("labels and sizes/dims differ in length")
        return list(labels)
    out = []
    pos = 0
    for k in keys:
        if k == unit_key:
            out.append("I")
        else:
            out.append(_DEFAULT_LABELS[pos % len(_DEFAULT_LABELS)])
            pos += 1
    return out


class RelCategory(FinSMC):
    """Finite sets and relations; morphisms are boolean (cod x dom) matrices.

    Objects are skeletal (one per size), so the tensor is multiplication
    of sizes.  All arithmetic downstream is exact.
    """

    exact = True

    def __init__(self, sizes: list[int], labels: Optional[list[str]] = None,
                 name: str = "rel"):
        sizes = list(sizes)
        if any(s < 1 for s in sizes):
            raise CategoryError("relation object sizes must be >= 1")
        if any(s > MAX_REL_SIZE for s in sizes):
            raise CategoryError(f"relation object sizes capped at {MAX_REL_SIZE}")
        if len(set(sizes)) != len(sizes):
            raise CategoryError("duplicate sizes: relation objects are skeletal")
        if 1 not in sizes:
            sizes = [1] + sizes
            if labels is not None:
                labels = ["I"] + list(labels)
        labs = _auto_labels(sizes, 1, labels)
        objects = tuple(ObjectId(s, l) for s, l in zip(sizes, labs))
        unit = next(o for o in objects if o.index == 1)
        self.name = name
        self._declared = {o.index: o for o in objects}
        super().__init__(objects, unit)

    # objects are their sizes
    def _object(self, size: int, label: str) -> ObjectId:
        return self._declared.get(size, ObjectId(size, label))

    def tensor_obj(self, a, b):
        return self._object(a.index * b.index, f"{a.label}*{b.label}")

    def identity(self, a):
        return Morphism(a, a, np.eye(a.index, dtype=bool))

    def compose(self, g, f):
        self.check_types(g, f)
        payload = (g.payload.astype(np.int64) @ f.payload.astype(np.int64)) > 0
        return Morphism(f.dom, g.cod, payload)

    def tensor_mor(self, f, g):
        payload = np.kron(f.payload.astype(np.uint8), g.payload.astype(np.uint8)) > 0
        return Morphism(self.tensor_obj(f.dom, g.dom),
                        self.tensor_obj(f.cod, g.cod), payload)

    def symmetry(self, a, b):
        na, nb = a.index, b.index
        perm = np.zeros((na * nb, na * nb), dtype=bool)
        for i in range(na):
            for j in range(nb):
                perm[j * na + i, i * nb + j] = True
        return Morphism(self.tensor_obj(a, b), self.tensor_obj(b, a), perm)

    def _subset_column(self, a, mask):
        col = np.zeros((a.index, 1), dtype=bool)
        for j in range(a.index):
            if mask >> j & 1:
                col[j, 0] = True
        return col

    def states(self, a, count=None):
        n = a.index
        if n > MAX_REL_SIZE:
            raise CategoryError(f"cannot enumerate subsets of a {n}-element object")
        return [Morphism(self.unit, a, self._subset_column(a, m),
                         name=f"st{m}") for m in range(1 << n)]

    def effects(self, a, count=None):
        n = a.index
        if n > MAX_REL_SIZE:
            raise CategoryError(f"cannot enumerate subsets of a {n}-element object")
        return [Morphism(a, self.unit, self._subset_column(a, m).T.copy(),
                         name=f"ef{m}") for m in range(1 << n)]

    def canonical_key(self, f):
        return (f.dom.index, f.cod.index, f.payload.tobytes())

    def scalar_value(self, f):
        return int(f.payload[0, 0])

    def scalar_block(self, states, effects):
        s = np.hstack([m.payload for m in states]).astype(np.int64)   # dom x n_s
        e = np.vstack([m.payload for m in effects]).astype(np.int64)  # n_e x dom
        return ((e @ s) > 0).T.astype(np.int64)                       # n_s x n_e

    def duality(self, a):
        n = a.index
        cup = np.zeros((n * n, 1), dtype=bool)
        for i in range(n):
            cup[i * n + i, 0] = True
        dual = self._object(n, a.label)
        return Duality(dual=dual,
                       cup=Morphism(self.unit, self.tensor_obj(dual, a), cup),
                       cap=Morphism(self.tensor_obj(a, dual), self.unit,
                                    cup.T.copy()))

    def sample_morphism(self, rng, a, b):
        return Morphism(a, b, rng.random((b.index, a.index)) < 0.5)

    def hom_size(self, a, b):
        bits = a.index * b.index
        return 1 << bits if bits < 63 else None

    def enumerate_hom(self, a, b):
        size = self.hom_size(a, b)
        if size is None or size > MAX_HOM_ENUMERATION:
            return None
        na, nb = a.index, b.index
        out = []
        for m in range(size):
            payload = np.zeros((nb, na), dtype=bool)
            for k in range(na * nb):
                if m >> k & 1:
                    payload[k // na, k % na] = True
            out.append(Morphism(a, b, payload))
        return out

    def describe(self, f):
        pairs = [(int(i), int(j)) for j, i in zip(*np.nonzero(f.payload))]
        return f"rel[{f.dom.label}->{f.cod.label}]{sorted(pairs)}"


@dataclass(frozen=True)
class ProbeConfig:
    """Seeded probe enumeration sizes for matrix categories."""

    states_per_object: int = 12
    effects_per_object: int = 12
    seed: int = 0


class MatrixCategory(FinSMC):
    """Finite-dimensional matrix category over the reals or complexes.

    Hom-sets are infinite, so C(I,A) and C(A,I) are represented by seeded
    probe enumerations: the standard basis and the uniform superposition
    first (so small ranks are hit deterministically), then pseudo-random
    unit vectors.  Enumerations are prefix-stable in the requested count.
    """

    exact = False
    scalars_finite = False

    def __init__(self, field: str, dims: list[int],
                 probes: ProbeConfig = ProbeConfig(),
                 labels: Optional[list[str]] = None, name: Optional[str] = None):
        if field not in ("real", "complex"):
            raise CategoryError(f"unknown matrix field {field!r}")
        dims = list(dims)
        if any(d < 1 for d in dims):
            raise CategoryError("matrix dimensions must be >= 1")
        if len(set(dims)) != len(dims):
            raise CategoryError("duplicate dims: matrix objects are skeletal")
        if 1 not in dims:
            dims = [1] + dims
            if labels is not None:
                labels = ["I"] + list(labels)
        labs = _auto_labels(dims, 1, labels)
        objects = tuple(ObjectId(d, l) for d, l in zip(dims, labs))
        unit = next(o for o in objects if o.index == 1)
        self.field = field
        self.probes = probes
        self.name = name or f"matrix-{field}"
        self._declared = {o.index: o for o in objects}
        self._dtype = complex if field == "complex" else float
        super().__init__(objects, unit)

    def _object(self, dim, label):
        return self._declared.get(dim, ObjectId(dim, label))

    def tensor_obj(self, a, b):
        return self._object(a.index * b.index, f"{a.label}*{b.label}")

    def identity(self, a):
        return Morphism(a, a, np.eye(a.index, dtype=self._dtype))

    def compose(self, g, f):
        self.check_types(g, f)
        return Morphism(f.dom, g.cod, g.payload @ f.payload)

    def tensor_mor(self, f, g):
        return Morphism(self.tensor_obj(f.dom, g.dom),
                        self.tensor_obj(f.cod, g.cod),
                        np.kron(f.payload, g.payload))

    def symmetry(self, a, b):
        na, nb = a.index, b.index
        perm = np.zeros((na * nb, na * nb), dtype=self._dtype)
        for i in range(na):
            for j in range(nb):
                perm[j * na + i, i * nb + j] = 1
        return Morphism(self.tensor_obj(a, b), self.tensor_obj(b, a), perm)

    def _rng(self, dim: int, kind: int) -> np.random.Generator:
        return np.random.default_rng([self.probes.seed, 7919, dim, kind])

    def _probe_vectors(self, dim: int, kind: int, count: int) -> list[np.ndarray]:
        if dim == 1:
            # scalar probes: vary |z| so scalar checks see non-trivial values
            vecs = [np.array([1.0]), np.array([0.0])]
            rng = self._rng(1, 2)
            while len(vecs) < count:
                z = rng.standard_normal()
                if self.field == "complex":
                    z = z + 1j * rng.standard_normal()
                vecs.append(np.array([z]))
            return [v.astype(self._dtype) for v in vecs[:count]]
        vecs = [np.eye(dim)[i].astype(self._dtype) for i in range(dim)]
        vecs.append(np.ones(dim, dtype=self._dtype) / np.sqrt(dim))
        rng = self._rng(dim, kind)
        while len(vecs) < count:
            v = rng.standard_normal(dim)
            if self.field == "complex":
                v = v + 1j * rng.standard_normal(dim)
            vecs.append((v / np.linalg.norm(v)).astype(self._dtype))
        return vecs[:count]

    def states(self, a, count=None):
        n = count if count is not None else self.probes.states_per_object
        vecs = self._probe_vectors(a.index, 0, n)
        return [Morphism(self.unit, a, v.reshape(-1, 1), name=f"st{i}")
                for i, v in enumerate(vecs)]

    def effects(self, a, count=None):
        n = count if count is not None else self.probes.effects_per_object
        vecs = self._probe_vectors(a.index, 1, n)
        if a.index == 1:
            # scalars: C(I,I) must enumerate the same values as states(I)
            return [Morphism(a, self.unit, v.reshape(1, -1), name=f"ef{i}")
                    for i, v in enumerate(vecs)]
        return [Morphism(a, self.unit, np.conj(v).reshape(1, -1), name=f"ef{i}")
                for i, v in enumerate(vecs)]

    def effect_vector(self, f: Morphism) -> np.ndarray:
        """The vector v with f(x) = <v, x>, for an effect morphism f."""
        return np.conj(f.payload.reshape(-1))

    def canonical_key(self, f):
        arr = np.round(np.asarray(f.payload, dtype=complex), 10) + 0.0
        return (f.dom.index, f.cod.index, arr.tobytes())

    def scalar_value(self, f):
        return complex(f.payload[0, 0])

    def scalar_block(self, states, effects):
        s = np.hstack([m.payload for m in states])   # dom x n_s
        e = np.vstack([m.payload for m in effects])  # n_e x dom
        return (e @ s).T                             # n_s x n_e

    def duality(self, a):
        n = a.index
        cup = np.zeros((n * n, 1), dtype=self._dtype)
        for i in range(n):
            cup[i * n + i, 0] = 1
        dual = self._object(n, a.label)
        return Duality(dual=dual,
                       cup=Morphism(self.unit, self.tensor_obj(dual, a), cup),
                       cap=Morphism(self.tensor_obj(a, dual), self.unit,
                                    cup.T.copy()))

    def sample_morphism(self, rng, a, b):
        m = rng.standard_normal((b.index, a.index))
        if self.field == "complex":
            m = m + 1j * rng.standard_normal((b.index, a.index))
        return Morphism(a, b, m.astype(self._dtype))

    def collision_variants(self, f):
        # conjugation kills global sign, and global phase over the complexes
        out = [Morphism(f.dom, f.cod, -f.payload)]
        if self.field == "complex":
            out.append(Morphism(f.dom, f.cod, np.exp(0.25j * np.pi) * f.payload))
        return out

    def form_of(self, space, coords) -> np.ndarray:
        """The (Hermitian or symmetric) form with the given basis
        coordinates; basis vectors are rank-one forms of the basis states."""
        dim = space.object.index
        H = np.zeros((dim, dim), dtype=complex)
        for j, alpha in enumerate(space.basis_states()):
            v = alpha.payload.reshape(-1)
            H += float(np.real(coords[j])) * np.outer(v, np.conj(v))
        return (H + np.conj(H.T)) / 2

    def cone_membership(self, space, coords, tols):
        """Membership in the true cone (all hats = positive semidefinite
        forms), decided spectrally.  The eigendecomposition is itself a
        nonnegative combination of hat vectors of genuine states, which a
        finite probe hull cannot supply for generic interior points."""
        H = self.form_of(space, coords)
        w, _ = np.linalg.eigh(H)
        scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
        if w.size and float(w.min()) < -tols.feas * scale:
            return None
        return {"kind": "spectral",
                "eigenvalues": [max(0.0, float(x)) for x in w]}

    def describe(self, f):
        return (f"{self.field}[{f.dom.label}->{f.cod.label}]"
                f"{np.round(np.asarray(f.payload), 6).tolist()}")


class SemilatticeCategory(FinSMC):
    """A finite meet-semilattice as a (degenerate) monoidal category.

    hom(a,b) is a singleton when a <= b and empty otherwise; the tensor
    is the meet and the unit is the top element.  C(I,a) is empty for
    every a != I, so every represented space except the unit's is zero.
    """

    exact = True

    def __init__(self, labels: list[str], order_pairs: list[tuple[str, str]],
                 name: str = "semilattice"):
        if len(set(labels)) != len(labels):
            raise CategoryError("duplicate semilattice labels")
        self.name = name
        self._labels = list(labels)
        n = len(labels)
        pos = {l: i for i, l in enumerate(labels)}
        le = np.eye(n, dtype=bool)
        for a, b in order_pairs:
            if a not in pos or b not in pos:
                raise CategoryError(f"order pair ({a},{b}) uses unknown label")
            le[pos[a], pos[b]] = True
        # transitive closure
        for k in range(n):
            for i in range(n):
                if le[i, k]:
                    le[i] |= le[k]
        if any(le[i, j] and le[j, i] and i != j for i in range(n) for j in range(n)):
            raise CategoryError("order pairs contain a cycle")
        self._le = le
        # meets must exist and be unique
        self._meet = np.zeros((n, n), dtype=int)
        for i in range(n):
            for j in range(n):
                lower = [k for k in range(n) if le[k, i] and le[k, j]]
                best = [k for k in lower if all(le[m, k] for m in lower)]
                if len(best) != 1:
                    raise CategoryError(
                        f"no meet for ({labels[i]},{labels[j]}); not a meet-semilattice")
                self._meet[i, j] = best[0]
        tops = [i for i in range(n) if all(le[j, i] for j in range(n))]
        if len(tops) != 1:
            raise CategoryError("semilattice has no unique top element")
        objects = tuple(ObjectId(i, l) for i, l in enumerate(labels))
        super().__init__(objects, objects[tops[0]])

    def tensor_obj(self, a, b):
        return self.objects[self._meet[a.index, b.index]]

    def identity(self, a):
        return Morphism(a, a, (a.index, a.index))

    def _mor(self, a, b):
        if not self._le[a.index, b.index]:
            raise CategoryError(f"no morphism {a.label} -> {b.label}")
        return Morphism(a, b, (a.index, b.index))

    def compose(self, g, f):
        self.check_types(g, f)
        return self._mor(f.dom, g.cod)

    def tensor_mor(self, f, g):
        return self._mor(self.tensor_obj(f.dom, g.dom),
                         self.tensor_obj(f.cod, g.cod))

    def symmetry(self, a, b):
        return self.identity(self.tensor_obj(a, b))

    def states(self, a, count=None):
        if a == self.unit:
            return [self.identity(self.unit)]
        return []

    def effects(self, a, count=None):
        return [self._mor(a, self.unit)]

    def canonical_key(self, f):
        return f.payload

    def scalar_value(self, f):
        return 1

    def enumerate_hom(self, a, b):
        return [self._mor(a, b)] if self._le[a.index, b.index] else []

    def hom_size(self, a, b):
        return 1 if self._le[a.index, b.index] else 0

    def sample_morphism(self, rng, a, b):
        return self._mor(a, b) if self._le[a.index, b.index] else None

    def describe(self, f):
        return f"le[{f.dom.label}<={f.cod.label}]"


class TableCategory(FinSMC):
    """A category given entirely by lookup tables.

    The constructor validates structural integrity (ids resolve, entries
    are well-typed, tensor/symmetry tables are total) and raises
    CategoryError with the offending entry; algebraic laws are left to
    the validator.
    """

    exact = True

    def __init__(self, labels: list[str], unit_label: str,
                 morphisms: dict[str, tuple[str, str]],
                 identities: dict[str, str],
                 composition: list[tuple[str, str, str]],
                 tensor_objects: list[tuple[str, str, str]],
                 tensor_morphisms: list[tuple[str, str, str]],
                 symmetry: dict[str, str],
                 duality: Optional[dict[str, dict[str, str]]] = None,
                 name: str = "table"):
        if len(set(labels)) != len(labels):
            raise CategoryError("duplicate object labels")
        pos = {l: i for i, l in enumerate(labels)}
        if unit_label not in pos:
            raise CategoryError(f"unit {unit_label!r} is not a declared object")
        objects = tuple(ObjectId(i, l) for i, l in enumerate(labels))
        self.name = name
        self._types: dict[str, tuple[int, int]] = {}
        for mid, (dom, cod) in morphisms.items():
            if dom not in pos or cod not in pos:
                raise CategoryError(f"morphism {mid!r} has unknown dom/cod")
            self._types[mid] = (pos[dom], pos[cod])
        self._identity_of: dict[int, str] = {}
        for lab, mid in identities.items():
            if lab not in pos:
                raise CategoryError(f"identity declared for unknown object {lab!r}")
            if mid not in self._types:
                raise CategoryError(f"identity morphism {mid!r} undeclared")
            if self._types[mid] != (pos[lab], pos[lab]):
                raise CategoryError(f"identity {mid!r} of {lab!r} is not an endomorphism")
            self._identity_of[pos[lab]] = mid
        for lab in labels:
            if pos[lab] not in self._identity_of:
                raise CategoryError(f"object {lab!r} lacks an identity (MissingIdentity)")
        self._compose_table: dict[tuple[str, str], str] = {}
        for g, f, gf in composition:
            for mid in (g, f, gf):
                if mid not in self._types:
                    raise CategoryError(f"composition entry uses unknown id {mid!r}")
            if self._types[f][1] != self._types[g][0]:
                raise CategoryError(f"composition entry ({g},{f}) is not composable")
            want = (self._types[f][0], self._types[g][1])
            if self._types[gf] != want:
                raise CategoryError(
                    f"composition entry ({g},{f})->{gf} is ill-typed")
            self._compose_table[(g, f)] = gf
        self._tensor_obj_table: dict[tuple[int, int], int] = {}
        for a, b, c in tensor_objects:
            if a not in pos or b not in pos or c not in pos:
                raise CategoryError(f"tensor_objects entry ({a},{b},{c}) unknown label")
            self._tensor_obj_table[(pos[a], pos[b])] = pos[c]
        for a in objects:
            for b in objects:
                if (a.index, b.index) not in self._tensor_obj_table:
                    raise CategoryError(
                        f"tensor_objects is not total: missing ({a.label},{b.label})")
        self._tensor_mor_table: dict[tuple[str, str], str] = {}
        for f, g, fg in tensor_morphisms:
            for mid in (f, g, fg):
                if mid not in self._types:
                    raise CategoryError(f"tensor_morphisms entry uses unknown id {mid!r}")
            fd, fc = self._types[f]
            gd, gc = self._types[g]
            want = (self._tensor_obj_table[(fd, gd)], self._tensor_obj_table[(fc, gc)])
            if self._types[fg] != want:
                raise CategoryError(f"tensor_morphisms entry ({f},{g})->{fg} is ill-typed")
            self._tensor_mor_table[(f, g)] = fg
        self._symmetry_table: dict[tuple[int, int], str] = {}
        for key, mid in symmetry.items():
            parts = [s.strip() for s in key.split(",")]
            if len(parts) != 2 or parts[0] not in pos or parts[1] not in pos:
                raise CategoryError(f"symmetry key {key!r} is not 'A,B'")
            if mid not in self._types:
                raise CategoryError(f"symmetry morphism {mid!r} undeclared")
            a, b = pos[parts[0]], pos[parts[1]]
            want = (self._tensor_obj_table[(a, b)], self._tensor_obj_table[(b, a)])
            if self._types[mid] != want:
                raise CategoryError(f"symmetry entry {key!r}->{mid} is ill-typed")
            self._symmetry_table[(a, b)] = mid
        for a in objects:
            for b in objects:
                if (a.index, b.index) not in self._symmetry_table:
                    raise CategoryError(
                        f"symmetry is not total: missing ({a.label},{b.label})")
        self._duality_table: dict[int, tuple[str, str, int]] = {}
        if duality:
            for lab, entry in duality.items():
                if lab not in pos:
                    raise CategoryError(f"duality declared for unknown object {lab!r}")
                for k in ("cup", "cap", "dual"):
                    if k not in entry:
                        raise CategoryError(f"duality for {lab!r} lacks {k!r}")
                if entry["dual"] not in pos:
                    raise CategoryError(f"duality dual {entry['dual']!r} unknown")
                for mid in (entry["cup"], entry["cap"]):
                    if mid not in self._types:
                        raise CategoryError(f"duality morphism {mid!r} undeclared")
                self._duality_table[pos[lab]] = (entry["cup"], entry["cap"],
                                                 pos[entry["dual"]])
        super().__init__(objects, objects[pos[unit_label]])

    def _mor(self, mid: str) -> Morphism:
        dom, cod = self._types[mid]
        return Morphism(self.objects[dom], self.objects[cod], mid, name=mid)

    def tensor_obj(self, a, b):
        return self.objects[self._tensor_obj_table[(a.index, b.index)]]

    def identity(self, a):
        return self._mor(self._identity_of[a.index])

    def compose(self, g, f):
        self.check_types(g, f)
        if f.payload == self._identity_of[f.dom.index]:
            return g
        if g.payload == self._identity_of[g.cod.index]:
            return f
        key = (g.payload, f.payload)
        if key not in self._compose_table:
            raise CategoryError(f"composition undefined for {key}")
        return self._mor(self._compose_table[key])

    def tensor_mor(self, f, g):
        key = (f.payload, g.payload)
        if key in self._tensor_mor_table:
            return self._mor(self._tensor_mor_table[key])
        if f.payload == self._identity_of.get(f.dom.index) \
                and g.payload == self._identity_of.get(g.dom.index):
            return self.identity(self.tensor_obj(f.dom, g.dom))
        raise CategoryError(f"tensor undefined for morphisms {key}")

    def symmetry(self, a, b):
        return self._mor(self._symmetry_table[(a.index, b.index)])

    def states(self, a, count=None):
        return [self._mor(m) for m in sorted(self._types)
                if self._types[m] == (self.unit.index, a.index)]

    def effects(self, a, count=None):
        return [self._mor(m) for m in sorted(self._types)
                if self._types[m] == (a.index, self.unit.index)]

    def canonical_key(self, f):
        return f.payload

    def duality(self, a):
        entry = self._duality_table.get(a.index)
        if entry is None:
            return None
        cup, cap, dual = entry
        return Duality(dual=self.objects[dual], cup=self._mor(cup),
                       cap=self._mor(cap))

    def enumerate_hom(self, a, b):
        return [self._mor(m) for m in sorted(self._types)
                if self._types[m] == (a.index, b.index)]

    def hom_size(self, a, b):
        return len(self.enumerate_hom(a, b))

    def sample_morphism(self, rng, a, b):
        hom = self.enumerate_hom(a, b)
        if not hom:
            return None
        return hom[int(rng.integers(len(hom)))]

    def backend_checks(self, report: ValidationReport, budget, rng):
        # composition must be defined on every cod/dom-matching pair
        missing = None
        ids = set(self._identity_of.values())
        for g, (gd, gc) in self._types.items():
            for f, (fd, fc) in self._types.items():
                if fc != gd or g in ids or f in ids:
                    continue
                if (g, f) not in self._compose_table:
                    missing = {"pair": [g, f]}
                    break
            if missing:
                break
        report.add("composition_total", missing is None, witness=missing)

    def describe(self, f):
        return f"{f.payload}[{f.dom.label}->{f.cod.label}]"


def build_finrel(sizes, labels=None, name="rel") -> RelCategory:
    return RelCategory(sizes, labels=labels, name=name)


def build_matrix(field, dims, probes: Optional[ProbeConfig] = None,
                 labels=None, name=None) -> MatrixCategory:
    return MatrixCategory(field, dims, probes=probes or ProbeConfig(),
                          labels=labels, name=name)


def build_semilattice(labels, order_pairs, name="semilattice") -> SemilatticeCategory:
    return SemilatticeCategory(labels, order_pairs, name=name)


def build_table(**kwargs) -> TableCategory:
    return TableCategory(**kwargs)
