"""Graded vector spaces and cochain complexes over Q(i).

Complexes are finite, degreewise finite-dimensional, with degree +1
differential; weak equivalences are the quasi-isomorphisms.  Everything here
is exact: d^2 = 0 holds with no tolerance and rank decisions are rational.
"""

from __future__ import annotations

from . import linalg as la
from .scalar import QQi, ZERO, ONE, MINUS_ONE


class GradedSpace:
    """Finitely supported family of based vector spaces indexed by degree."""

    def __init__(self, labels):
        # labels: {degree: [basis label, ...]}; empty degrees dropped
        self.labels = {n: list(ls) for n, ls in labels.items() if ls}
        for n, ls in self.labels.items():
            if len(set(ls)) != len(ls):
                raise ValueError("duplicate basis labels in degree %d" % n)

    @property
    def dims(self):
        return {n: len(ls) for n, ls in self.labels.items()}

    def dim(self, n):
        return len(self.labels.get(n, ()))

    def degrees(self):
        return sorted(self.labels)

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.labels == other.labels

    def __repr__(self):
        return "GradedSpace(%s)" % (self.dims,)


class CochainComplex:
    """A based cochain complex with exact differential matrices."""

    def __init__(self, space, differential, check=True):
        self.space = space if isinstance(space, GradedSpace) else GradedSpace(space)
        self.differential = {
            n: mat
            for n, mat in differential.items()
            if self.space.dim(n) and self.space.dim(n + 1)
        }
        for n, mat in self.differential.items():
            if la.shape(mat) != (self.space.dim(n + 1), self.space.dim(n)):
                raise ValueError("differential shape mismatch in degree %d" % n)
        if check:
            validate_complex(self)

    def d(self, n):
        mat = self.differential.get(n)
        if mat is None:
            return la.zeros(self.space.dim(n + 1), self.space.dim(n))
        return mat

    def dim(self, n):
        return self.space.dim(n)

    def degrees(self):
        return self.space.degrees()

    @property
    def dims(self):
        return self.space.dims

    def basis_labels(self, n):
        return self.space.labels.get(n, [])

    def __repr__(self):
        return "CochainComplex(%s)" % (self.dims,)


class CochainMap:
    """A degreewise map of complexes commuting with the differentials."""

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = {
            n: mat
            for n, mat in components.items()
            if source.dim(n) and target.dim(n)
        }
        for n, mat in self.components.items():
            if la.shape(mat) != (target.dim(n), source.dim(n)):
                raise ValueError("component shape mismatch in degree %d" % n)
        if check:
            validate_map(self)

    def f(self, n):
        mat = self.components.get(n)
        if mat is None:
            return la.zeros(self.target.dim(n), self.source.dim(n))
        return mat

    def __repr__(self):
        return "CochainMap(%s -> %s)" % (self.source.dims, self.target.dims)


class CohomologyReport:
    """Cohomology dimensions plus deterministic cocycle representatives."""

    def __init__(self, dims, representatives):
        self.dims = dims  # {degree: int}, zero degrees omitted
        self.representatives = representatives  # {degree: [column vector]}

    def __repr__(self):
        return "CohomologyReport(%s)" % (self.dims,)


# ---------------------------------------------------------------------------
# validation and cohomology


def validate_complex(c):
    for n in c.degrees():
        if c.space.dim(n + 1) and c.space.dim(n + 2):
            comp = la.matmul(c.d(n + 1), c.d(n))
            if not la.is_zero(comp):
                raise ValueError("d.d != 0 at degree %d" % n)


def validate_map(f):
    degs = set(f.source.degrees()) | set(f.target.degrees())
    for n in sorted(degs):
        sn, sn1 = f.source.dim(n), f.source.dim(n + 1)
        tn, tn1 = f.target.dim(n), f.target.dim(n + 1)
        if sn == 0 or tn1 == 0:
            continue
        lhs = la.matmul(f.target.d(n), f.f(n)) if tn else la.zeros(tn1, sn)
        rhs = la.matmul(f.f(n + 1), f.source.d(n)) if sn1 else la.zeros(tn1, sn)
        if not la.eq(lhs, rhs):
            raise ValueError("not a cochain map at degree %d" % n)


def _cocycles_and_boundaries(c, n):
    dim_n = c.dim(n)
    if not dim_n:
        return [], []
    if c.dim(n + 1):
        cocycles = la.nullspace(c.d(n))
    else:
        cocycles = la.columns(la.identity(dim_n))
    boundaries = la.columns(c.d(n - 1)) if c.dim(n - 1) else []
    return cocycles, boundaries


def _representatives(cocycles, boundaries, dim):
    """Cocycle columns extending a basis of the boundaries, by RREF pivots."""
    if not cocycles:
        return []
    cols = boundaries + cocycles
    mat = la.from_columns(cols, dim)
    pivots = la.column_space_pivots(mat)
    nb = len(boundaries)
    return [cocycles[p - nb] for p in pivots if p >= nb]


def cohomology(c):
    dims = {}
    reps = {}
    for n in c.degrees():
        z, b = _cocycles_and_boundaries(c, n)
        r = _representatives(z, b, c.dim(n))
        if r:
            dims[n] = len(r)
            reps[n] = r
    return CohomologyReport(dims, reps)


def _induced_map(f, n, src_report, tgt_report):
    """Matrix of H^n(f) in the chosen representative bases."""
    src_reps = src_report.representatives.get(n, [])
    tgt_reps = tgt_report.representatives.get(n, [])
    if not src_reps and not tgt_reps:
        return la.zeros(0, 0)
    images = [la.matvec(f.f(n), v) for v in src_reps]
    _, tgt_bound = _cocycles_and_boundaries(f.target, n)
    basis = tgt_bound + tgt_reps
    if not basis:
        if any(any(x for x in img) for img in images):
            return None
        return la.zeros(0, len(src_reps))
    a = la.from_columns(basis, f.target.dim(n))
    b = la.from_columns(images, f.target.dim(n)) if images else [[] for _ in range(f.target.dim(n))]
    x = la.solve(a, b)
    if x is None:
        return None  # image not a cocycle class combination: not a chain map
    nb = len(tgt_bound)
    return [x[nb + i] for i in range(len(tgt_reps))]


def is_quasi_iso(f):
    src_report = cohomology(f.source)
    tgt_report = cohomology(f.target)
    degs = set(src_report.dims) | set(tgt_report.dims)
    for n in degs:
        if src_report.dims.get(n, 0) != tgt_report.dims.get(n, 0):
            return False
        mat = _induced_map(f, n, src_report, tgt_report)
        if mat is None:
            return False
        k = src_report.dims.get(n, 0)
        if la.rank(mat) != k:
            return False
    return True


# ---------------------------------------------------------------------------
# constructions


def tensor(c, d, label=lambda a, b: "%s(x)%s" % (a, b)):
    """Tensor product with the Koszul-sign Leibniz differential."""
    return tensor_with_index(c, d, label)[0]


def tensor_with_index(c, d, label=lambda a, b: "%s(x)%s" % (a, b)):
    """tensor plus the basis index map (k, i, j, n) -> position.

    Basis element (k, i, j, n) is (basis vector i of C^k) tensor
    (basis vector j of D^{n-k}).
    """
    labels = {}
    index = {}
    for n in range(
        min(c.degrees(), default=0) + min(d.degrees(), default=0),
        max(c.degrees(), default=0) + max(d.degrees(), default=0) + 1,
    ):
        ls = []
        for k in c.degrees():
            m = n - k
            for i, a in enumerate(c.basis_labels(k)):
                for j, b in enumerate(d.basis_labels(m)):
                    index[(k, i, j, n)] = len(ls)
                    ls.append(label(a, b))
        if ls:
            labels[n] = ls
    diff = {}
    for n, ls in labels.items():
        if n + 1 not in labels:
            continue
        mat = la.zeros(len(labels[n + 1]), len(ls))
        for k in c.degrees():
            m = n - k
            dc = c.d(k)
            dd = d.d(m)
            sign = ONE if k % 2 == 0 else MINUS_ONE
            for i in range(c.dim(k)):
                for j in range(d.dim(m)):
                    col = index[(k, i, j, n)]
                    for i2 in range(c.dim(k + 1)):
                        x = dc[i2][i]
                        if x:
                            mat[index[(k + 1, i2, j, n + 1)]][col] += x
                    for j2 in range(d.dim(m + 1)):
                        y = dd[j2][j]
                        if y:
                            mat[index[(k, i, j2, n + 1)]][col] += sign * y
        diff[n] = mat
    return CochainComplex(GradedSpace(labels), diff), index


def internal_hom(c, d, label=lambda a, b: "%s=>%s" % (a, b)):
    """[C,D]^n = prod_k Lin(C^k, D^{n+k}) with differential [d, -]."""
    return internal_hom_with_index(c, d, label)[0]


def internal_hom_with_index(c, d, label=lambda a, b: "%s=>%s" % (a, b)):
    """internal_hom plus the basis index map (k, i, j, n) -> position.

    Basis element (k, i, j, n) is the degree-n map sending basis vector j of
    C^k to basis vector i of D^{n+k} and all other basis vectors to 0.
    """
    labels = {}
    index = {}
    degs_n = set()
    for k in c.degrees():
        for m in d.degrees():
            degs_n.add(m - k)
    for n in sorted(degs_n | {x + 1 for x in degs_n} | {x - 1 for x in degs_n}):
        ls = []
        for k in c.degrees():
            for j, a in enumerate(c.basis_labels(k)):
                for i, b in enumerate(d.basis_labels(n + k)):
                    index[(k, i, j, n)] = len(ls)
                    ls.append(label(a, b))
        if ls:
            labels[n] = ls
    diff = {}
    for n in labels:
        if n + 1 not in labels:
            continue
        mat = la.zeros(len(labels[n + 1]), len(labels[n]))
        sign = ONE if n % 2 == 0 else MINUS_ONE
        for k in c.degrees():
            dd = d.d(n + k)
            dc = c.d(k - 1)
            for j in range(c.dim(k)):
                for i in range(d.dim(n + k)):
                    col = index[(k, i, j, n)]
                    # post-compose with d_D
                    for l in range(d.dim(n + k + 1)):
                        x = dd[l][i]
                        if x:
                            mat[index[(k, l, j, n + 1)]][col] += x
                    # pre-compose with d_C, with sign -(-1)^n
                    for j2 in range(c.dim(k - 1)):
                        y = dc[j][j2]
                        if y:
                            mat[index[(k - 1, i, j2, n + 1)]][col] -= sign * y
        diff[n] = mat
    return CochainComplex(GradedSpace(labels), diff), index


def shift(c, k):
    labels = {n: c.basis_labels(n + k)[:] for n in [m - k for m in c.degrees()]}
    sign = ONE if k % 2 == 0 else MINUS_ONE
    diff = {}
    for n in labels:
        if (n + 1) in labels:
            diff[n] = la.scale(sign, c.d(n + k))
    return CochainComplex(GradedSpace(labels), diff)


def unit_complex(label="1"):
    return CochainComplex(GradedSpace({0: [label]}), {})


def zero_complex():
    return CochainComplex(GradedSpace({}), {})


def interval_object():
    """The interval: K in degree -1, K + K in degree 0, d(1) = (1, -1).

    Returns (I, b, r) with b: K+K -> I the degree-0 inclusion and
    r: I -> K the codiagonal; r.b is the codiagonal and r is a
    quasi-isomorphism.
    """
    i_cx = CochainComplex(
        GradedSpace({-1: ["h"], 0: ["l", "r"]}),
        {-1: [[ONE], [MINUS_ONE]]},
    )
    kk = CochainComplex(GradedSpace({0: ["l", "r"]}), {})
    k = unit_complex()
    b = CochainMap(kk, i_cx, {0: la.identity(2)})
    r = CochainMap(i_cx, k, {0: [[ONE, ONE]]})
    return i_cx, b, r


def direct_sum(cs):
    labels = {}
    for idx, c in enumerate(cs):
        for n in c.degrees():
            labels.setdefault(n, []).extend(
                ("s%d:%s" % (idx, l)) for l in c.basis_labels(n)
            )
    diff = {}
    for n in labels:
        if n + 1 not in labels:
            continue
        mat = la.zeros(len(labels[n + 1]), len(labels[n]))
        r0 = c0 = 0
        for c in cs:
            dm = c.d(n)
            for i in range(c.dim(n + 1)):
                for j in range(c.dim(n)):
                    if dm[i][j]:
                        mat[r0 + i][c0 + j] = dm[i][j]
            r0 += c.dim(n + 1)
            c0 += c.dim(n)
        diff[n] = mat
    return CochainComplex(GradedSpace(labels), diff)


def identity_map(c):
    return CochainMap(c, c, {n: la.identity(c.dim(n)) for n in c.degrees()})


def zero_map(c, d):
    return CochainMap(c, d, {})


def compose(g, f):
    """g after f."""
    if f.target is not g.source and f.target.dims != g.source.dims:
        raise ValueError("composition mismatch")
    comps = {}
    for n in f.source.degrees():
        if g.target.dim(n) and f.source.dim(n):
            if g.source.dim(n):
                comps[n] = la.matmul(g.f(n), f.f(n))
            else:
                comps[n] = la.zeros(g.target.dim(n), f.source.dim(n))
    return CochainMap(f.source, g.target, comps)


def euler_characteristic(dims):
    return sum((d if n % 2 == 0 else -d) for n, d in dims.items())


# ---------------------------------------------------------------------------
# JSON wire format


def complex_to_json(c):
    return {
        "degrees": [
            {"n": n, "basis": [str(l) for l in c.basis_labels(n)]}
            for n in c.degrees()
        ],
        "differentials": [
            {"n": n, "matrix": la.dump_matrix(c.d(n))}
            for n in c.degrees()
            if n + 1 in c.space.labels and not la.is_zero(c.d(n))
        ],
    }


def complex_from_json(obj):
    labels = {int(entry["n"]): list(entry["basis"]) for entry in obj["degrees"]}
    diff = {
        int(entry["n"]): la.parse_matrix(entry["matrix"])
        for entry in obj.get("differentials", [])
    }
    return CochainComplex(GradedSpace(labels), diff)
