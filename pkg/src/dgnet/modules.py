"""Left modules over presented DGAs, realized at a word-length cutoff.

A module is presented by graded generators, linear generator differentials,
and a list of homogeneous linear relations in the free span of
(PBW word) * (module generator).  ``realize`` closes the relation span under
left multiplication inside the cutoff window and produces a based cochain
complex together with an exact action matrix for every algebra generator.

Realizations are filtration-aware: each basis vector carries the word length
it consumed, and a relation ``g . v = (reduction)`` is only asserted where
the product stayed inside the window.  Outside the window the action matrix
truncates to zero; asserting such truncated identities as relations would
let the commutation scalars collapse the top filtration step, so they are
omitted from presentations instead.

Restriction along an algebra morphism keeps the realization and re-expresses
the action; the restricted module carries a tautological presentation (one
generator per realized basis vector), which is what makes extension --- the
relative tensor product, computed as a coequalizer by rewriting --- apply
uniformly afterwards.
"""

from __future__ import annotations

from . import linalg as la
from .complexes import (
    CochainComplex,
    CochainMap,
    GradedSpace,
    internal_hom_with_index,
    is_quasi_iso,
    tensor_with_index,
)
from .freealg import NCElement, monomial_label, pbw_monomials
from .scalar import QQi, ZERO, ONE, MINUS_ONE


class LeftModule:
    """A finitely presented left module over a presented DGA.

    ``module_generators`` is a list of (name, degree) pairs;
    ``generator_diffs`` maps a generator name to a linear combination
    {name: scalar} in degree +1; ``relations`` is a list of homogeneous
    vectors {(word tuple, generator name): scalar} that vanish in the module.
    """

    def __init__(self, algebra, module_generators, generator_diffs=None,
                 relations=None, cutoff=None, generator_lengths=None):
        self.algebra = algebra
        self.module_generators = [(str(v), int(n)) for v, n in module_generators]
        names = [v for v, _ in self.module_generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate module generator names")
        self._gen_degree = dict(self.module_generators)
        self.generator_diffs = {
            v: {h: QQi.parse(c) for h, c in img.items() if QQi.parse(c)}
            for v, img in (generator_diffs or {}).items()
        }
        for v, img in self.generator_diffs.items():
            if v not in self._gen_degree:
                raise ValueError("diff of unknown generator %s" % v)
            for h in img:
                if self._gen_degree[h] != self._gen_degree[v] + 1:
                    raise ValueError("diff of %s not of degree +1" % v)
        self.relations = []
        for vec in relations or []:
            clean = {}
            for (word, v), c in vec.items():
                c = QQi.parse(c)
                if not c:
                    continue
                if v not in self._gen_degree:
                    raise ValueError("relation references unknown generator %s" % v)
                clean[(tuple(word), v)] = c
            if clean:
                degs = {self._term_degree(k) for k in clean}
                if len(degs) > 1:
                    raise ValueError("relations must be homogeneous")
                self.relations.append(clean)
        self.cutoff = algebra.word_cutoff if cutoff is None else cutoff
        # word-length budget already consumed by each generator (nonzero for
        # generators that stand for realized vectors of another module)
        self.generator_lengths = {v: 0 for v, _ in self.module_generators}
        for v, l in (generator_lengths or {}).items():
            if v not in self._gen_degree:
                raise ValueError("length of unknown generator %s" % v)
            self.generator_lengths[v] = int(l)
        self._realization = None

    def _term_degree(self, key):
        word, v = key
        return self.algebra.word_degree(word) + self._gen_degree[v]

    def generator_degree(self, v):
        return self._gen_degree[v]

    def realization(self):
        if self._realization is None:
            self._realization = _realize(self)
        return self._realization

    def __repr__(self):
        return "LeftModule(%d gens over %r)" % (len(self.module_generators), self.algebra)


class Realization:
    """A realized module: based complex, free-span bookkeeping, action matrices.

    ``lengths[n][j]`` is the word length consumed by basis vector j of degree
    n; ``action_word_len[g]`` is the word length the action of generator g
    consumes; the action on a vector is exact when the total stays within
    ``budget``, and truncates to zero contributions beyond it.
    """

    def __init__(self, module, complex_, basis, free_index, proj, action,
                 lengths, action_word_len, budget):
        self.module = module
        self.complex = complex_
        self.basis = basis            # {n: [(word, gen), ...]}
        self.free_index = free_index  # (word, gen) -> (n, pos in free span)
        self.proj = proj              # {n: matrix free -> quotient} or None
        self.action = action          # {alg gen: {n: matrix}}
        self.lengths = lengths        # {n: [int]}
        self.action_word_len = dict(action_word_len)
        self.budget = budget

    def dim(self, n):
        return self.complex.dim(n)

    def action_matrix(self, g, n):
        dg = self.module.algebra.degree(g)
        mat = self.action.get(g, {}).get(n)
        if mat is None:
            return la.zeros(self.complex.dim(n + dg), self.complex.dim(n))
        return mat

    def action_is_exact(self, g, n, j):
        return self.lengths[n][j] + self.action_word_len[g] <= self.budget

    def element_word_len(self, x):
        """Word-length cost of acting by an algebra element."""
        cost = 0
        for word in x.terms:
            cost = max(cost, sum(self.action_word_len[g] for g in word))
        return cost

    def act_element(self, x, n):
        """Matrix of the action of an algebra element on degree n."""
        deg = x.degree()
        if deg is None:
            raise ValueError("action of an inhomogeneous element")
        out = la.zeros(self.complex.dim(n + deg), self.complex.dim(n))
        for word, c in x.terms.items():
            mat = la.identity(self.complex.dim(n))
            m = n
            for g in reversed(word):
                mat = la.matmul(self.action_matrix(g, m), mat)
                m += self.module.algebra.degree(g)
            out = la.add(out, la.scale(c, mat))
        return out


# ---------------------------------------------------------------------------
# realization by relation-span closure


def _keyord(key):
    word, v = key
    return (len(word), word, v)


class _Span:
    """Incremental sparse row reduction over the free span coordinates."""

    def __init__(self):
        self.rows = {}  # leading key -> normalized vector

    def add(self, vec):
        vec = dict(vec)
        while vec:
            # rewrite the longest word in terms of shorter ones
            lead = max(vec, key=_keyord)
            row = self.rows.get(lead)
            if row is None:
                inv = vec[lead].inv()
                vec = {k: inv * x for k, x in vec.items()}
                self.rows[lead] = vec
                return vec
            c = vec[lead]
            for k, x in row.items():
                acc = vec.get(k, ZERO) - c * x
                if acc:
                    vec[k] = acc
                else:
                    vec.pop(k, None)
        return None


def _left_mult(algebra, g, vec, cutoff):
    """g . vec in the free span; None when a product leaves the window."""
    out = {}
    for (word, v), c in vec.items():
        if len(word) + 1 > cutoff:
            return None
        nf = algebra.normal_form({(g,) + word: c})
        for word2, c2 in nf.terms.items():
            key = (word2, v)
            acc = out.get(key, ZERO) + c2
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def _realize(module):
    algebra = module.algebra
    cutoff = module.cutoff
    words = pbw_monomials(algebra, cutoff)
    basis_free = {}
    free_index = {}
    for v, dv in module.module_generators:
        for w in words:
            n = algebra.word_degree(w) + dv
            pos = len(basis_free.setdefault(n, []))
            basis_free[n].append((w, v))
            free_index[(w, v)] = (n, pos)

    # close the relation span under left multiplication by generators
    span = _Span()
    queue = []
    for vec in module.relations:
        added = span.add(vec)
        if added is not None:
            queue.append(added)
    while queue:
        vec = queue.pop()
        for g in algebra.names():
            prod = _left_mult(algebra, g, vec, cutoff)
            if not prod:
                continue
            added = span.add(prod)
            if added is not None:
                queue.append(added)

    rel_by_degree = {}
    for vec in span.rows.values():
        n = module._term_degree(next(iter(vec)))
        rel_by_degree.setdefault(n, []).append(vec)

    # per-degree quotient: relation rows in RREF, complement basis on the
    # non-pivot coordinates, projection matrix free -> quotient
    labels = {}
    proj = {}
    kept = {}  # n -> list of free positions kept
    for n, free in sorted(basis_free.items()):
        fdim = len(free)
        # pivot on the longest words so the quotient is represented by the
        # shortest ones (otherwise truncated long representatives leak into
        # the action matrices)
        perm = sorted(range(fdim), key=lambda j: _keyord(free[j]), reverse=True)
        vecs = rel_by_degree.get(n, [])
        if vecs:
            mat = la.zeros(len(vecs), fdim)
            for i, vec in enumerate(vecs):
                for p_, j in enumerate(perm):
                    c = vec.get(free[j])
                    if c:
                        mat[i][p_] = c
            r, pivots = la.rref(mat)
        else:
            r, pivots = [], []
        pivset = {perm[p_] for p_ in pivots}
        keep = sorted(
            (j for j in range(fdim) if j not in pivset),
            key=lambda j: _keyord(free[j]),
        )
        if not keep:
            continue
        kept[n] = keep
        labels[n] = ["%s|%s" % (monomial_label(w), v) for w, v in (free[j] for j in keep)]
        p = la.zeros(len(keep), fdim)
        col_of = {j: q for q, j in enumerate(keep)}
        for j in keep:
            p[col_of[j]][j] = ONE
        for row_i, piv in enumerate(pivots):
            j0 = perm[piv]
            for p_ in range(fdim):
                j = perm[p_]
                if j in col_of and r[row_i][p_]:
                    p[col_of[j]][j0] = -r[row_i][p_]
        proj[n] = p

    basis = {n: [basis_free[n][j] for j in kept[n]] for n in kept}
    lengths = {
        n: [len(w) + module.generator_lengths[v] for w, v in basis[n]]
        for n in kept
    }

    def project(n, vec):
        """Free-span vector (dict) -> quotient coordinate column in degree n."""
        if n not in kept:
            return None
        col = [ZERO] * len(basis_free[n])
        for key, c in vec.items():
            col[free_index[key][1]] = col[free_index[key][1]] + c
        return la.matvec(proj[n], col)

    # differential on the quotient
    diff = {}
    for n in kept:
        if not kept.get(n + 1):
            continue
        cols = []
        for w, v in basis[n]:
            vec = {}
            dword = NCElement(algebra, {w: ONE}).d()
            for w2, c in dword.terms.items():
                key = (w2, v)
                vec[key] = vec.get(key, ZERO) + c
            sign = MINUS_ONE if algebra.word_degree(w) % 2 else ONE
            for v2, c in module.generator_diffs.get(v, {}).items():
                key = (w, v2)
                vec[key] = vec.get(key, ZERO) + sign * c
            cols.append(project(n + 1, vec))
        diff[n] = la.from_columns(cols, len(kept[n + 1]))

    complex_ = CochainComplex(GradedSpace(labels), diff)

    # action matrices on the quotient; products leaving the window truncate
    action = {}
    for g in algebra.names():
        dg = algebra.degree(g)
        mats = {}
        for n in kept:
            m = n + dg
            if m not in kept:
                continue
            cols = []
            for w, v in basis[n]:
                if len(w) + 1 > cutoff:
                    cols.append([ZERO] * len(kept[m]))
                    continue
                nf = algebra.normal_form({(g,) + w: ONE})
                vec = {}
                for w2, c in nf.terms.items():
                    vec[(w2, v)] = vec.get((w2, v), ZERO) + c
                cols.append(project(m, vec))
            mats[n] = la.from_columns(cols, len(kept[m]))
        action[g] = mats

    return Realization(
        module, complex_, basis, free_index, proj, action,
        lengths, {g: 1 for g in algebra.names()}, cutoff,
    )


# ---------------------------------------------------------------------------
# module constructors


def free_module(algebra, generators, generator_diffs=None, cutoff=None):
    """The free module on graded generators (no relations)."""
    return LeftModule(algebra, generators, generator_diffs, [], cutoff)


def regular_module(algebra, cutoff=None, generator="m"):
    """The algebra as a left module over itself (free on one degree-0 generator)."""
    return free_module(algebra, [(generator, 0)], cutoff=cutoff)


def module_from_realization(algebra, complex_, action, lengths=None,
                            action_word_len=None, budget=None, name_prefix="b"):
    """A module with the given realization and a tautological presentation.

    ``action``: {algebra generator: {degree: matrix}}.  One module generator
    per basis vector of the complex; relations reduce every length-1 word to
    the span of the generators, but only where the given action is exact
    (within ``budget``), so extension along a morphism applies to the output
    uniformly without over-collapsing the top filtration step.
    """
    if lengths is None:
        lengths = {n: [0] * complex_.dim(n) for n in complex_.degrees()}
    if action_word_len is None:
        action_word_len = {g: 1 for g in algebra.names()}
    if budget is None:
        budget = algebra.word_cutoff
    gens = []
    gen_name = {}
    for n in complex_.degrees():
        for j in range(complex_.dim(n)):
            name = "%s%d@%d" % (name_prefix, j, n)
            gens.append((name, n))
            gen_name[(n, j)] = name
    gen_diffs = {}
    for n in complex_.degrees():
        dmat = complex_.d(n)
        for j in range(complex_.dim(n)):
            img = {}
            for i in range(complex_.dim(n + 1)):
                if dmat[i][j]:
                    img[gen_name[(n + 1, i)]] = dmat[i][j]
            if img:
                gen_diffs[gen_name[(n, j)]] = img
    relations = []
    for g in algebra.names():
        dg = algebra.degree(g)
        for n in complex_.degrees():
            mat = action.get(g, {}).get(n)
            for j in range(complex_.dim(n)):
                if lengths[n][j] + action_word_len[g] > budget:
                    continue  # truncated action: no identity to assert
                vec = {((g,), gen_name[(n, j)]): ONE}
                if mat is not None:
                    for i in range(complex_.dim(n + dg)):
                        if mat[i][j]:
                            vec[((), gen_name[(n + dg, i)])] = -mat[i][j]
                relations.append(vec)
    gen_lengths = {
        gen_name[(n, j)]: lengths[n][j]
        for n in complex_.degrees()
        for j in range(complex_.dim(n))
    }
    module = LeftModule(algebra, gens, gen_diffs, relations,
                        generator_lengths=gen_lengths)
    basis = {
        n: [((), gen_name[(n, j)]) for j in range(complex_.dim(n))]
        for n in complex_.degrees()
    }
    module._realization = Realization(
        module, complex_, basis, {}, None,
        {g: dict(mats) for g, mats in action.items()},
        lengths, action_word_len, budget,
    )
    module._tautological = gen_name
    return module


def direct_sum_modules(m1, m2):
    """Degreewise direct sum with the block-diagonal action."""
    if m1.algebra is not m2.algebra:
        raise ValueError("modules over different algebras")
    r1, r2 = m1.realization(), m2.realization()
    labels = {}
    for n in sorted(set(r1.complex.degrees()) | set(r2.complex.degrees())):
        labels[n] = ["l:%s" % s for s in r1.complex.basis_labels(n)] + [
            "r:%s" % s for s in r2.complex.basis_labels(n)
        ]
    diff = {}
    for n in labels:
        if (n + 1) in labels:
            diff[n] = la.block_diag([r1.complex.d(n), r2.complex.d(n)])
    cx = CochainComplex(GradedSpace(labels), diff)
    action = {}
    for g in m1.algebra.names():
        dg = m1.algebra.degree(g)
        mats = {}
        for n in labels:
            if (n + dg) in labels:
                mats[n] = la.block_diag(
                    [r1.action_matrix(g, n), r2.action_matrix(g, n)]
                )
        action[g] = mats
    lengths = {
        n: r1.lengths.get(n, []) + r2.lengths.get(n, []) for n in labels
    }
    awl = {
        g: max(r1.action_word_len[g], r2.action_word_len[g])
        for g in m1.algebra.names()
    }
    return module_from_realization(
        m1.algebra, cx, action, lengths, awl, min(r1.budget, r2.budget)
    )


# ---------------------------------------------------------------------------
# morphisms and predicates


class ModuleMorphism:
    """A degreewise map of realizations intertwining d and the action."""

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        rs, rt = source.realization(), target.realization()
        self.components = {
            n: mat for n, mat in components.items() if rs.dim(n) and rt.dim(n)
        }
        for n, mat in self.components.items():
            if la.shape(mat) != (rt.dim(n), rs.dim(n)):
                raise ValueError("component shape mismatch in degree %d" % n)
        if check:
            validate_module_morphism(self)

    def f(self, n):
        mat = self.components.get(n)
        if mat is None:
            rs, rt = self.source.realization(), self.target.realization()
            return la.zeros(rt.dim(n), rs.dim(n))
        return mat

    def cochain_map(self, check=False):
        return CochainMap(
            self.source.realization().complex,
            self.target.realization().complex,
            self.components,
            check=check,
        )

    def __repr__(self):
        return "ModuleMorphism(%r -> %r)" % (self.source, self.target)


def validate_module_morphism(f, exact_only=True):
    """Check chain-map and action-intertwining equalities.

    With ``exact_only`` (the default) the action square for generator g is
    required only on columns where both realizations act exactly; truncated
    columns carry no identity.
    """
    if f.source.algebra is not f.target.algebra:
        raise ValueError("module morphism across different algebras")
    f.cochain_map(check=True)
    rs, rt = f.source.realization(), f.target.realization()
    for g in f.source.algebra.names():
        dg = f.source.algebra.degree(g)
        for n in rs.complex.degrees():
            if not rt.dim(n + dg) or not rs.dim(n):
                continue
            # empty matrices drop their column count, so treat a factor
            # through a zero-dimensional degree as the zero map directly
            if rs.dim(n + dg):
                lhs = la.matmul(f.f(n + dg), rs.action_matrix(g, n))
            else:
                lhs = la.zeros(rt.dim(n + dg), rs.dim(n))
            if rt.dim(n):
                rhs = la.matmul(rt.action_matrix(g, n), f.f(n))
            else:
                rhs = la.zeros(rt.dim(n + dg), rs.dim(n))
            for j in range(rs.dim(n)):
                if exact_only and not rs.action_is_exact(g, n, j):
                    continue
                for i in range(rt.dim(n + dg)):
                    if lhs[i][j] != rhs[i][j]:
                        raise ValueError(
                            "action of %s not intertwined in degree %d" % (g, n)
                        )


def identity_module_morphism(m):
    r = m.realization()
    return ModuleMorphism(
        m, m, {n: la.identity(r.dim(n)) for n in r.complex.degrees()}, check=False
    )


def compose_module_morphisms(g, f):
    """g after f."""
    if f.target is not g.source:
        raise ValueError("composition mismatch")
    comps = {}
    rs = f.source.realization()
    rt = g.target.realization()
    for n in rs.complex.degrees():
        if rt.dim(n):
            comps[n] = la.matmul(g.f(n), f.f(n))
    return ModuleMorphism(f.source, g.target, comps, check=False)


def module_morphism_eq(f, g):
    rs = f.source.realization()
    return all(la.eq(f.f(n), g.f(n)) for n in rs.complex.degrees())


def is_we_module(f):
    return is_quasi_iso(f.cochain_map())


def is_fib_module(f):
    rt = f.target.realization()
    for n in rt.complex.degrees():
        if la.rank(f.f(n)) != rt.dim(n):
            return False
    return True


# ---------------------------------------------------------------------------
# change of monoid


def restrict(module, phi):
    """Restriction along phi: source-algebra action through phi's images."""
    r = module.realization()
    if module.algebra is not phi.target:
        raise ValueError("module is not over the morphism's target")
    action = {}
    awl = {}
    for a in phi.source.names():
        da = phi.source.degree(a)
        img = phi.images[a]
        awl[a] = max(1, r.element_word_len(img))
        mats = {}
        # a zero image acts by the (correctly shaped) zero matrix, which
        # ``action_matrix`` supplies on demand; ``act_element`` cannot infer
        # the degree shift from an empty element
        if not img.is_zero():
            for n in r.complex.degrees():
                if r.complex.dim(n + da):
                    mats[n] = r.act_element(img, n)
        action[a] = mats
    return module_from_realization(
        phi.source, r.complex, action, r.lengths, awl, r.budget
    )


def restrict_morphism(f, phi, source=None, target=None):
    """The morphism f viewed between the restricted modules."""
    src = source if source is not None else restrict(f.source, phi)
    tgt = target if target is not None else restrict(f.target, phi)
    return ModuleMorphism(src, tgt, dict(f.components))


def extend(module, phi):
    """Extension along phi: the relative tensor product, by rewriting.

    The module's generators are retained and each relation is pushed through
    phi; realization over the target algebra computes the coequalizer at the
    cutoff.
    """
    if module.algebra is not phi.source:
        raise ValueError("module is not over the morphism's source")
    relations = []
    for vec in module.relations:
        out = {}
        for (word, v), c in vec.items():
            img = phi.apply(NCElement(phi.source, {word: c}))
            for word2, c2 in img.terms.items():
                key = (word2, v)
                acc = out.get(key, ZERO) + c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        if out:
            relations.append(out)
    return LeftModule(
        phi.target,
        module.module_generators,
        module.generator_diffs,
        relations,
        cutoff=min(module.cutoff, phi.target.word_cutoff),
        generator_lengths=module.generator_lengths,
    )


def _free_vector_to_column(realization, n, vec):
    """Express a free-span vector in realized coordinates of degree n."""
    r = realization
    dim = r.complex.dim(n)
    if r.proj is not None:
        # quotient module: use the stored projection
        if n not in r.proj:
            return [ZERO] * dim
        free_len = la.shape(r.proj[n])[1]
        col = [ZERO] * free_len
        for key, c in vec.items():
            deg, pos = r.free_index[key]
            if deg != n:
                raise ValueError("inhomogeneous vector")
            col[pos] = col[pos] + c
        return la.matvec(r.proj[n], col)
    # tautological module: reduce words letter by letter through the action
    out = [ZERO] * dim
    for (word, v), c in vec.items():
        vn = r.module.generator_degree(v)
        col = [ZERO] * r.complex.dim(vn)
        col[index_of_generator(r, v)] = ONE
        m = vn
        for g in reversed(word):
            col = la.matvec(r.action_matrix(g, m), col)
            m += r.module.algebra.degree(g)
        if m != n:
            raise ValueError("inhomogeneous vector")
        out = [x + c * y for x, y in zip(out, col)]
    return out


def index_of_generator(realization, v):
    n = realization.module.generator_degree(v)
    for i, (word, name) in enumerate(realization.basis.get(n, [])):
        if word == () and name == v:
            return i
    raise KeyError(v)


def extend_morphism(f, phi, source=None, target=None):
    """The extended morphism between the extended modules (b (x) m -> b (x) f(m))."""
    ext_src = source if source is not None else extend(f.source, phi)
    ext_tgt = target if target is not None else extend(f.target, phi)
    r_es, r_et = ext_src.realization(), ext_tgt.realization()
    r_t = f.target.realization()
    comps = {}
    for n in r_es.complex.degrees():
        if not r_et.complex.dim(n):
            continue
        cols = []
        for w, v in r_es.basis[n]:
            # f on the generator v, as a target free-span vector
            vn = f.source.generator_degree(v)
            gen_col = [ZERO] * f.source.realization().complex.dim(vn)
            gen_col[index_of_generator(f.source.realization(), v)] = ONE
            img_col = la.matvec(f.f(vn), gen_col)
            vec = {}
            for i, c in enumerate(img_col):
                if not c:
                    continue
                w2, v2 = r_t.basis[vn][i]
                pushed = phi.apply(NCElement(phi.source, {w2: c}))
                for w3, c3 in pushed.terms.items():
                    prod = phi.target.normal_form({w + w3: c3})
                    for w4, c4 in prod.terms.items():
                        key = (w4, v2)
                        vec[key] = vec.get(key, ZERO) + c4
            cols.append(_free_vector_to_column(r_et, n, vec))
        comps[n] = la.from_columns(cols, r_et.complex.dim(n))
    return ModuleMorphism(ext_src, ext_tgt, comps, check=False)


def adjunction_unit(module, phi, extended=None):
    """The canonical map L -> restrict(extend(L, phi), phi), l -> 1 (x) l.

    Returns (unit morphism, extended module, restricted-extended module).
    """
    ext = extended if extended is not None else extend(module, phi)
    res = restrict(ext, phi)
    r_src = module.realization()
    r_ext = ext.realization()
    comps = {}
    for n in r_src.complex.degrees():
        if not r_ext.complex.dim(n):
            continue
        cols = []
        for w, v in r_src.basis[n]:
            img = phi.apply(NCElement(phi.source, {w: ONE}))
            vec = {}
            for w2, c in img.terms.items():
                vec[(w2, v)] = vec.get((w2, v), ZERO) + c
            cols.append(_free_vector_to_column(r_ext, n, vec))
        comps[n] = la.from_columns(cols, r_ext.complex.dim(n))
    return ModuleMorphism(module, res, comps), ext, res


def adjunction_counit(module, phi, restricted=None):
    """The canonical map extend(restrict(M, phi), phi) -> M, b (x) m -> b.m.

    Returns (counit morphism, restricted module, extended-restricted module).
    """
    res = restricted if restricted is not None else restrict(module, phi)
    ext = extend(res, phi)
    r_ext = ext.realization()
    r_mod = module.realization()
    gen_of = getattr(res, "_tautological")
    gen_pos = {name: (n, j) for (n, j), name in gen_of.items()}
    comps = {}
    for n in r_ext.complex.degrees():
        if not r_mod.complex.dim(n):
            continue
        cols = []
        for w, v in r_ext.basis[n]:
            vn, j = gen_pos[v]
            col = [ZERO] * r_mod.complex.dim(vn)
            col[j] = ONE
            m = vn
            for g in reversed(w):
                col = la.matvec(r_mod.action_matrix(g, m), col)
                m += module.algebra.degree(g)
            cols.append(col)
        comps[n] = la.from_columns(cols, r_mod.complex.dim(n))
    return ModuleMorphism(ext, module, comps), res, ext


# ---------------------------------------------------------------------------
# tensoring, powering, enriched hom


def tensor_module(module, v):
    """The module tensored with a complex, action on the left factor."""
    r = module.realization()
    cx, index = tensor_with_index(r.complex, v)
    rev = {pos: key for key, pos in index.items()}
    action = {}
    for g in module.algebra.names():
        dg = module.algebra.degree(g)
        mats = {}
        for n in cx.degrees():
            if not cx.dim(n + dg):
                continue
            mat = la.zeros(cx.dim(n + dg), cx.dim(n))
            for k in r.complex.degrees():
                m = n - k
                act = r.action_matrix(g, k)
                for i in range(r.complex.dim(k)):
                    for j in range(v.dim(m)):
                        col = index.get((k, i, j, n))
                        if col is None:
                            continue
                        for i2 in range(r.complex.dim(k + dg)):
                            if act[i2][i]:
                                row = index.get((k + dg, i2, j, n + dg))
                                if row is not None:
                                    mat[row][col] = act[i2][i]
            mats[n] = mat
        action[g] = mats
    lengths = {}
    for n in cx.degrees():
        ls = [0] * cx.dim(n)
        for (k, i, j, nn), pos in index.items():
            if nn == n:
                ls[pos] = r.lengths.get(k, [0] * r.complex.dim(k))[i]
        lengths[n] = ls
    return module_from_realization(
        module.algebra, cx, action, lengths, r.action_word_len, r.budget
    )


def power_module(module, v):
    """The module powered by a complex: maps out of V with postcomposed action."""
    r = module.realization()
    cx, index = internal_hom_with_index(v, r.complex)
    action = {}
    for g in module.algebra.names():
        dg = module.algebra.degree(g)
        mats = {}
        for n in cx.degrees():
            if not cx.dim(n + dg):
                continue
            mat = la.zeros(cx.dim(n + dg), cx.dim(n))
            for k in v.degrees():
                act = r.action_matrix(g, n + k)
                for j in range(v.dim(k)):
                    for i in range(r.complex.dim(n + k)):
                        col = index.get((k, i, j, n))
                        if col is None:
                            continue
                        for i2 in range(r.complex.dim(n + k + dg)):
                            if act[i2][i]:
                                row = index.get((k, i2, j, n + dg))
                                if row is not None:
                                    mat[row][col] = act[i2][i]
            mats[n] = mat
        action[g] = mats
    lengths = {}
    for n in cx.degrees():
        ls = [0] * cx.dim(n)
        for (k, i, j, nn), pos in index.items():
            if nn == n:
                ls[pos] = r.lengths.get(n + k, [0] * r.complex.dim(n + k))[i]
        lengths[n] = ls
    return module_from_realization(
        module.algebra, cx, action, lengths, r.action_word_len, r.budget
    )


def enriched_hom_with_inclusion(m1, m2):
    """The complex of action-linear maps, with its inclusion into [M1, M2].

    Returns (complex, inclusion columns per degree, hom complex, hom index).
    Degree-0 cocycles of the result are exactly the module morphisms.
    """
    if m1.algebra is not m2.algebra:
        raise ValueError("modules over different algebras")
    r1, r2 = m1.realization(), m2.realization()
    hom, index = internal_hom_with_index(r1.complex, r2.complex)
    algebra = m1.algebra
    incl = {}
    for n in hom.degrees():
        rows = []
        for g in algebra.names():
            dg = algebra.degree(g)
            sign = MINUS_ONE if (dg % 2 and n % 2) else ONE
            tdim = hom.dim(n + dg)
            if not tdim:
                continue
            mat = la.zeros(tdim, hom.dim(n))
            for k in r1.complex.degrees():
                act1 = r1.action_matrix(g, k - dg) if r1.complex.dim(k - dg) else None
                act2 = r2.action_matrix(g, n + k)
                for j in range(r1.complex.dim(k)):
                    for i in range(r2.complex.dim(n + k)):
                        col = index.get((k, i, j, n))
                        if col is None:
                            continue
                        # f . lambda_1(g): precompose
                        if act1 is not None:
                            for j2 in range(r1.complex.dim(k - dg)):
                                if act1[j][j2]:
                                    row = index.get((k - dg, i, j2, n + dg))
                                    if row is not None:
                                        mat[row][col] += act1[j][j2]
                        # -(-1)^{|g| n} lambda_2(g) . f: postcompose
                        for i2 in range(r2.complex.dim(n + k + dg)):
                            if act2[i2][i]:
                                row = index.get((k, i2, j, n + dg))
                                if row is not None:
                                    mat[row][col] -= sign * act2[i2][i]
            rows.append(mat)
        if rows:
            stacked = [row for blockmat in rows for row in blockmat]
            kernel = la.nullspace(stacked)
        else:
            kernel = la.columns(la.identity(hom.dim(n)))
        if kernel:
            incl[n] = kernel
    labels = {n: ["eh%d" % i for i in range(len(cols))] for n, cols in incl.items()}
    diff = {}
    for n in incl:
        if n + 1 not in incl:
            for colv in incl[n]:
                img = la.matvec(hom.d(n), colv)
                if any(img):
                    raise ValueError("enriched hom not closed under d at %d" % n)
            continue
        a = la.from_columns(incl[n + 1], hom.dim(n + 1))
        b = la.from_columns(
            [la.matvec(hom.d(n), colv) for colv in incl[n]], hom.dim(n + 1)
        )
        x = la.solve(a, b)
        if x is None:
            raise ValueError("enriched hom not closed under d at %d" % n)
        diff[n] = x
    return CochainComplex(GradedSpace(labels), diff), incl, hom, index


def enriched_hom(m1, m2):
    return enriched_hom_with_inclusion(m1, m2)[0]
