"""Presented differential graded algebras with canonical commutation relations.

An algebra here is the quotient of the free tensor algebra on a finite set of
graded generators by relations of CCR shape

    g1*g2 - (-1)^{|g1||g2|} g2*g1 - i*tau(g1, g2) * 1,

where tau is a graded-antisymmetric pairing supported in total degree 0.
Elements are kept in PBW normal form: words nondecreasing in the generator
order (degree, then declaration index), with odd generators never repeated
(their squares rewrite to scalars, which the degree constraint forces to be
zero).  Rewriting strictly decreases the (length, inversions) measure, so it
terminates; confluence is covered by the property tests.
"""

from __future__ import annotations

from . import linalg as la
from .complexes import CochainComplex, CochainMap, GradedSpace, cohomology, is_quasi_iso
from .scalar import QQi, ZERO, ONE, I, MINUS_ONE, qq


class CutoffError(ValueError):
    """A word exceeded the algebra's realized PBW length."""


class GeneratorSpec:
    """A graded generator with a linear differential."""

    def __init__(self, name, degree, diff=None):
        self.name = name
        self.degree = degree
        # diff: {generator name: QQi}, images living in degree + 1
        self.diff = {g: QQi.parse(c) for g, c in (diff or {}).items() if QQi.parse(c)}

    def __repr__(self):
        return "GeneratorSpec(%r, %d)" % (self.name, self.degree)


class CCRRelationSet:
    """The pairing tau of the commutation relations, stored symmetrically.

    Given entries are completed by graded antisymmetry
    tau(g2, g1) = -(-1)^{|g1||g2|} tau(g1, g2); inconsistent or
    degree-violating entries are rejected.
    """

    def __init__(self, entries, degrees):
        self.table = {}
        for (a, b), v in entries.items():
            v = QQi.parse(v)
            if a not in degrees or b not in degrees:
                raise ValueError("tau references unknown generator (%s, %s)" % (a, b))
            if v and degrees[a] + degrees[b] != 0:
                raise ValueError(
                    "tau(%s, %s) nonzero but degrees sum to %d"
                    % (a, b, degrees[a] + degrees[b])
                )
            sign = MINUS_ONE if (degrees[a] % 2 and degrees[b] % 2) else ONE
            mirror = -(sign * v)
            for key, val in (((a, b), v), ((b, a), mirror)):
                if key in self.table and self.table[key] != val:
                    raise ValueError("tau not graded antisymmetric at %s" % (key,))
                self.table[key] = val

    def tau(self, a, b):
        return self.table.get((a, b), ZERO)

    def nonzero_pairs(self):
        return [(a, b) for (a, b), v in self.table.items() if v]


class PresentedDGA:
    """A DGA presented by graded generators, linear diffs, and CCR relations.

    Values are immutable after construction; ``word_cutoff`` bounds the PBW
    word length realized by ``normal_form`` and friends.
    """

    def __init__(self, generators, tau=None, word_cutoff=6, star_table=None):
        self.generators = list(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self._spec = {g.name: g for g in self.generators}
        ranked = sorted(
            range(len(self.generators)),
            key=lambda i: (self.generators[i].degree, i),
        )
        self._order = {self.generators[i].name: r for r, i in enumerate(ranked)}
        self.word_cutoff = word_cutoff
        if isinstance(tau, CCRRelationSet):
            self.relations = tau
        else:
            self.relations = CCRRelationSet(tau or {}, {n: self.degree(n) for n in names})
        # star_table: generator -> linear starred image {name: scalar}; plain
        # names and (name, scalar) pairs are accepted shorthands.  Generators
        # not listed are real (fixed by the involution).
        self.star_table = {n: {n: ONE} for n in names}
        for a, img in (star_table or {}).items():
            if a not in self._spec:
                raise ValueError("star table references unknown generator")
            if isinstance(img, str):
                img = {img: ONE}
            elif isinstance(img, tuple):
                img = {img[0]: QQi.parse(img[1])}
            else:
                img = {h: QQi.parse(c) for h, c in img.items()}
            for h in img:
                if h not in self._spec:
                    raise ValueError("star table references unknown generator")
                if self.degree(h) != self.degree(a):
                    raise ValueError("star must preserve degree (%s -> %s)" % (a, h))
            self.star_table[a] = img
        self._validate_diffs()

    # -- bookkeeping ----------------------------------------------------

    def degree(self, name):
        return self._spec[name].degree

    def order(self, name):
        return self._order[name]

    def tau(self, a, b):
        return self.relations.tau(a, b)

    def names(self):
        return [g.name for g in self.generators]

    def word_degree(self, word):
        return sum(self.degree(g) for g in word)

    def _validate_diffs(self):
        for g in self.generators:
            for h, c in g.diff.items():
                if h not in self._spec:
                    raise ValueError("diff of %s references unknown %s" % (g.name, h))
                if self.degree(h) != g.degree + 1:
                    raise ValueError("diff of %s not of degree %d" % (g.name, g.degree + 1))
        # d applied twice vanishes on generators
        for g in self.generators:
            dd = {}
            for h, c in g.diff.items():
                for k, c2 in self._spec[h].diff.items():
                    dd[k] = dd.get(k, ZERO) + c * c2
            if any(v for v in dd.values()):
                raise ValueError("d.d != 0 on generator %s" % g.name)
        # d of every commutation relation stays in the relation ideal, which
        # for CCR shape means tau is a cochain pairing:
        #   tau(dg1, g2) + (-1)^{|g1|} tau(g1, dg2) = 0
        for g1 in self.generators:
            for g2 in self.generators:
                acc = ZERO
                for h, c in g1.diff.items():
                    acc = acc + c * self.tau(h, g2.name)
                sign = MINUS_ONE if g1.degree % 2 else ONE
                for h, c in g2.diff.items():
                    acc = acc + sign * c * self.tau(g1.name, h)
                if acc:
                    raise ValueError(
                        "differential leaves the relation ideal at (%s, %s)"
                        % (g1.name, g2.name)
                    )

    # -- element constructors -------------------------------------------

    def zero(self):
        return NCElement(self, {})

    def one(self):
        return NCElement(self, {(): ONE})

    def gen(self, name):
        if name not in self._spec:
            raise KeyError(name)
        return NCElement(self, {(name,): ONE})

    def element(self, terms, strategy="leftmost"):
        """Normal form of a raw {word tuple: scalar} expression."""
        return self.normal_form(terms, strategy)

    # -- rewriting ------------------------------------------------------

    def _bad_position(self, word, strategy):
        positions = range(len(word) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        elif strategy != "leftmost":
            raise ValueError("unknown strategy %r" % (strategy,))
        for k in positions:
            a, b = word[k], word[k + 1]
            if self._order[a] > self._order[b]:
                return k
            if a == b and self.degree(a) % 2:
                return k
        return None

    def normal_form(self, terms, strategy="leftmost"):
        """Rewrite a raw word expression into PBW normal form.

        ``terms`` is a {word tuple: scalar} mapping (or an iterable of
        (word, scalar) pairs) over generator names.
        """
        items = terms.items() if hasattr(terms, "items") else terms
        agenda = []
        for word, coeff in items:
            word = tuple(word)
            coeff = QQi.parse(coeff)
            if not coeff:
                continue
            if len(word) > self.word_cutoff:
                raise CutoffError(
                    "word of length %d exceeds cutoff %d" % (len(word), self.word_cutoff)
                )
            agenda.append((word, coeff))
        result = {}
        while agenda:
            word, coeff = agenda.pop()
            k = self._bad_position(word, strategy)
            if k is None:
                acc = result.get(word, ZERO) + coeff
                if acc:
                    result[word] = acc
                else:
                    result.pop(word, None)
                continue
            a, b = word[k], word[k + 1]
            head, tail = word[: k], word[k + 2 :]
            if a == b:
                # 2 g^2 = i tau(g, g) for odd g
                t = self.tau(a, a)
                if t:
                    agenda.append((head + tail, coeff * I * t * qq(1, 2)))
                continue
            sign = MINUS_ONE if (self.degree(a) % 2 and self.degree(b) % 2) else ONE
            agenda.append((head + (b, a) + tail, sign * coeff))
            t = self.tau(a, b)
            if t:
                agenda.append((head + tail, I * t * coeff))
        return NCElement(self, result)

    def __repr__(self):
        return "PresentedDGA(%s)" % ", ".join(self.names())


class NCElement:
    """An algebra element as a normal-form combination of PBW words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w, ZERO) + c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
        return NCElement(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        return NCElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCElement):
            return multiply(self, other, self.algebra)
        c = QQi.parse(other)
        return NCElement(self.algebra, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute with everything; element * element goes via __mul__
        return self * other

    def _coerce(self, other):
        if isinstance(other, NCElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        c = QQi.parse(other)
        return NCElement(self.algebra, {(): c} if c else {})

    # -- structure ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Common degree of all words, or None if inhomogeneous (0 if zero)."""
        degs = {self.algebra.word_degree(w) for w in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def d(self):
        return differential(self, self.algebra)

    def star(self):
        return star(self, self.algebra)

    def __eq__(self, other):
        if isinstance(other, NCElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, QQi)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "*".join(w) if w else "1"
            parts.append("%r*%s" % (c, word) if w else "%r" % (c,))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# operations


def ccr_quantize(v, tau, word_cutoff=6, star_table=None):
    """The CCR quotient of the free algebra on a cochain complex.

    One generator per basis vector of ``v`` (basis labels must be distinct
    across degrees); generator differentials transcribed from the complex;
    relations from the pairing table ``tau`` ({(name, name): scalar}).
    """
    gens = []
    for n in v.degrees():
        labels = v.basis_labels(n)
        next_labels = v.basis_labels(n + 1)
        dmat = v.d(n)
        for j, name in enumerate(labels):
            diff = {}
            for i, h in enumerate(next_labels):
                if dmat[i][j]:
                    diff[h] = dmat[i][j]
            gens.append(GeneratorSpec(name, n, diff))
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ValueError("complex basis labels collide across degrees")
    return PresentedDGA(gens, tau, word_cutoff=word_cutoff, star_table=star_table)


def normal_form(terms, algebra, strategy="leftmost"):
    return algebra.normal_form(terms, strategy)


def multiply(x, y, algebra=None):
    algebra = algebra or x.algebra
    if x.algebra is not algebra or y.algebra is not algebra:
        raise ValueError("elements of different algebras")
    raw = []
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            raw.append((wx + wy, cx * cy))
    return algebra.normal_form(raw)


def differential(x, algebra=None):
    """Graded Leibniz extension of the generator differentials."""
    algebra = algebra or x.algebra
    raw = []
    for word, c in x.terms.items():
        sign = ONE
        for k, g in enumerate(word):
            for h, coef in algebra._spec[g].diff.items():
                raw.append((word[:k] + (h,) + word[k + 1 :], sign * c * coef))
            if algebra.degree(g) % 2:
                sign = -sign
    return algebra.normal_form(raw)


def graded_commutator(x, y, algebra=None):
    algebra = algebra or x.algebra
    dx, dy = x.degree(), y.degree()
    if dx is None or dy is None:
        raise ValueError("graded commutator needs homogeneous elements")
    sign = MINUS_ONE if (dx % 2 and dy % 2) else ONE
    return multiply(x, y, algebra) - sign * multiply(y, x, algebra)


def star(x, algebra=None):
    """The antilinear, multiplication-reversing involution."""
    algebra = algebra or x.algebra
    out = algebra.zero()
    for word, c in x.terms.items():
        acc = algebra.one()
        for g in reversed(word):
            img = NCElement(
                algebra, {(h,): v for h, v in algebra.star_table[g].items()}
            )
            acc = multiply(acc, img, algebra)
        out = out + c.conj() * acc
    return out


def check_star(algebra):
    """Verify the star table defines a consistent involution; raises if not.

    Checks, on generators: star is an involution, and it reverses products
    compatibly with the commutation relations (so the relation ideal is
    preserved).
    """
    for g in algebra.names():
        x = algebra.gen(g)
        if star(star(x, algebra), algebra) != x:
            raise ValueError("star is not involutive on %s" % g)
    for a in algebra.names():
        for b in algebra.names():
            xa, xb = algebra.gen(a), algebra.gen(b)
            lhs = star(multiply(xa, xb, algebra), algebra)
            rhs = multiply(star(xb, algebra), star(xa, algebra), algebra)
            if lhs != rhs:
                raise ValueError(
                    "star does not preserve the relation ideal at (%s, %s)" % (a, b)
                )


class DGAMorphism:
    """A morphism of presented DGAs, given by generator images."""

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = {}
        for g in source.names():
            if g not in images:
                raise ValueError("no image for generator %s" % g)
            img = images[g]
            if not isinstance(img, NCElement) or img.algebra is not target:
                raise ValueError("image of %s is not a target element" % g)
            self.images[g] = img
        if check:
            check_morphism(self)

    def apply(self, x):
        if x.algebra is not self.source:
            raise ValueError("element not in the source algebra")
        out = self.target.zero()
        for word, c in x.terms.items():
            acc = self.target.one()
            for g in word:
                acc = multiply(acc, self.images[g], self.target)
            out = out + c * acc
        return out

    def __repr__(self):
        return "DGAMorphism(%r -> %r)" % (self.source, self.target)


def identity_morphism(algebra):
    return DGAMorphism(
        algebra, algebra, {g: algebra.gen(g) for g in algebra.names()}, check=False
    )


def compose_morphisms(phi2, phi1):
    """phi2 after phi1."""
    if phi1.target is not phi2.source:
        raise ValueError("composition mismatch")
    return DGAMorphism(
        phi1.source,
        phi2.target,
        {g: phi2.apply(phi1.images[g]) for g in phi1.source.names()},
        check=False,
    )


def check_morphism(phi):
    """Verify degree, differential, and relation preservation; raises on failure."""
    src, tgt = phi.source, phi.target
    for g in src.names():
        img = phi.images[g]
        dg = img.degree()
        if not img.is_zero() and dg != src.degree(g):
            raise ValueError("image of %s has degree %s, expected %d" % (g, dg, src.degree(g)))
        d_of_image = differential(img, tgt)
        image_of_d = tgt.zero()
        for h, c in src._spec[g].diff.items():
            image_of_d = image_of_d + c * phi.images[h]
        if d_of_image != image_of_d:
            raise ValueError("differential not preserved on generator %s" % g)
    names = src.names()
    for a in names:
        for b in names:
            if src.order(a) < src.order(b):
                continue
            if a == b and src.degree(a) % 2 == 0:
                continue
            da, db = src.degree(a), src.degree(b)
            sign = MINUS_ONE if (da % 2 and db % 2) else ONE
            lhs = multiply(phi.images[a], phi.images[b], tgt)
            rhs = sign * multiply(phi.images[b], phi.images[a], tgt)
            rel = lhs - rhs - I * src.tau(a, b) * tgt.one()
            if not rel.is_zero():
                raise ValueError("relation (%s, %s) not preserved" % (a, b))


def quantize_cochain_map(f, source_alg, target_alg, check=True):
    """The DGA morphism induced by a cochain map on the generating complexes.

    Generator names of the algebras must match the basis labels of the
    cochain map's source and target.
    """
    images = {}
    for n in f.source.degrees():
        labels = f.source.basis_labels(n)
        tgt_labels = f.target.basis_labels(n)
        mat = f.f(n)
        for j, g in enumerate(labels):
            img = {}
            for i, h in enumerate(tgt_labels):
                if mat[i][j]:
                    img[(h,)] = mat[i][j]
            images[g] = NCElement(target_alg, img)
    return DGAMorphism(source_alg, target_alg, images, check=check)


# ---------------------------------------------------------------------------
# PBW basis and truncated cohomology


def pbw_monomials(algebra, length_cutoff):
    """All PBW normal words of length <= cutoff, in deterministic order."""
    ranked = sorted(algebra.names(), key=algebra.order)
    words = [()]
    frontier = [()]
    for _ in range(length_cutoff):
        nxt = []
        for word in frontier:
            start = algebra.order(word[-1]) if word else 0
            for g in ranked[start:]:
                if word and g == word[-1] and algebra.degree(g) % 2:
                    continue
                nxt.append(word + (g,))
        words.extend(nxt)
        frontier = nxt
    return words


def monomial_label(word):
    return "*".join(word) if word else "1"


def truncated_complex(algebra, length_cutoff):
    """The PBW-basis cochain complex of all words of length <= cutoff.

    Returns (complex, index) with index[word] = (degree, position).
    """
    words = pbw_monomials(algebra, length_cutoff)
    by_degree = {}
    index = {}
    for w in words:
        n = algebra.word_degree(w)
        pos = len(by_degree.setdefault(n, []))
        by_degree[n].append(w)
        index[w] = (n, pos)
    labels = {n: [monomial_label(w) for w in ws] for n, ws in by_degree.items()}
    diff = {}
    for n, ws in by_degree.items():
        if n + 1 not in by_degree:
            continue
        mat = la.zeros(len(by_degree[n + 1]), len(ws))
        for j, w in enumerate(ws):
            dx = differential(NCElement(algebra, {w: ONE}), algebra)
            for w2, c in dx.terms.items():
                n2, i = index[w2]
                if n2 != n + 1:
                    raise ValueError("differential not of degree +1")
                mat[i][j] = c
        diff[n] = mat
    return CochainComplex(GradedSpace(labels), diff), index


def truncated_cohomology(algebra, length_cutoff):
    cx, _ = truncated_complex(algebra, length_cutoff)
    return cohomology(cx)


def truncated_morphism_map(phi, length_cutoff):
    """The cochain map between truncated PBW complexes induced by a morphism."""
    src_cx, src_index = truncated_complex(phi.source, length_cutoff)
    tgt_cx, tgt_index = truncated_complex(phi.target, length_cutoff)
    comps = {}
    src_words = sorted(src_index, key=lambda w: src_index[w])
    for w in src_words:
        n, j = src_index[w]
        img = phi.apply(NCElement(phi.source, {w: ONE}))
        mat = comps.setdefault(n, la.zeros(tgt_cx.dim(n), src_cx.dim(n)))
        for w2, c in img.terms.items():
            if w2 not in tgt_index:
                raise CutoffError("image word %s not realized at cutoff" % (w2,))
            n2, i = tgt_index[w2]
            if n2 != n:
                raise ValueError("morphism image not degree-preserving")
            mat[i][j] = c
    return CochainMap(src_cx, tgt_cx, comps)


def is_weak_equivalence_dga(phi, length_cutoff):
    """True iff the morphism is a quasi-iso of truncated PBW complexes."""
    return is_quasi_iso(truncated_morphism_map(phi, length_cutoff))


# ---------------------------------------------------------------------------
# JSON wire format


def algebra_to_json(algebra):
    gens = []
    for g in algebra.generators:
        gens.append(
            {
                "name": g.name,
                "degree": g.degree,
                "diff": [[h, QQi.parse(c).to_tuple()] for h, c in sorted(g.diff.items())],
            }
        )
    tau_entries = []
    for a, b in sorted(algebra.relations.nonzero_pairs()):
        if (algebra.order(a), a) <= (algebra.order(b), b):
            tau_entries.append([a, b, algebra.tau(a, b).to_tuple()])
    out = {"generators": gens, "tau": tau_entries, "cutoff": algebra.word_cutoff}
    star_entries = []
    for a in sorted(algebra.star_table):
        img = algebra.star_table[a]
        if img != {a: ONE}:
            star_entries.append([a, [[h, img[h].to_tuple()] for h in sorted(img)]])
    if star_entries:
        out["star"] = star_entries
    return out


def algebra_from_json(obj):
    gens = [
        GeneratorSpec(g["name"], int(g["degree"]), {h: QQi.parse(c) for h, c in g.get("diff", [])})
        for g in obj["generators"]
    ]
    tau = {(a, b): QQi.parse(v) for a, b, v in obj.get("tau", [])}
    star_table = None
    if "star" in obj:
        star_table = {
            a: {h: QQi.parse(c) for h, c in img} for a, img in obj["star"]
        }
    return PresentedDGA(gens, tau, word_cutoff=int(obj.get("cutoff", 6)), star_table=star_table)
