"""Q-graded noncommutative algebra engine in grouplike-left normal form.

A basis element is a pair (grouplike exponent, word); the product of two
basis elements is a single basis element scaled by a power of q coming
from the normalization rule  k_alpha x = q^{(alpha|deg x)} x k_alpha.
Words are interned per alphabet; elements are sparse maps to Scalars.
"""

from __future__ import annotations

import threading

from .scalars import DomainError, Scalar, ZERO, ONE


class AlgebraError(ValueError):
    pass


# letters are triples (fam, node, r): fam in {"X+", "X-"} on the loop side
# and {"E", "F"} on the Chevalley side (with r always 0 there)

_OPP = {"X+": "X-", "X-": "X+", "E": "F", "F": "E"}


class Alphabet:
    """Letter families, degrees, and the interned word table for one
    diagram (either side)."""

    def __init__(self, D, kind):
        if kind not in ("drinfeld", "dj"):
            raise AlgebraError("unknown alphabet kind")
        self.D = D
        self.kind = kind
        self.n = D.n
        self._words = {(): 0}
        self._by_id = [()]
        self._degrees = [(0, (0,) * D.n)]
        self._lock = threading.Lock()
        self._zero_gl = (0, (0,) * D.n)
        self.cache = {}  # scratch for derived elements (H, braid images, ..)

    def letter_valid(self, letter):
        fam, node, r = letter
        if self.kind == "drinfeld":
            if fam not in ("X+", "X-") or node not in self.D.nodes:
                return False
            return r % self.D.dt[node] == 0
        return fam in ("E", "F") and 0 <= node <= self.n and r == 0

    def letter_degree(self, letter):
        fam, node, r = letter
        if self.kind == "drinfeld":
            c = tuple((1 if k == node - 1 else 0) if fam == "X+"
                      else (-1 if k == node - 1 else 0)
                      for k in range(self.n))
            return (r, c)
        alpha = self.D.alpha(node)
        if fam == "F":
            alpha = alpha.scale(-1)
        return (alpha.m, alpha.c)

    def intern(self, word):
        wid = self._words.get(word)
        if wid is not None:
            return wid
        with self._lock:
            wid = self._words.get(word)
            if wid is not None:
                return wid
            wid = len(self._by_id)
            self._words[word] = wid
            self._by_id.append(word)
            m, c = 0, [0] * self.n
            for letter in word:
                dm, dc = self.letter_degree(letter)
                m += dm
                for t in range(self.n):
                    c[t] += dc[t]
            self._degrees.append((m, tuple(c)))
            return wid

    def word(self, wid):
        return self._by_id[wid]

    def degree(self, wid):
        return self._degrees[wid]

    def gl_add(self, a, b):
        return (a[0] + b[0], tuple(x + y for x, y in zip(a[1], b[1])))

    def pair_gl(self, alpha, beta):
        """Invariant form on the grouplike lattice ((delta|.) = 0)."""
        return self.D.pair0(alpha[1], beta[1])

    def zero_gl(self):
        return self._zero_gl


class Element:
    """Finitely supported map (grouplike, word id) -> Scalar."""

    __slots__ = ("alph", "terms")

    def __init__(self, alph, terms=None):
        self.alph = alph
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(alph):
        return Element(alph)

    @staticmethod
    def one(alph):
        return Element(alph, {(alph.zero_gl(), 0): ONE})

    @staticmethod
    def grouplike(alph, gl, coeff=ONE):
        if not coeff:
            return Element(alph)
        return Element(alph, {(tuple_gl(gl), 0): coeff})

    @staticmethod
    def letter(alph, letter, coeff=ONE):
        if not alph.letter_valid(letter):
            fam = letter[0]
            if fam in ("X+", "X-") and letter[1] in alph.D.nodes:
                return Element(alph)  # killed by the vanishing rule
            raise AlgebraError("invalid letter %r" % (letter,))
        if not coeff:
            return Element(alph)
        wid = alph.intern((letter,))
        return Element(alph, {(alph.zero_gl(), wid): coeff})

    @staticmethod
    def monomial(alph, gl, word, coeff=ONE):
        if not coeff:
            return Element(alph)
        for letter in word:
            if not alph.letter_valid(letter):
                return Element(alph)
        wid = alph.intern(tuple(word))
        return Element(alph, {(tuple_gl(gl), wid): coeff})

    # -- ring structure --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.alph is other.alph and self.terms == other.terms

    def __hash__(self):
        return hash(self.content_key())

    def content_key(self):
        return tuple(sorted(
            ((gl, self.alph.word(wid), str(c))
             for (gl, wid), c in self.terms.items()),
            key=lambda t: (len(t[1]), t[1], t[0])))

    def __add__(self, other):
        if self.alph is not other.alph:
            raise AlgebraError("alphabet mismatch")
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Element(self.alph, out)

    def __neg__(self):
        return Element(self.alph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if isinstance(s, int):
            s = Scalar.from_int(s)
        if not s:
            return Element(self.alph)
        return Element(self.alph, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if self.alph is not other.alph:
            raise AlgebraError("alphabet mismatch")
        alph = self.alph
        out = {}
        for (gl1, w1), c1 in self.terms.items():
            deg1 = alph.degree(w1)
            word1 = alph.word(w1)
            for (gl2, w2), c2 in other.terms.items():
                # (a,w)(b,v) = q^{-(b|deg w)} (a+b, wv)
                e = alph.pair_gl(gl2, deg1)
                coeff = c1 * c2
                if e:
                    coeff = coeff * Scalar.q_power(-e)
                wid = alph.intern(word1 + alph.word(w2)) if w2 else w1
                key = (alph.gl_add(gl1, gl2), wid)
                s = out.get(key)
                if s is None:
                    out[key] = coeff
                else:
                    s = s + coeff
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return Element(self.alph, out)

    __rmul__ = scale

    # -- grading ---------------------------------------------------------------

    def degrees(self):
        return {self.alph.degree(wid) for (_, wid) in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise AlgebraError("element is not homogeneous")
        return degs.pop()

    def homogeneous_components(self):
        out = {}
        for key, c in self.terms.items():
            deg = self.alph.degree(key[1])
            out.setdefault(deg, {})[key] = c
        return {deg: Element(self.alph, terms) for deg, terms in out.items()}

    # -- rendering ---------------------------------------------------------------

    def render(self):
        """Canonical deterministic text form."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(),
                       key=lambda kv: (len(self.alph.word(kv[0][1])),
                                       self.alph.word(kv[0][1]), kv[0][0]))
        lines = []
        for (gl, wid), c in items:
            lines.append("(%s) * %s" % (c, render_basis(self.alph, gl, wid)))
        return " + ".join(lines)

    def __repr__(self):
        return "<Element %s>" % self.render()


def tuple_gl(gl):
    return (gl[0], tuple(gl[1]))


def render_gl(gl):
    m, c = gl
    parts = []
    if m:
        parts.append("C^%d" % m)
    for i, x in enumerate(c):
        if x:
            parts.append("k%d^%d" % (i + 1, x))
    return ".".join(parts) if parts else "1"


def render_word(alph, word):
    if not word:
        return "[]"
    return ".".join("%s(%d,%d)" % (fam, node, r) if alph.kind == "drinfeld"
                    else "%s%d" % (fam, node)
                    for (fam, node, r) in word)


def render_basis(alph, gl, wid):
    return "%s | %s" % (render_gl(gl), render_word(alph, alph.word(wid)))


def qcomm(a, b, v=ONE):
    """[a, b]_v = ab - v ba."""
    if isinstance(v, int):
        v = Scalar.from_int(v)
    if not v:
        raise DomainError("q-commutator needs a nonzero twist")
    return a * b - (b * a).scale(v)


def comm(a, b):
    return a * b - b * a
