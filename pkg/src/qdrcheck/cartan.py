"""Finite and affine Dynkin data via the twisted folding construction.

An affine diagram is built from a finite diagram together with a diagram
automorphism; the Cartan matrix, symmetrizers, marks and the normalized
bilinear form on the finite side are all derived here, not tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import CycScalar, DomainError, Scalar, qnum


class DiagramError(ValueError):
    """Invalid diagram datum or construction precondition."""


# --------------------------------------------------------------------------
# finite diagrams

@dataclass(frozen=True)
class FiniteDiagram:
    label: str
    a: tuple  # Cartan matrix, tuple of tuple rows

    @property
    def n(self):
        return len(self.a)

    def validate(self):
        a = self.a
        n = len(a)
        for i in range(n):
            if a[i][i] != 2:
                raise DiagramError("diagonal must be 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise DiagramError("off-diagonal must be <= 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise DiagramError("zero pattern must be symmetric")
        for size in range(1, n + 1):
            for rows in _subsets(n, size):
                if _det([[a[i][j] for j in rows] for i in rows]) <= 0:
                    raise DiagramError("finite type needs positive minors")
        if not _connected(a):
            raise DiagramError("diagram must be indecomposable")


def _subsets(n, size):
    def rec(start, todo):
        if todo == 0:
            yield ()
            return
        for i in range(start, n - todo + 1):
            for rest in rec(i + 1, todo - 1):
                yield (i,) + rest
    return rec(0, size)


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for cc in range(c, n):
                m[r][cc] -= f * m[c][cc]
    return out


def _connected(a):
    n = len(a)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and a[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _path_matrix(n):
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                       for j in range(n)) for i in range(n))


_FINITE = {
    "A1": FiniteDiagram("A1", _path_matrix(1)),
    "A2": FiniteDiagram("A2", _path_matrix(2)),
    "A3": FiniteDiagram("A3", _path_matrix(3)),
    "A4": FiniteDiagram("A4", _path_matrix(4)),
    # node 0 long, node 1 short
    "C2": FiniteDiagram("C2", ((2, -1), (-2, 2))),
    # star with center 1
    "D4": FiniteDiagram("D4", ((2, -1, 0, 0),
                               (-1, 2, -1, -1),
                               (0, -1, 2, 0),
                               (0, -1, 0, 2))),
}


@dataclass(frozen=True)
class TwistData:
    base: FiniteDiagram
    chi: tuple  # permutation of 0..n-1

    def __post_init__(self):
        a = self.base.a
        p = self.chi
        if sorted(p) != list(range(len(a))):
            raise DiagramError("chi is not a permutation")
        for i in range(len(a)):
            for j in range(len(a)):
                if a[p[i]][p[j]] != a[i][j]:
                    raise DiagramError("chi is not a diagram automorphism")

    @property
    def k(self):
        p = self.chi
        k = 1
        cur = p
        while list(cur) != list(range(len(p))):
            cur = tuple(p[c] for c in cur)
            k += 1
        return k

    def chi_pow(self, i, u):
        for _ in range(u % self.k):
            i = self.chi[i]
        return i


# --------------------------------------------------------------------------
# affine diagrams

class AffineDiagram:
    """Affine Dynkin datum X_n^(k) produced by folding.

    Nodes are I = {0, 1, .., n} with I_0 = {1, .., n}; node 1 of an
    A_{2n}^(2) type is the orbit carrying the length-changing edge.
    """

    def __init__(self, label, twist):
        self.label = label
        self.twist = twist
        base = twist.base
        base.validate()
        k = twist.k
        if k not in (1, 2, 3):
            raise DiagramError("automorphism order must be 1, 2 or 3")
        self.k = k
        nt = base.n
        at = base.a

        # orbits of chi, ordered; for twisted A_{2n} the orbit with an
        # internal edge is the distinguished node 1
        orbits = []
        seen = set()
        for i in range(nt):
            if i in seen:
                continue
            orb = []
            cur = i
            while cur not in seen:
                seen.add(cur)
                orb.append(cur)
                cur = twist.chi[cur]
            orbits.append(tuple(sorted(orb)))
        special = [o for o in orbits
                   if any(at[i][twist.chi[i]] != 0 for i in o) and len(o) > 1]
        self.is_A2n2 = bool(special)
        if self.is_A2n2:
            orbits = special + [o for o in orbits if o not in special]
        self.orbits = tuple(orbits)
        self.n = len(orbits)
        n = self.n
        self.orbit_of = {}
        for idx, orb in enumerate(orbits):
            for i in orb:
                self.orbit_of[i] = idx + 1

        # normalized bilinear form on the finite root lattice
        eps = self._finite_symmetrizer(at)
        c = [sum(eps[i] * at[i][twist.chi_pow(i, u)] for u in range(k))
             for i in range(nt)]
        factor = Fraction(2, min(c))
        qt = [[factor * eps[i] * at[i][j] for j in range(nt)] for i in range(nt)]
        if any(x.denominator != 1 for row in qt for x in row):
            raise DiagramError("bilinear normalization is not integral")
        self.qform_tilde = tuple(tuple(int(x) for x in row) for row in qt)

        # folded Cartan matrix on I_0 (1-based in self.a later)
        reps = [orb[0] for orb in orbits]
        a0 = [[0] * n for _ in range(n)]
        for bi in range(n):
            ip = reps[bi]
            den = sum(at[twist.chi_pow(ip, u)][ip] for u in range(k))
            for bj in range(n):
                jp = reps[bj]
                num = sum(at[twist.chi_pow(ip, u)][jp] for u in range(k))
                v = Fraction(2 * num, den)
                if v.denominator != 1:
                    raise DiagramError("folding produced a non-integer entry")
                a0[bi][bj] = int(v)

        # d_i from the orbit sums of the normalized form (i in I_0)
        d0part = []
        for bi in range(n):
            ip = reps[bi]
            tot = sum(self.qform_tilde[ip][twist.chi_pow(ip, u)]
                      for u in range(k))
            if tot % 2:
                raise DiagramError("odd orbit norm")
            d0part.append(tot // 2)

        # theta and the affine extension
        form0 = [[d0part[i] * a0[i][j] for j in range(n)] for i in range(n)]
        roots = _root_closure(a0)
        theta = _highest_root(roots, form0, short=(k > 1))
        if self.is_A2n2:
            theta = tuple(2 * x for x in theta)
        tt = _pair(form0, theta, theta)
        if tt % 2:
            raise DiagramError("theta has odd norm")
        row0 = [0] * n
        col0 = [0] * n
        for i in range(n):
            ti = _pair(form0, theta, _unit(n, i))
            row0[i] = -Fraction(2 * ti, tt)
            col0[i] = -Fraction(2 * ti, 2 * d0part[i])
        if any(x.denominator != 1 for x in row0 + col0):
            raise DiagramError("affine extension is not integral")

        a = [[2] + [int(x) for x in row0]]
        for i in range(n):
            a.append([int(col0[i])] + list(a0[i]))
        self.a = tuple(tuple(r) for r in a)
        self.d = tuple([tt // 2] + d0part)
        self.marks = (1,) + theta  # delta = sum_i marks[i] * alpha_i
        self.theta = theta
        if min(self.d) != 1:
            raise DiagramError("symmetrizer is not normalized")
        for i in range(n + 1):
            for j in range(n + 1):
                if self.d[i] * self.a[i][j] != self.d[j] * self.a[j][i]:
                    raise DiagramError("diag(d) A is not symmetric")
        for i in range(n + 1):
            if sum(self.a[i][j] * self.marks[j] for j in range(n + 1)) != 0:
                raise DiagramError("delta is not in the kernel of A")

        # d-tilde; index 0 is a placeholder (only I_0 carries d-tilde)
        if k == 1 or self.is_A2n2:
            self.dt = (0,) + (1,) * n
        else:
            self.dt = (0,) + tuple(self.d[1:])
        self.dtmax = max(self.dt[1:])

        # section I_0 -> I-tilde satisfying remark-4.10 compatibility
        self.section = self._choose_section(at)

    @staticmethod
    def _finite_symmetrizer(at):
        n = len(at)
        eps = [None] * n
        eps[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if at[i][j] != 0 and i != j and eps[j] is None:
                    eps[j] = eps[i] * Fraction(at[i][j], at[j][i])
                    stack.append(j)
        scale = min(e for e in eps)
        eps = [e / scale for e in eps]
        if any(e.denominator != 1 for e in eps):
            raise DiagramError("non-symmetrizable matrix")
        return [int(e) for e in eps]

    def _choose_section(self, at):
        import itertools
        n = self.n
        for combo in itertools.product(*[self.orbits[i] for i in range(n)]):
            ok = True
            for bi in range(n):
                for bj in range(n):
                    if bi != bj and self.a[bi + 1][bj + 1] != 0 \
                            and at[combo[bi]][combo[bj]] == 0:
                        ok = False
            if ok:
                return (None,) + combo
        raise DiagramError("no compatible section exists")

    # -- simple accessors ---------------------------------------------------

    @property
    def nodes(self):
        return tuple(range(1, self.n + 1))

    def dt_pair(self, i, j):
        return max(self.dt[i], self.dt[j])

    def q_i(self, i):
        return Scalar.q_power(self.d[i])

    def qnum_i(self, m, i):
        return qnum(m, self.d[i])

    def in_IZ(self, i, r):
        return r % self.dt[i] == 0

    # -- root lattice -------------------------------------------------------

    def root(self, m=0, c=None):
        return Root(m, tuple(c) if c is not None else (0,) * self.n)

    def alpha(self, i):
        """Simple root alpha_i as a Root (i in I)."""
        if i == 0:
            return Root(1, tuple(-x for x in self.theta))
        return Root(0, _unit(self.n, i - 1))

    def delta(self):
        return Root(1, (0,) * self.n)

    def root_from_icoords(self, x):
        m = x[0]
        return Root(m, tuple(x[i + 1] - m * self.theta[i] for i in range(self.n)))

    def icoords(self, r):
        return (r.m,) + tuple(r.c[i] + r.m * self.theta[i] for i in range(self.n))

    def pair0(self, c1, c2):
        """Bilinear form on Q_0 coordinate tuples."""
        tot = 0
        for i in range(self.n):
            if not c1[i]:
                continue
            for j in range(self.n):
                if c2[j]:
                    tot += c1[i] * self.d[i + 1] * self.a[i + 1][j + 1] * c2[j]
        return tot


@dataclass(frozen=True)
class Root:
    """Element of Q written as m*delta + sum_i c_i alpha_i over I_0."""
    m: int
    c: tuple

    def __add__(self, other):
        return Root(self.m + other.m,
                    tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return Root(self.m - other.m,
                    tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return Root(-self.m, tuple(-a for a in self.c))

    def scale(self, k):
        return Root(k * self.m, tuple(k * a for a in self.c))

    def is_zero(self):
        return self.m == 0 and not any(self.c)


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def _pair(form, x, y):
    return sum(form[i][j] * x[i] * y[j]
               for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


def _root_closure(a0):
    n = len(a0)
    roots = set()
    frontier = [_unit(n, i) for i in range(n)]
    roots.update(frontier)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                pairing = sum(a0[i][j] * r[j] for j in range(n))
                img = tuple(r[j] - (pairing if j == i else 0) for j in range(n))
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return roots


def _highest_root(roots, form, short):
    norms = {r: _pair(form, r, r) for r in roots}
    target = min(norms.values()) if short else max(norms.values())
    candidates = [r for r in roots if norms[r] == target]
    compare = candidates if short else roots
    for r in candidates:
        if all(all(a - b >= 0 for a, b in zip(r, s)) for s in compare):
            return r
    raise DiagramError("no dominance-highest root found")


# --------------------------------------------------------------------------
# operations

def bilinear(D, x, y):
    """The invariant form on Q; (delta | anything) = 0."""
    return D.pair0(x.c, y.c)


def simple_reflection_action(D, i, root):
    x = D.icoords(root)
    pairing = sum(D.a[i][j] * x[j] for j in range(D.n + 1))
    y = list(x)
    y[i] -= pairing
    return D.root_from_icoords(tuple(y))


def _negative(x):
    return any(v < 0 for v in x) and all(v <= 0 for v in x)


def translation_word(D, i):
    """Reduced expression s_{i_1} .. s_{i_N} tau for the translation by
    lambda_i (action alpha -> alpha - (lambda_i | alpha) delta).

    Returns (word, tau) where word lists reflection indices of the product
    read left to right (the rightmost acts first) and tau is a permutation
    of I.  The result is certified against the lambda action on every
    simple root before being returned.
    """
    if i not in D.nodes:
        raise DiagramError("translation node must lie in I_0")
    n = D.n

    def lam(root):
        return Root(root.m - D.dt[i] * root.c[i - 1], root.c)

    # images of all simple roots under the current map u, as I-coords
    images = [D.icoords(lam(D.alpha(j))) for j in range(n + 1)]
    rev = []
    for _ in range(200 * (n + 2)):
        j = next((j for j in range(n + 1) if _negative(images[j])), None)
        if j is None:
            break
        rev.append(j)
        # u := u s_j  acting on coordinates
        new = list(images)
        for l in range(n + 1):
            if l == j:
                new[l] = tuple(-x for x in images[j])
            elif D.a[j][l] != 0:
                new[l] = tuple(images[l][t] - D.a[j][l] * images[j][t]
                               for t in range(n + 1))
        images = new
    else:
        raise RuntimeError("descent loop failed to terminate")

    tau = [None] * (n + 1)
    simple = {tuple(_unit(n + 1, j)): j for j in range(n + 1)}
    for j in range(n + 1):
        img = simple.get(tuple(images[j]))
        if img is None:
            raise RuntimeError("descent residue is not a diagram automorphism")
        tau[j] = img
    for a in range(n + 1):
        for b in range(n + 1):
            if D.a[tau[a]][tau[b]] != D.a[a][b]:
                raise RuntimeError("descent residue is not a diagram automorphism")
    word = [tau[j] for j in reversed(rev)]

    # certify: the composite word action reproduces the lambda action
    for j in range(n + 1):
        got = _apply_word(D, word, tau, D.alpha(j))
        if got != lam(D.alpha(j)):
            raise RuntimeError("translation word failed certification")
    return tuple(word), tuple(tau)


def _apply_word(D, word, tau, root):
    # tau permutes simple roots (alpha_j -> alpha_{tau(j)}), then the
    # reflections act right to left
    x = D.icoords(root)
    y = [0] * (D.n + 1)
    for j in range(D.n + 1):
        y[tau[j]] += x[j]
    cur = D.root_from_icoords(tuple(y))
    for s in reversed(word):
        cur = simple_reflection_action(D, s, cur)
    return cur


def apply_translation_word(D, word, tau, root):
    """Action of the word returned by translation_word on a Root."""
    return _apply_word(D, word, tau, root)


# --------------------------------------------------------------------------
# twist polynomials

@dataclass(frozen=True)
class TwistPolys:
    f: dict  # {(e1, e2): CycScalar}
    g: dict
    p: object  # dict or None
    m: object  # int or None


def _poly2_eq(p1, p2):
    keys = set(p1) | set(p2)
    zero = None
    for k in keys:
        a = p1.get(k)
        b = p2.get(k)
        if a is None:
            if b:
                return False
        elif b is None:
            if a:
                return False
        elif a != b:
            return False
    return True


def twist_polynomials(D, ip, jp, sign, with_p=False):
    """F, G and optionally P, m for the tilde-indexed pair (ip, jp).

    sign is +1 or -1 and selects the superscript branch.
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    k = D.k
    chi = D.twist
    at = chi.base.a
    f = {(0, 0): CycScalar.omega(k, 0)}
    g = {(0, 0): CycScalar.omega(k, 0)}
    for v in range(k):
        jv = chi.chi_pow(jp, v)
        if at[ip][jv] == 0:
            continue
        e = sign * D.qform_tilde[ip][jv]
        qe = CycScalar(k, Scalar.q_power(e))
        wv = CycScalar.omega(k, v)
        f = _poly2_mul(f, {(1, 0): CycScalar(k, Scalar.from_int(1)),
                           (0, 1): -(wv * qe)}, k)
        g = _poly2_mul(g, {(1, 0): qe,
                           (0, 1): -wv}, k)
    p = None
    m = None
    branch1 = (at[ip][chi.chi[ip]] == 0 and chi.chi[jp] != jp) \
        or chi.chi[ip] == ip
    if with_p:
        if not (k > 1 and chi.chi[ip] != jp and at[ip][jp] < 0):
            raise DomainError("P is only defined for k > 1, chi(i') != j', "
                              "a~_{i'j'} < 0")
        if branch1:
            p = {(0, 0): CycScalar(k, Scalar.from_int(1))}
        else:
            # (q^{+-2k} u1^k - u2^k) / (q^{+-2} u1 - u2)
            p = {}
            for t in range(k):
                coeff = Scalar.q_power(sign * 2 * (k - 1 - t))
                p[(k - 1 - t, t)] = CycScalar(k, coeff)
        dti = D.dt[D.orbit_of[ip]]
        m = (k * dti) // D.dtmax if branch1 else k
    return TwistPolys(f=f, g=g, p=p, m=m)


def _poly2_mul(p1, p2, k):
    out = {}
    zero = CycScalar(k, Scalar.from_int(0))
    for (a1, b1), c1 in p1.items():
        if not c1:
            continue
        for (a2, b2), c2 in p2.items():
            if not c2:
                continue
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, zero) + c1 * c2
    return {key: c for key, c in out.items() if c}


def poly2_substitute_u1(p, k, power_shift):
    """u1 -> w^{-1} u1 style substitutions used by the shift identities."""
    out = {}
    for (a, b), c in p.items():
        out[(a, b)] = c * CycScalar.omega(k, (-power_shift * a) % k)
    return out


# --------------------------------------------------------------------------
# the implemented type matrix

_TWISTS = {
    "A1~1": ("A1", (0,)),
    "A2~1": ("A2", (0, 1)),
    "A3~1": ("A3", (0, 1, 2)),
    "C2~1": ("C2", (0, 1)),
    "A2~2": ("A2", (1, 0)),
    "A3~2": ("A3", (2, 1, 0)),
    "A4~2": ("A4", (3, 2, 1, 0)),
    "D4~3": ("D4", (2, 1, 3, 0)),
}

# D_{n+1}^{(2)} at its smallest rank coincides with A_3^{(2)} (D_3 = A_3)
_ALIASES = {"D3~2": "A3~2"}

TYPES = tuple(_TWISTS)


@lru_cache(maxsize=None)
def diagram(label):
    key = _ALIASES.get(label, label)
    if key != label:
        return diagram(key)
    if key not in _TWISTS:
        raise DiagramError("unknown diagram label %r" % (label,))
    fin, perm = _TWISTS[key]
    return AffineDiagram(key, TwistData(_FINITE[fin], perm))


def cartan_dump(D):
    """Plain-text dump of the Cartan data (golden-file format)."""
    lines = ["label %s" % D.label, "n %d" % D.n]
    for row in D.a:
        lines.append(" ".join(str(x) for x in row))
    lines.append("d " + " ".join(str(x) for x in D.d))
    lines.append("dt " + " ".join(str(x) for x in D.dt[1:]))
    lines.append("marks " + " ".join(str(x) for x in D.marks))
    return "\n".join(lines) + "\n"
