"""Loop-generator side: letters, derived H elements, bracket notations and
all relation families of the presentation.

Relation families are addressed by stable string ids ("XD+", "X1-",
"S2+", "T3-", "S+", ..) and materialize the element (left side minus
right side); a vanishing instance materializes to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .cartan import diagram
from .galgebra import Alphabet, Element, qcomm, comm
from .scalars import DomainError, Scalar, ONE, qnum, qbinom, b_coeff


@lru_cache(maxsize=None)
def drinfeld_alphabet(label):
    return Alphabet(diagram(label), "drinfeld")


def xgen(alph, i, r, sign):
    """X^sign_{i,r}; the zero element when the vanishing rule kills it."""
    fam = "X+" if sign > 0 else "X-"
    return Element.letter(alph, (fam, i, r))


def kgen(alph, i, power=1):
    return Element.grouplike(alph, (0, tuple(power if t == i - 1 else 0
                                             for t in range(alph.n))))


def cgen(alph, m=1):
    return Element.grouplike(alph, (m, (0,) * alph.n))


def kc_gen(alph, m, c):
    return Element.grouplike(alph, (m, tuple(c)))


def _qi(alph, i):
    return Scalar.q_power(alph.D.d[i])


def _qi_diff(alph, i):
    qi = _qi(alph, i)
    return qi - qi ** -1


# --------------------------------------------------------------------------
# H-type elements

def htilde(alph, i, r, sign):
    """The commutator elements of the H-series (sign is the superscript)."""
    key = ("htilde", i, r, sign)
    out = alph.cache.get(key)
    if out is not None:
        return out
    if r == 0:
        out = Element.one(alph)
    elif sign > 0:
        if r < 0:
            out = Element.zero(alph)
        else:
            out = (kgen(alph, i, -1)
                   * comm(xgen(alph, i, r, +1), xgen(alph, i, 0, -1))
                   ).scale(_qi_diff(alph, i))
    else:
        if r > 0:
            out = Element.zero(alph)
        else:
            out = (comm(xgen(alph, i, r, -1), xgen(alph, i, 0, +1))
                   * kgen(alph, i, 1)).scale(_qi_diff(alph, i))
    alph.cache[key] = out
    return out


def h_element(alph, i, r):
    """H_{i,r} extracted from the formal logarithm of the H-tilde series,
    exactly through order |r|."""
    if r == 0:
        raise DomainError("H_{i,0} is not defined")
    key = ("h", i, r)
    out = alph.cache.get(key)
    if out is not None:
        return out
    sign = 1 if r > 0 else -1
    R = abs(r)
    # N(u) = sum_{s=1..R} Htilde^{sign}_{i, sign*s} u^s; log(1+N) truncated
    n_ser = [Element.zero(alph)] + [htilde(alph, i, sign * s, sign)
                                    for s in range(1, R + 1)]
    log_r = _log_coefficient(alph, n_ser, R)
    out = log_r.scale(ONE / _qi_diff(alph, i))
    if sign < 0:
        out = out.scale(-1)
    alph.cache[key] = out
    return out


def _log_coefficient(alph, n_ser, R):
    """[u^R] log(1 + N(u)) with N given by coefficients n_ser[1..R]."""
    total = Element.zero(alph)
    power = list(n_ser)  # N^1
    t = 1
    while t <= R:
        coeff = Scalar.from_fraction(1 if t % 2 else -1, t)
        total = total + power[R].scale(coeff)
        # next power of N, truncated at order R
        if t == R:
            break
        nxt = [Element.zero(alph) for _ in range(R + 1)]
        for a in range(t, R + 1):
            if not power[a]:
                continue
            for b in range(1, R + 1 - a):
                if n_ser[b]:
                    nxt[a + b] = nxt[a + b] + power[a] * n_ser[b]
        power = nxt
        t += 1
    return total


def exp_series_coefficient(alph, h_ser, R, factor):
    """[u^R] exp(factor * sum_{s>=1} h_ser[s] u^s) (used by tests)."""
    total = Element.one(alph) if R == 0 else Element.zero(alph)
    scaled = [Element.zero(alph)] + [h_ser[s].scale(factor)
                                     for s in range(1, R + 1)]
    power = list(scaled)
    fact = 1
    t = 1
    while t <= R:
        fact *= t
        total = total + power[R].scale(Scalar.from_fraction(1, fact))
        if t == R:
            break
        nxt = [Element.zero(alph) for _ in range(R + 1)]
        for a in range(t, R + 1):
            if not power[a]:
                continue
            for b in range(1, R + 1 - a):
                if scaled[b]:
                    nxt[a + b] = nxt[a + b] + power[a] * scaled[b]
        power = nxt
        t += 1
    return total


@dataclass(frozen=True)
class HRecord:
    htilde_plus: Element
    htilde_minus: Element
    h: Element


def h_elements(alph, i, r):
    if r == 0:
        raise DomainError("r = 0: the constant term is 1, not an H element")
    if r % alph.D.dt[i]:
        raise DomainError("r must be a multiple of dt_i")
    return HRecord(htilde(alph, i, r, +1), htilde(alph, i, r, -1),
                   h_element(alph, i, r))


# --------------------------------------------------------------------------
# bracket notations

def x_expr(alph, sign, i, j, a, rs, s):
    """Alternating binomial sum with X_j inserted at every position."""
    l = len(rs)
    xi = [xgen(alph, i, r, sign) for r in rs]
    xj = xgen(alph, j, s, sign)
    total = Element.zero(alph)
    for u in range(l + 1):
        term = Element.one(alph)
        for t in range(u):
            term = term * xi[t]
        term = term * xj
        for t in range(u, l):
            term = term * xi[t]
        coeff = qbinom(l, u, alph.D.d[i] * a)
        if u % 2:
            coeff = -coeff
        total = total + term.scale(coeff)
    return total


def m_expr(alph, sign, i, j, a, rs, s):
    """Nested q-commutator form of the same notation."""
    aij = alph.D.a[i][j]
    out = xgen(alph, j, s, sign)
    for t, r in enumerate(rs):
        twist = Scalar.q_power(alph.D.d[i] * (-aij - 2 * a * t))
        out = qcomm(out, xgen(alph, i, r, sign), twist)
    return out


def m2(alph, sign, i, r, j, s):
    D = alph.D
    dij = D.dt_pair(i, j)
    qa = Scalar.q_power(D.d[i] * D.a[i][j])
    qb = Scalar.q_power(D.d[j] * D.a[j][i])
    return qcomm(xgen(alph, i, r + sign * dij, sign), xgen(alph, j, s, sign), qa) \
        + qcomm(xgen(alph, j, s + sign * dij, sign), xgen(alph, i, r, sign), qb)


def mi(alph, sign, i, r1, r2):
    qi2 = Scalar.q_power(2 * alph.D.d[i])
    return qcomm(xgen(alph, i, r1 + sign * alph.D.dt[i], sign),
                 xgen(alph, i, r2, sign), qi2)


def m22(alph, sign, r1, r2):
    if not alph.D.is_A2n2:
        raise DomainError("only defined in twisted A_{2n}")
    q = Scalar.q_power
    return qcomm(xgen(alph, 1, r1 + 2 * sign, sign), xgen(alph, 1, r2, sign), q(2)) \
        - qcomm(xgen(alph, 1, r1 + sign, sign), xgen(alph, 1, r2 + sign, sign),
                q(-6)).scale(q(4))


def m3(alph, sign, eps, r1, r2, r3):
    if not alph.D.is_A2n2:
        raise DomainError("only defined in twisted A_{2n}")
    q = Scalar.q_power
    inner = qcomm(xgen(alph, 1, r1 + sign * eps, sign), xgen(alph, 1, r2, sign),
                  q(2 * eps))
    return qcomm(inner, xgen(alph, 1, r3, sign), q(4 * eps))


def _k_pair(alph):
    D = alph.D
    for i in D.nodes:
        for j in D.nodes:
            if D.a[i][j] == -D.k:
                return i, j
    raise DomainError("no node pair with a_ij = -k in this diagram")


def xk(alph, sign, r1, r2, s):
    if alph.D.k == 1:
        raise DomainError("only defined for twisted types")
    i, j = _k_pair(alph)
    k = alph.D.k
    total = Element.zero(alph)
    for u in range(k):
        v = k - 1 - u
        term = x_expr(alph, sign, i, j, k, (r1 + sign * v, r2 + sign * u), s)
        total = total + term.scale(Scalar.q_power(v - u))
    return total


def m2b(alph, sign, r1, r2, s):
    if alph.D.k != 2 or alph.D.is_A2n2:
        raise DomainError("only defined for k = 2 away from twisted A_{2n}")
    i, j = _k_pair(alph)
    return m_expr(alph, sign, i, j, 1, (r1 + sign, r2), s)


def m3b(alph, sign, r1, r2, s):
    if alph.D.k != 3:
        raise DomainError("only defined for k = 3")
    i, j = _k_pair(alph)
    return m_expr(alph, sign, i, j, 2, (r1 + 2 * sign, r2), s).scale(
        Scalar.q_power(2) + ONE) \
        + m_expr(alph, sign, i, j, 1, (r1 + sign, r2 + sign), s)


def y_elem(alph, i, a):
    if a < 0:
        raise DomainError("Y is defined for a >= 0")
    out = xgen(alph, i, alph.D.dt[i], +1)
    for t in range(1, a + 1):
        out = qcomm(out, xgen(alph, i, 0, +1),
                    Scalar.q_power(2 * t * alph.D.d[i]))
    return out


_BRACKET_KINDS = {
    "X": lambda alph, sign, p: x_expr(alph, sign, p[0], p[1], p[2],
                                      tuple(p[3]), p[4]),
    "M": lambda alph, sign, p: m_expr(alph, sign, p[0], p[1], p[2],
                                      tuple(p[3]), p[4]),
    "M2": lambda alph, sign, p: m2(alph, sign, p[0], p[1], p[2], p[3]),
    "Mi": lambda alph, sign, p: mi(alph, sign, p[0], p[1], p[2]),
    "M22": lambda alph, sign, p: m22(alph, sign, p[0], p[1]),
    "M3": lambda alph, sign, p: m3(alph, sign, p[0], p[1], p[2], p[3]),
    "Xk": lambda alph, sign, p: xk(alph, sign, p[0], p[1], p[2]),
    "M2b": lambda alph, sign, p: m2b(alph, sign, p[0], p[1], p[2]),
    "M3b": lambda alph, sign, p: m3b(alph, sign, p[0], p[1], p[2]),
    "Y": lambda alph, sign, p: y_elem(alph, p[0], p[1]),
}


def bracket_expr(alph, kind, sign, *params):
    fn = _BRACKET_KINDS.get(kind)
    if fn is None:
        raise DomainError("unknown bracket kind %r" % (kind,))
    try:
        return fn(alph, sign, params)
    except (IndexError, TypeError) as exc:
        raise DomainError("bad arity for bracket kind %r" % (kind,)) from exc


# --------------------------------------------------------------------------
# relation families

@dataclass(frozen=True)
class RelationInstance:
    family: str
    params: tuple
    element: Element

    def __post_init__(self):
        if not self.element.is_homogeneous():
            raise DomainError("relation instance is not homogeneous")


def _sym2(fn, r1, r2):
    return fn(r1, r2) + fn(r2, r1)


def _sym(fn, rs):
    total = None
    for perm in permutations(rs):
        term = fn(perm)
        total = term if total is None else total + term
    return total


def _check(cond, msg):
    if not cond:
        raise DomainError(msg)


def relation_element(alph, family, params):
    """Materialize a relation family instance as (lhs - rhs)."""
    D = alph.D
    q = Scalar.q_power
    sign = 1 if family.endswith("+") else (-1 if family.endswith("-") else 0)
    base = family.rstrip("+-")

    if family == "XXD":
        i, r, j, s = params
        _check(i != j, "XXD needs i != j")
        return comm(xgen(alph, i, r, +1), xgen(alph, j, s, -1))
    if family == "XXE":
        i, r = params
        diff = _qi_diff(alph, i)
        rhs = (kc_gen(alph, r, [1 if t == i - 1 else 0 for t in range(alph.n)])
               - kc_gen(alph, -r, [-1 if t == i - 1 else 0 for t in range(alph.n)])
               ).scale(ONE / diff)
        return comm(xgen(alph, i, r, +1), xgen(alph, i, -r, -1)) - rhs
    if family in ("XXH+", "XXH-"):
        i, r, s = params
        _check((r + s > 0) == (sign > 0) and r + s != 0, "XXH sign mismatch")
        lhs = comm(xgen(alph, i, r, +1), xgen(alph, i, s, -1))
        if sign > 0:
            rhs = (cgen(alph, -s) * kgen(alph, i)
                   * htilde(alph, i, r + s, +1)).scale(ONE / _qi_diff(alph, i))
        else:
            rhs = -(cgen(alph, -r) * kgen(alph, i, -1)
                    * htilde(alph, i, r + s, -1)).scale(ONE / _qi_diff(alph, i))
        return lhs - rhs
    if family == "XX":
        i, r, j, s = params
        if i != j:
            return relation_element(alph, "XXD", (i, r, j, s))
        if r + s == 0:
            return relation_element(alph, "XXE", (i, r))
        return relation_element(alph, "XXH+" if r + s > 0 else "XXH-",
                                (i, r, s))

    if base == "HXL" or base == "HX":
        i, r, j, s = params
        _check(r != 0, "needs r != 0")
        if base == "HXL":
            _check(D.dt[i] <= abs(r) <= D.dt_pair(i, j), "HXL r range")
        b = b_coeff(D, i, j, r)
        lhs = comm(h_element(alph, i, r), xgen(alph, j, s, sign))
        shift = (r - sign * abs(r)) // 2
        rhs = (cgen(alph, shift) * xgen(alph, j, r + s, sign)).scale(b)
        if sign < 0:
            rhs = -rhs
        return lhs - rhs

    if base == "HXLX":
        i, r, j, s = params
        _check(0 < r <= D.dt_pair(i, j), "pure-X HXL needs 0 < r <= dt_ij")
        b = b_coeff(D, i, j, r)
        if sign > 0:
            inner = comm(xgen(alph, i, r, +1), xgen(alph, i, 0, -1))
            lhs = qcomm(inner, xgen(alph, j, s, +1), q(D.d[i] * D.a[i][j]))
            rhs = (kgen(alph, i) * xgen(alph, j, s + r, +1)).scale(b)
        else:
            inner = comm(xgen(alph, i, -r, -1), xgen(alph, i, 0, +1))
            lhs = qcomm(inner, xgen(alph, j, s, -1), q(D.d[i] * D.a[i][j]))
            rhs = (kgen(alph, i, -1) * xgen(alph, j, s - r, -1)).scale(b)
        return lhs - rhs
    if base == "HXLXc":
        i, r, j, s = params
        _check(0 < r <= D.dt_pair(i, j), "pure-X HXL needs 0 < r <= dt_ij")
        b = b_coeff(D, i, j, r)
        if sign > 0:
            inner = comm(xgen(alph, i, r, +1), xgen(alph, i, 0, -1))
            lhs = qcomm(inner, xgen(alph, j, s, -1), q(-D.d[i] * D.a[i][j]))
            rhs = -(cgen(alph, r) * kgen(alph, i)
                    * xgen(alph, j, s + r, -1)).scale(b)
        else:
            inner = comm(xgen(alph, i, -r, -1), xgen(alph, i, 0, +1))
            lhs = qcomm(inner, xgen(alph, j, s, +1), q(-D.d[i] * D.a[i][j]))
            rhs = -(cgen(alph, -r) * kgen(alph, i, -1)
                    * xgen(alph, j, s - r, +1)).scale(b)
        return lhs - rhs

    if family == "HH":
        i, r, j, s = params
        _check(r != 0 and s != 0, "HH needs nonzero parameters")
        lhs = comm(h_element(alph, i, r), h_element(alph, j, s))
        if r + s == 0:
            b = b_coeff(D, i, j, r)
            rhs = (cgen(alph, r) - cgen(alph, -r)).scale(b / _qi_diff(alph, j))
            return lhs - rhs
        return lhs

    if base == "XD":
        i, r, j, s = params
        _check(D.a[i][j] < 0, "XD needs a_ij < 0")
        return m2(alph, sign, i, r, j, s)
    if base == "X1":
        i, r1, r2 = params
        _check(not (D.is_A2n2 and i == 1), "X1 excludes the special node")
        return _sym2(lambda a, b: mi(alph, sign, i, a, b), r1, r2)
    if base == "X2":
        r1, r2 = params
        return _sym2(lambda a, b: m22(alph, sign, a, b), r1, r2)
    if base == "X3":
        eps, r1, r2, r3 = params
        _check(eps in (1, -1), "X3 needs eps = +-1")
        return _sym(lambda rs: m3(alph, sign, eps, *rs), (r1, r2, r3))
    if base == "SUL":
        i, j, *rs, s = params
        _check(i != j, "SUL needs i != j")
        _check(D.k == 1 or D.a[i][j] in (0, -1), "SUL index set")
        _check(len(rs) == 1 - D.a[i][j], "SUL arity")
        return _sym(lambda p: x_expr(alph, sign, i, j, 1, p, s), tuple(rs))
    if base == "S2":
        i, j, r1, r2, s = params
        _check(D.k == 2 and D.a[i][j] == -2, "S2 index set")
        return _sym2(lambda a, b:
                     x_expr(alph, sign, i, j, 2, (a + sign, b), s).scale(q(1))
                     + x_expr(alph, sign, i, j, 2, (a, b + sign), s).scale(q(-1)),
                     r1, r2)
    if base == "S3":
        i, j, r1, r2, s = params
        _check(D.k == 3 and D.a[i][j] == -3, "S3 index set")
        return _sym2(lambda a, b:
                     x_expr(alph, sign, i, j, 3, (a + 2 * sign, b), s).scale(q(2))
                     + x_expr(alph, sign, i, j, 3, (a + sign, b + sign), s)
                     + x_expr(alph, sign, i, j, 3, (a, b + 2 * sign), s).scale(q(-2)),
                     r1, r2)
    if base == "T2":
        i, j, r1, r2, s = params
        _check(D.k == 2 and not D.is_A2n2 and D.a[i][j] == -2, "T2 index set")
        return _sym2(lambda a, b: m_expr(alph, sign, i, j, 1, (a + sign, b), s),
                     r1, r2)
    if base == "T3":
        i, j, r1, r2, s = params
        _check(D.k == 3 and D.a[i][j] == -3, "T3 index set")
        return _sym2(lambda a, b:
                     m_expr(alph, sign, i, j, 2, (a + 2 * sign, b), s).scale(
                         q(2) + ONE)
                     + m_expr(alph, sign, i, j, 1, (a + sign, b + sign), s),
                     r1, r2)
    if base == "S":
        i, j, *rs, s = params
        _check(i != j, "Serre needs i != j")
        _check(len(rs) == 1 - D.a[i][j], "Serre arity")
        return _sym(lambda p: x_expr(alph, sign, i, j, 1, p, s), tuple(rs))

    raise DomainError("unknown relation family %r" % (family,))


def relation_instance(alph, family, params):
    return RelationInstance(family, tuple(params),
                            relation_element(alph, family, params))
