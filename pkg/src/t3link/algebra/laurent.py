"""Multivariate Laurent polynomials over Q(zeta_d).

A LaurentPoly maps integer exponent vectors to nonzero Cyclo coefficients.
Monomials are units, so divisibility and gcd questions are answered on the
polynomial obtained by shifting every exponent to be nonnegative.
"""

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .cyclotomic import Cyclo


class LaurentPoly:
    __slots__ = ("vars", "d", "terms", "_hash")

    def __init__(self, vars, d=1, terms=None):
        self.vars = tuple(vars)
        self.d = d
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if not isinstance(c, Cyclo):
                    c = Cyclo.rational(d, c)
                elif c.d != d:
                    raise ValueError("coefficient order differs from polynomial order")
                if len(e) != n:
                    raise ValueError("exponent vector length does not match variables")
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, d, terms):
        p = cls.__new__(cls)
        p.vars, p.d, p.terms, p._hash = vars, d, terms, None
        return p

    # constructors
    @classmethod
    def zero(cls, vars, d=1):
        return cls(vars, d)

    @classmethod
    def const(cls, vars, value, d=1):
        vars = tuple(vars)
        return cls(vars, d, {(0,) * len(vars): value})

    @classmethod
    def monomial(cls, vars, exps, coeff=1, d=1):
        return cls(vars, d, {tuple(exps): coeff})

    @classmethod
    def var(cls, vars, name, d=1):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, d, {tuple(e): 1})

    # predicates
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self):
        """True for c * monomial with c a nonzero field element."""
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.d != other.d:
            raise ValueError(f"coefficient field mismatch: d={self.d} vs d={other.d}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return LaurentPoly.const(self.vars, other, self.d)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(self.vars, self.d, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return LaurentPoly._raw(self.vars, self.d, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, self.d, {tuple(n * a for a in e): c ** n})
        result = LaurentPoly.const(self.vars, 1, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        if not c:
            return LaurentPoly.zero(self.vars, self.d)
        return LaurentPoly._raw(self.vars, self.d, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps):
        return LaurentPoly._raw(
            self.vars, self.d,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def min_exponents(self):
        n = len(self.vars)
        if not self.terms:
            return (0,) * n
        return tuple(min(e[i] for e in self.terms) for i in range(n))

    def exact_div(self, other):
        """Return self / other, raising ArithmeticError if not exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.vars, self.d)
        m1, m2 = self.min_exponents(), other.min_exponents()
        a = _shift_terms(self.terms, m1, -1)
        b = _shift_terms(other.terms, m2, -1)
        q = poly_divexact(a, b)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return LaurentPoly._raw(self.vars, self.d, q).shift(tuple(x - y for x, y in zip(m1, m2)))

    def divides(self, other):
        """True if self divides other in the Laurent ring."""
        if self.is_zero():
            return other.is_zero()
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def substitute(self, images):
        """Ring homomorphism sending each variable to the LaurentPoly images[name].

        All images must share one target ring.
        """
        images = [images[v] for v in self.vars]
        if not images:
            raise ValueError("substitution of a constant needs a target ring")
        target = images[0]
        out = LaurentPoly.zero(target.vars, target.d)
        for e, c in self.terms.items():
            term = LaurentPoly.const(target.vars, c, target.d)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    def change_field(self, d):
        """Embed Q(zeta_e) into Q(zeta_d) for e | d."""
        if d == self.d:
            return self
        if d % self.d:
            raise ValueError(f"cannot embed d={self.d} into d={d}")
        step = d // self.d
        out = {}
        for e, c in self.terms.items():
            v = Cyclo.zero(d)
            for j, q in enumerate(c.coeffs):
                if q:
                    v = v + Cyclo.root(d, j * step) * q
            out[e] = v
        return LaurentPoly(self.vars, d, out)

    # comparison and display
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.d == other.d and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self == LaurentPoly.const(self.vars, other, self.d)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.d, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({self.vars}, d={self.d}, {self})"

    def __str__(self):
        return render_laurent(self)


def render_laurent(p):
    """Ascending-exponent rendering, e.g. ``1 - 2*t + t^2``."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = []
        for v, k in zip(p.vars, e):
            if k == 1:
                mono.append(v)
            elif k:
                mono.append(f"{v}^{k}")
        mono = "*".join(mono)
        cs = str(c)
        if not mono:
            piece = cs
        elif c == 1:
            piece = mono
        elif c == -1:
            piece = "-" + mono
        else:
            piece = f"{cs}*{mono}"
        out.append(piece)
    text = out[0]
    for piece in out[1:]:
        text += " - " + piece[1:] if piece.startswith("-") else " + " + piece
    return text


def _shift_terms(terms, m, sign):
    return {tuple(a + sign * b for a, b in zip(e, m)): c for e, c in terms.items()}


# ---------------------------------------------------------------------------
# polynomial (nonnegative exponent) helpers on term dicts

def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = c1 * c2
            s = out.get(e)
            out[e] = c if s is None else s + c
    return {e: c for e, c in out.items() if c}


def _pscale(a, c):
    return {e: v * c for e, v in a.items()}


def poly_divexact(a, b):
    """Exact multivariate division a / b (lex order); None if b does not divide a."""
    if not b:
        raise ZeroDivisionError
    lead_b = max(b)
    cb = b[lead_b].inverse()
    q = {}
    r = dict(a)
    while r:
        lead_r = max(r)
        diff = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in diff):
            return None
        c = r[lead_r] * cb
        q[diff] = c
        r = _padd(r, _pneg(_pmul({diff: c}, b)))
    return q


def _to_uni(a, n):
    """Split on the last variable: {deg: poly in first n-1 vars}."""
    out = {}
    for e, c in a.items():
        out.setdefault(e[n - 1], {})[e[: n - 1]] = c
    return out


def _from_uni(u):
    out = {}
    for k, coeff in u.items():
        for e, c in coeff.items():
            out[e + (k,)] = c
    return out


def _uni_deg(u):
    return max(u) if u else -1


def _prem(f, g, n):
    """Pseudo-remainder of univariate-over-D polynomials (dicts deg -> poly)."""
    df, dg = _uni_deg(f), _uni_deg(g)
    lc = g[dg]
    r = dict(f)
    while r and _uni_deg(r) >= dg:
        dr = _uni_deg(r)
        lr = r[dr]
        new = {}
        for k, c in r.items():
            v = _pmul(c, lc)
            if v:
                new[k] = v
        for k, c in g.items():
            v = _pneg(_pmul(lr, c))
            kk = k + dr - dg
            s = _padd(new.get(kk, {}), v)
            if s:
                new[kk] = s
            else:
                new.pop(kk, None)
        r = new
    return r


def _monic(a):
    if not a:
        return a
    return _pscale(a, a[max(a)].inverse())


def poly_gcd(a, b, n):
    """gcd of polynomials in n variables over a field, normalised monic (lex)."""
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    if n == 0:
        c = next(iter(a.values()))
        return {(): c.one(c.d)}
    if n == 1:
        return _uni_gcd(a, b)
    fa, fb = _to_uni(a, n), _to_uni(b, n)
    ca = _content(fa, n - 1)
    cb = _content(fb, n - 1)
    c = poly_gcd(ca, cb, n - 1)
    pa = {k: poly_divexact(v, ca) for k, v in fa.items()}
    pb = {k: poly_divexact(v, cb) for k, v in fb.items()}
    if _uni_deg(pa) < _uni_deg(pb):
        pa, pb = pb, pa
    while pb and _uni_deg(pb) > 0:
        r = _prem(pa, pb, n)
        pa, pb = pb, _primitive(r, n - 1)
    if pb:
        h = {0: {(0,) * (n - 1): c[max(c)].one(c[max(c)].d)}}
    else:
        h = _primitive(pa, n - 1)
    return _monic(_pmul(_from_uni(h), {e + (0,): v for e, v in c.items()}))


def _content(u, m):
    g = {}
    for coeff in u.values():
        g = poly_gcd(g, coeff, m)
        if len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _primitive(u, m):
    if not u:
        return u
    c = _content(u, m)
    return {k: poly_divexact(v, c) for k, v in u.items()}


def _uni_gcd(a, b):
    # univariate Euclid over the coefficient field; keys are 1-tuples
    def to_list(p):
        deg = max(e[0] for e in p)
        zero = next(iter(p.values()))
        zero = zero - zero
        out = [zero] * (deg + 1)
        for e, c in p.items():
            out[e[0]] = c
        return out

    x, y = to_list(a), to_list(b)
    while y:
        x, y = y, uni_divmod(x, y)[1]
    return _monic({(i,): c for i, c in enumerate(x) if c})


def uni_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def uni_divmod(a, b):
    """Division with remainder for coefficient lists (ascending degree)."""
    a = list(a)
    if len(a) < len(b):
        return [], uni_trim(a)
    inv = b[-1].inverse()
    q = [None] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                if bj:
                    a[i + j] = a[i + j] - c * bj
    return uni_trim(q), uni_trim(a[: len(b) - 1])


# ---------------------------------------------------------------------------
# public gcd and normalisation

def _integer_content(p):
    """gcd of numerators / lcm of denominators when all coefficients are rational."""
    if not all(c.is_rational() for c in p.terms.values()):
        return None
    num, den = 0, 1
    for c in p.terms.values():
        q = c.coeffs[0]
        num = igcd(num, q.numerator)
        den = ilcm(den, q.denominator)
    return Fraction(num, den)


def laurent_gcd(ps):
    """Greatest common divisor of Laurent polynomials over Q(zeta_d).

    The scalar ambiguity is fixed as follows: the result is made monic in
    lex order; if it then has rational coefficients it is rescaled to a
    primitive integer polynomial times the gcd of the integer contents of
    the (rational) inputs.  The gcd of an empty or all-zero list is 0.
    """
    ps = list(ps)
    if not ps:
        raise ValueError("laurent_gcd needs at least one polynomial to fix the ring")
    vars, d = ps[0].vars, ps[0].d
    for p in ps:
        ps[0]._check(p)
    nonzero = [p for p in ps if p]
    if not nonzero:
        return LaurentPoly.zero(vars, d)
    n = len(vars)
    g = {}
    for p in nonzero:
        g = poly_gcd(g, _shift_terms(p.terms, p.min_exponents(), -1), n)
        if len(g) == 1:
            break
    result = LaurentPoly._raw(vars, d, g)
    content = _integer_content(result)
    if content is not None:
        result = result.scale(Cyclo.rational(d, 1 / content))
        contents = [_integer_content(p) for p in nonzero]
        if all(c is not None for c in contents):
            num = 0
            for c in contents:
                num = igcd(num, c.numerator) if c.denominator == 1 else num
            if num > 1:
                result = result.scale(Cyclo.rational(d, num))
    return result


def _coeff_key(c):
    return tuple(c.coeffs)


def unit_normalize(p):
    """Canonical representative of the orbit of p under +-zeta^j * monomial.

    Exponents are shifted so each variable's minimum is 0; among the 2d
    rotations the one whose coefficient sequence, read from the highest
    term down, is lexicographically largest is chosen (so d = 1 results
    have a positive leading coefficient).
    """
    if not p:
        return p
    base = p.shift(tuple(-m for m in p.min_exponents()))
    best = None
    best_key = None
    for j in range(p.d):
        root = Cyclo.root(p.d, j)
        for sign in (1, -1):
            cand = base.scale(root * sign)
            key = tuple(_coeff_key(c) for _, c in sorted(cand.terms.items(), reverse=True))
            if best_key is None or key > best_key:
                best, best_key = cand, key
    return best


def unit_equivalent(p, q):
    p._check(q)
    return unit_normalize(p) == unit_normalize(q)


def laurent_arith(p, q, op):
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")
