"""Exact arithmetic in the cyclotomic field Q(zeta_d).

Elements are stored as rational coefficient vectors of length phi(d) in the
power basis 1, zeta, ..., zeta^(phi(d)-1), i.e. as residues modulo the d-th
cyclotomic polynomial.
"""

from fractions import Fraction
from functools import lru_cache


def _poly_divmod_int(num, den):
    """Divide integer coefficient lists (ascending) with a monic divisor."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, b in enumerate(den):
                num[i + j] -= c * b
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d):
    """Return Phi_d as a tuple of integer coefficients, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if d < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(e))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(d):
    return len(cyclotomic_polynomial(d)) - 1


def _reduce(coeffs, d):
    phi = cyclotomic_polynomial(d)
    n = len(phi) - 1
    c = [Fraction(v) for v in coeffs]
    for i in range(len(c) - 1, n - 1, -1):
        top = c[i]
        if top:
            for j in range(n + 1):
                c[i - n + j] -= top * phi[j]
    c = c[:n]
    c.extend([Fraction(0)] * (n - len(c)))
    return tuple(c)


def _fpoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _fpoly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _fpoly_trim(q), _fpoly_trim(a[: len(b) - 1])


def _fpoly_sub_mul(a, q, b):
    """a - q*b for Fraction coefficient lists."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _fpoly_trim(out)


class Cyclo:
    """An element of Q(zeta_d).

    Immutable; supports +, -, *, / and ** with integer exponents.
    """

    __slots__ = ("d", "coeffs", "_hash")

    def __init__(self, d, coeffs=(), reduced=False):
        self.d = d
        self.coeffs = tuple(coeffs) if reduced else _reduce(coeffs, d)
        self._hash = None

    @classmethod
    def rational(cls, d, value):
        n = euler_phi(d)
        return cls(d, (Fraction(value),) + (Fraction(0),) * (n - 1), reduced=True)

    @classmethod
    def zero(cls, d):
        return cls.rational(d, 0)

    @classmethod
    def one(cls, d):
        return cls.rational(d, 1)

    @classmethod
    def root(cls, d, j=1):
        """zeta_d ** j for any integer j."""
        j %= d
        return cls(d, [0] * j + [1])

    def _check(self, other):
        if self.d != other.d:
            raise ValueError(f"mismatched cyclotomic orders {self.d} and {other.d}")

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(self.d, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.d, tuple(-a for a in self.coeffs), True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo(self.d, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return Cyclo(self.d, (a[0] * b[0],), True)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return Cyclo(self.d, prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.d)
        if len(self.coeffs) == 1:
            return Cyclo(self.d, (1 / self.coeffs[0],), True)
        # extended Euclid: find s with s*self = 1 mod Phi_d
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.d)]
        r0, r1 = phi, _fpoly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub_mul(s0, q, s1)
        c = r1[0]
        return Cyclo(self.d, [v / c for v in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo.one(self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.d == other.d and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Cyclo({self.d}, {self})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
                continue
            mono = f"z{self.d}" if j == 1 else f"z{self.d}^{j}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text if len(parts) == 1 else "(" + text + ")"


def cyclo_arith(a, b, op):
    """Field operation dispatcher: op is 'add', 'mul' or 'inv' (b ignored)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")
