"""Fox free differential calculus and the (twisted) Alexander matrix."""

from dataclasses import dataclass
from math import lcm

from .algebra.cyclotomic import Cyclo
from .algebra.laurent import LaurentPoly
from .presentation import reduce_word, render_word


class GroupRingElem:
    """Element of the integer group ring of a free group.

    Stored as {reduced word: nonzero int}.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = reduce_word(w)
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def of(cls, w, c=1):
        return cls({tuple(w): c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElem(out)

    def __neg__(self):
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.terms.items()})
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = reduce_word(u + v)
                out[w] = out.get(w, 0) + a * b
        return GroupRingElem(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GroupRingElem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0])):
            body = render_word(w)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def fox_derivative(w, g):
    """d w / d g in the free group ring."""
    out = {}
    prefix = []
    for h, e in w:
        if h == g:
            if e == 1:
                key = reduce_word(prefix)
                out[key] = out.get(key, 0) + 1
            else:
                key = reduce_word(prefix + [(g, -1)])
                out[key] = out.get(key, 0) - 1
        prefix.append((h, e))
    return GroupRingElem(out)


def jacobian(p):
    return [[fox_derivative(r.word, g) for g in p.generators] for r in p.relations]


@dataclass(frozen=True)
class TwistCharacter:
    """Character of the torsion subgroup: the generator of the i-th torsion
    factor goes to zeta_d ** exponents[i]."""

    d: int = 1
    exponents: tuple = ()

    @classmethod
    def trivial(cls, torsion=()):
        return cls(1, (0,) * len(torsion))

    @classmethod
    def from_factors(cls, torsion, assignment):
        """Build from {factor order: exponent}; orders are matched to the
        torsion factors in divisibility order, unmentioned factors get 0."""
        torsion = tuple(torsion)
        d = lcm(*torsion) if torsion else 1
        exps = [0] * len(torsion)
        used = set()
        for f, e in assignment.items():
            idx = [i for i, t in enumerate(torsion) if t == f and i not in used]
            if not idx:
                raise ValueError(f"no torsion factor Z/{f} in {list(torsion) or 'trivial group'}")
            used.add(idx[0])
            exps[idx[0]] = e
        sigma = cls(d, tuple(exps))
        sigma.check(torsion)
        return sigma

    def is_trivial(self):
        return not any(e % self.d for e in self.exponents)

    def check(self, torsion):
        if len(self.exponents) != len(torsion):
            raise ValueError(f"character has {len(self.exponents)} exponents, group has "
                             f"{len(torsion)} torsion factors")
        for f, e in zip(torsion, self.exponents):
            if (e * f) % self.d:
                raise ValueError(f"zeta_{self.d}^{e} has order not dividing {f}")

    def exponent(self, tors):
        return sum(e * v for e, v in zip(self.exponents, tors)) % self.d


def abelianize_entry(e, h, sigma, vars=None):
    """Image of a group-ring element in Q(zeta_d)[t_1^+-1, ..., t_r^+-1]."""
    sigma.check(h.torsion)
    vars = h.var_names if vars is None else vars
    d = sigma.d
    terms = {}
    for w, c in e.terms.items():
        free, tors = h.image(w)
        coeff = Cyclo.root(d, sigma.exponent(tors)) * c
        terms[free] = terms.get(free, Cyclo.zero(d)) + coeff
    return LaurentPoly(vars, d, terms)


@dataclass(frozen=True)
class AlexanderMatrix:
    entries: tuple  # tuple of row tuples of LaurentPoly
    row_labels: tuple
    col_labels: tuple
    vars: tuple
    d: int = 1

    def rows(self):
        return [list(r) for r in self.entries]

    def render(self):
        width = [max(len(str(r[j])) for r in self.entries) for j in range(len(self.col_labels))] \
            if self.entries else []
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.col_labels, width))]
        for r in self.entries:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, width)))
        return "\n".join(lines)


def abelian_fox_row(w, generators, h, sigma):
    """Row of abelianised Fox derivatives of w, computed in one pass.

    Equal to abelianize_entry(fox_derivative(w, g), h, sigma) for each g,
    but linear in the word length.
    """
    d = sigma.d
    image = {g: (h.abel_map[g][0], sigma.exponent(h.abel_map[g][1])) for g in generators}
    free, zexp = (0,) * h.free_rank, 0
    acc = {g: {} for g in generators}
    for g, e in w:
        f, j = image[g]
        if e == -1:
            free = tuple(a - b for a, b in zip(free, f))
            zexp -= j
        slot = acc[g]
        key = (free, zexp % d)
        slot[key] = slot.get(key, 0) + e
        if e == 1:
            free = tuple(a + b for a, b in zip(free, f))
            zexp += j
    row = []
    for g in generators:
        terms = {}
        for (mono, j), c in acc[g].items():
            if c:
                terms[mono] = terms.get(mono, Cyclo.zero(d)) + Cyclo.root(d, j) * c
        row.append(LaurentPoly(h.var_names, d, terms))
    return row


def alexander_matrix(p, h, sigma=None):
    """Abelianised (and twisted) Jacobian of the presentation."""
    sigma = sigma or TwistCharacter.trivial(h.torsion)
    sigma.check(h.torsion)
    entries = tuple(tuple(abelian_fox_row(r.word, p.generators, h, sigma))
                    for r in p.relations)
    return AlexanderMatrix(entries, tuple(render_word(r.word) for r in p.relations),
                           tuple(p.generators), h.var_names, sigma.d)
