"""Elementary ideals and (twisted) Alexander polynomials of links in T^3."""

from dataclasses import dataclass, field
from math import comb

from .algebra.laurent import LaurentPoly, laurent_gcd, unit_normalize
from .algebra.laurent import unit_equivalent as _unit_equivalent
from .algebra.matrices import size_k_minors, univariate_minor_gcd
from .fox import TwistCharacter, alexander_matrix
from .presentation import (
    HomologyDecomposition,
    InconsistencyError,
    build_presentation,
    classical_presentation,
    first_homology,
    tietze_simplify,
)

# above this many minors the dual-path check is skipped for collapsed matrices
CROSS_CHECK_LIMIT = 64


def elementary_ideal_generators(A, k):
    """Generators of E_k: all (n - k)-minors, n = number of columns.

    Too few rows gives the zero ideal (empty list); n - k <= 0 gives the
    unit ideal.
    """
    rows = A.rows() if hasattr(A, "rows") and callable(A.rows) else [list(r) for r in A]
    n = len(A.col_labels) if hasattr(A, "col_labels") else (len(rows[0]) if rows else 0)
    if k < 0:
        raise ValueError("elementary ideal index must be nonnegative")
    size = n - k
    if size <= 0:
        vars = A.vars if hasattr(A, "vars") else rows[0][0].vars
        d = A.d if hasattr(A, "d") else rows[0][0].d
        return [LaurentPoly.const(vars, 1, d)]
    if size > len(rows):
        return []
    return size_k_minors(rows, size)


def collapse_specialize(p, spec=None, target="t"):
    """Send each variable v to target**spec[v] (default exponent 1)."""
    spec = spec or {}
    images = {v: LaurentPoly.var((target,), target, p.d) ** spec.get(v, 1) for v in p.vars}
    if not p.vars:
        return LaurentPoly((target,), p.d, {(0,): c for c in p.terms.values()})
    return p.substitute(images)


def unit_equivalent(p, q):
    """Equality up to +-zeta^j * monomial."""
    return _unit_equivalent(p, q)


def _monic(p):
    if not p:
        return p
    lead = p.terms[max(p.terms)]
    return p.scale(lead.inverse())


def field_normalize(p):
    """Fix the scalar: monic, then primitive integral when rational."""
    if not p:
        return p
    return laurent_gcd([_monic(p)])


@dataclass(frozen=True)
class AlexanderResult:
    raw: LaurentPoly
    canonical: LaurentPoly
    d: int
    vars: tuple
    pipeline: dict = field(default_factory=dict, compare=False, hash=False)

    def is_zero(self):
        return not self.raw

    def __str__(self):
        return str(self.canonical)

    def to_json(self):
        return {
            "polynomial": str(self.raw),
            "canonical": str(self.canonical),
            "d": self.d,
            "vars": list(self.vars),
            "pipeline": self.pipeline,
        }


def _delta_minors(rows, n):
    gens = size_k_minors(rows, n - 1)
    return laurent_gcd(gens)


def delta_from_matrix(A, method="auto"):
    """gcd of E_1 for an Alexander matrix, normalised by field_normalize.

    method: 'minors' enumerates all (n-1)-minors; 'smith' uses invariant
    factors (one variable only); 'auto' uses Smith form for one variable
    and cross-checks against minors when that is cheap.
    """
    rows = A.rows()
    n = len(A.col_labels)
    vars, d = A.vars, A.d
    if n <= 1:
        return LaurentPoly.const(vars, 1, d)
    if len(rows) < n - 1:
        return LaurentPoly.zero(vars, d)
    univariate = len(vars) == 1
    if method == "smith" or (method == "auto" and univariate):
        if not univariate:
            raise ValueError("Smith route needs a single variable; collapse first")
        fast = field_normalize(univariate_minor_gcd(rows, n - 1))
        if method == "auto" and comb(len(rows), n - 1) * n <= CROSS_CHECK_LIMIT:
            slow = field_normalize(_delta_minors(rows, n))
            if slow != fast:
                raise InconsistencyError(f"minor gcd {slow} disagrees with Smith route {fast}")
        return fast
    if method not in ("minors", "auto"):
        raise ValueError(f"unknown method {method!r}")
    return field_normalize(_delta_minors(rows, n))


def _collapse_matrix(A, spec):
    from .fox import AlexanderMatrix

    entries = tuple(tuple(collapse_specialize(x, spec) for x in row) for row in A.entries)
    return AlexanderMatrix(entries, A.row_labels, A.col_labels, ("t",), A.d)


def twisted_alexander(d, sigma=None, collapse=True, raw=False, method="auto"):
    """Twisted Alexander polynomial Delta^sigma of the link.

    ``collapse`` is True (every free variable to t), False (multivariable)
    or a dict of exponents.  ``raw`` skips Tietze simplification.
    """
    p = build_presentation(d)
    if not raw:
        p = tietze_simplify(p)
    h = first_homology(d, p)
    sigma = sigma or TwistCharacter.trivial(h.torsion)
    sigma.check(h.torsion)
    A = alexander_matrix(p, h, sigma)
    if collapse is not False:
        A = _collapse_matrix(A, None if collapse is True else collapse)
    delta = delta_from_matrix(A, method)
    info = {
        "generators": len(p.generators),
        "relations": len(p.relations),
        "homology": h.render(),
        "simplified": not raw,
    }
    return AlexanderResult(delta, unit_normalize(delta), sigma.d, A.vars, info)


def alexander_polynomial(d, collapse=True, raw=False, method="auto"):
    return twisted_alexander(d, None, collapse, raw, method)


def classical_homology(d):
    """H_1 of a link in S^3: one free meridian per component."""
    w = len(d.components)
    basis = {f"m{i + 1}": (tuple(int(i == j) for j in range(w)), ()) for i in range(w)}
    p = classical_presentation(d)
    abel = {g: basis[f"m{c + 1}"] for g, c in p.component_of.items()}
    return p, HomologyDecomposition(w, (), abel, basis, ())


def classical_alexander(d, method="minors"):
    """Classical one-variable Alexander polynomial of a local diagram."""
    p, h = classical_homology(d)
    A = _collapse_matrix(alexander_matrix(p, h), None)
    delta = delta_from_matrix(A, method)
    return AlexanderResult(delta, unit_normalize(delta), 1, ("t",),
                           {"generators": len(p.generators), "relations": len(p.relations)})


def render_polynomial(p):
    """Readable form of a canonical polynomial.

    One-variable polynomials with rational coefficients have their (t-1) and (t+1) factors
    pulled out, e.g. ``(t-1)^2*(1 - t + t^2)``; anything else is rendered
    with ascending exponents.
    """
    if not p or len(p.vars) != 1 or p.is_constant() \
            or not all(c.is_rational() for c in p.terms.values()):
        return str(p)
    v = p.vars[0]
    parts = []
    rest = p
    for label, root in ((f"({v}-1)", -1), (f"({v}+1)", 1)):
        f = LaurentPoly(p.vars, p.d, {(0,): root, (1,): 1})
        k = 0
        while not rest.is_constant() and f.divides(rest):
            rest = rest.exact_div(f)
            k += 1
        if k:
            parts.append(label if k == 1 else f"{label}^{k}")
    if not parts:
        return str(p)
    rest = unit_normalize(rest)
    if rest != 1:
        parts.append(f"({rest})" if len(rest.terms) > 1 else str(rest))
    return "*".join(parts)
