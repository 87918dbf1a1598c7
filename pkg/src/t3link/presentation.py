"""Fundamental-group presentation of a link complement in T^3, Tietze
simplification, component homology classes and first homology."""

from dataclasses import dataclass, field
from .algebra.smith import IntMatrix, smith_normal_form
from .diagram import HomologyClass

TORUS = ("x", "y", "z")


class InconsistencyError(RuntimeError):
    """Two independent computations of the same invariant disagree."""


# ---------------------------------------------------------------------------
# free words: tuples of (generator, +1/-1), freely reduced

def reduce_word(letters):
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word(*parts):
    """Concatenate words / generator names (``"x"`` or ``"x^-1"``) and reduce."""
    letters = []
    for p in parts:
        if isinstance(p, str):
            name, _, exp = p.partition("^")
            letters.append((name, int(exp) if exp else 1))
        else:
            letters.extend(p)
    return reduce_word(letters)


def inverse(w):
    return tuple((g, -e) for g, e in reversed(w))


def power(w, k):
    if k < 0:
        return power(inverse(w), -k)
    return reduce_word(list(w) * k)


def commutator(a, b):
    """a b a^-1 b^-1 for generator names."""
    return ((a, 1), (b, 1), (a, -1), (b, -1))


def render_word(w):
    if not w:
        return "1"
    return "".join(g if e == 1 else f"{g}^-1" for g, e in w)


def substitute(w, g, image):
    letters = []
    for h, e in w:
        if h == g:
            letters.extend(image if e == 1 else inverse(image))
        else:
            letters.append((h, e))
    return reduce_word(letters)


def exponent_sums(w, gens):
    idx = {g: i for i, g in enumerate(gens)}
    row = [0] * len(gens)
    for g, e in w:
        row[idx[g]] += e
    return row


# ---------------------------------------------------------------------------
# arcs

@dataclass(frozen=True)
class Arc:
    component: int
    start: int  # index of the cutting event the arc leaves from, -1 if closed
    end: int  # index of the cutting event the arc runs into, -1 if closed
    labels: tuple  # generator names carried by the arc
    generator: str


def _after_label(ev):
    if ev.kind == "u":
        return None
    prime = "" if ev.sign > 0 else "'"
    return f"{ev.kind}{ev.index}{prime}"


def _before_label(ev):
    if ev.kind == "u":
        return None
    prime = "'" if ev.sign > 0 else ""
    return f"{ev.kind}{ev.index}{prime}"


def extract_arcs(d):
    """Cut every component at under-crossings and boundary events.

    Returns the arc list plus lookups ``over_arc[c]``, ``under_in[c]`` and
    ``under_out[c]`` giving arc indices for every crossing.
    """
    arcs = []
    over_arc, under_in, under_out = {}, {}, {}
    free_count = 0
    for ci, comp in enumerate(d.components):
        cuts = [p for p, ev in enumerate(comp) if ev.kind == "u" or ev.is_boundary]
        if not cuts:
            free_count += 1
            arcs.append(Arc(ci, -1, -1, (), f"a{free_count}"))
            for ev in comp:
                if ev.kind == "o":
                    over_arc[ev.index] = len(arcs) - 1
            continue
        n = len(comp)
        for k, start in enumerate(cuts):
            end = cuts[(k + 1) % len(cuts)]
            labels = tuple(lab for lab in (_after_label(comp[start]), _before_label(comp[end]))
                           if lab is not None)
            if labels:
                name = labels[0]
            else:
                free_count += 1
                name = f"a{free_count}"
            ai = len(arcs)
            arcs.append(Arc(ci, start, end, labels, name))
            if comp[start].kind == "u":
                under_out[comp[start].index] = ai
            if comp[end].kind == "u":
                under_in[comp[end].index] = ai
            p = (start + 1) % n
            while p != end:
                if comp[p].kind == "o":
                    over_arc[comp[p].index] = ai
                p = (p + 1) % n
    return arcs, over_arc, under_in, under_out


# ---------------------------------------------------------------------------
# presentations

ROLE_ORDER = {"torus": 0, "x": 1, "y": 2, "z": 3, "arc": 4}


def _role(name):
    if name in TORUS:
        return "torus"
    kind = name[0]
    return "arc" if kind == "a" else kind


def _gen_key(name):
    role = _role(name)
    if role == "torus":
        return (0, TORUS.index(name), 0)
    digits = name[1:].rstrip("'")
    return (ROLE_ORDER[role], int(digits), name.endswith("'"))


def role_tag(name):
    """Human role tag: torus, wall_x, wall_x_prime, ..., vertex, arc."""
    role = _role(name)
    if role in ("torus", "arc"):
        return role
    base = {"x": "wall_x", "y": "wall_y", "z": "vertex"}[role]
    return base + ("_prime" if name.endswith("'") else "")


@dataclass(frozen=True)
class Relation:
    family: str  # 'W', 'Q', 'T', 'arc'
    word: tuple

    def __str__(self):
        return render_word(self.word)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple
    eps: tuple = ()
    nu: tuple = ()
    tau: tuple = ()
    gamma: tuple = ()
    component_of: dict = field(default_factory=dict, compare=False, hash=False)
    torus: bool = True

    def roles(self):
        return {g: role_tag(g) for g in self.generators}

    def render(self):
        lines = ["generators: " + ", ".join(self.generators)]
        for r in self.relations:
            lines.append(f"[{r.family}] {render_word(r.word)}")
        return "\n".join(lines)

    def to_json(self):
        return {
            "generators": [{"name": g, "role": role_tag(g)} for g in self.generators],
            "relations": [{"family": r.family, "word": render_word(r.word)}
                          for r in self.relations],
            "eps": list(self.eps),
            "nu": list(self.nu),
            "tau": list(self.tau),
            "gamma": [render_word(w) for w in self.gamma],
        }


def _signs_by_position(d, kind):
    out = {}
    for _, _, ev in d.events():
        if ev.kind == kind:
            out[ev.index] = ev.sign
    return tuple(out[k] for k in sorted(out))


def build_presentation(d):
    arcs, over_arc, under_in, under_out = extract_arcs(d)
    eps = _signs_by_position(d, "x")
    nu = _signs_by_position(d, "y")
    tau = _signs_by_position(d, "z")

    # gamma_1 = 1, gamma_{k+1} = z_k^{tau_k} gamma_k
    gamma = [()]
    for k, t in enumerate(tau, 1):
        gamma.append(word(((f"z{k}", t),), gamma[-1]))
    big_gamma = gamma[-1]

    component_of = {g: None for g in TORUS}
    names = set(TORUS)
    for a in arcs:
        for lab in a.labels or (a.generator,):
            names.add(lab)
            component_of[lab] = a.component
    generators = tuple(sorted(names, key=_gen_key))

    relations = []
    for a in arcs:
        if len(a.labels) == 2 and a.labels[0] != a.labels[1]:
            relations.append(Relation("arc", word(a.labels[0], a.labels[1] + "^-1")))
    for c, s in d.crossings:
        o = arcs[over_arc[c]].generator
        ui = arcs[under_in[c]].generator
        uo = arcs[under_out[c]].generator
        conj = word(((o, s),), ui, ((o, -s),))
        relations.append(Relation("W", word(uo, inverse(conj))))
    ginv = inverse(big_gamma)
    for i in range(1, len(eps) + 1):
        rhs = word("y", ginv, f"x{i}", big_gamma, "y^-1")
        relations.append(Relation("Q", word(f"x{i}'", inverse(rhs))))
    for j in range(1, len(nu) + 1):
        rhs = word("x^-1", ginv, f"y{j}", big_gamma, "x")
        relations.append(Relation("Q", word(f"y{j}'", inverse(rhs))))
    for k in range(1, len(tau) + 1):
        g = gamma[k - 1]
        rhs = word(g, "z^-1", inverse(g), f"z{k}", g, "z", inverse(g))
        relations.append(Relation("Q", word(f"z{k}'", inverse(rhs))))

    def product(kind, signs):
        return word(*[((f"{kind}{i}", s),) for i, s in enumerate(signs, 1)])

    relations.append(Relation("T", word(commutator("z", "x"), inverse(product("x", eps)))))
    relations.append(Relation("T", word(commutator("y", "x"), inverse(product("z", tau)))))
    relations.append(Relation("T", word(commutator("y", "z"), inverse(product("y", nu)))))
    return Presentation(generators, tuple(relations), eps, nu, tau, tuple(gamma), component_of)


def classical_presentation(d):
    """Wirtinger presentation of a local diagram viewed as a link in S^3."""
    if not d.is_local():
        raise ValueError("classical presentation needs a local diagram")
    arcs, over_arc, under_in, under_out = extract_arcs(d)
    relations = []
    for c, s in d.crossings:
        o = arcs[over_arc[c]].generator
        ui = arcs[under_in[c]].generator
        uo = arcs[under_out[c]].generator
        relations.append(Relation("W", word(uo, inverse(word(((o, s),), ui, ((o, -s),))))))
    gens = tuple(a.generator for a in arcs)
    return Presentation(gens, tuple(relations),
                        component_of={a.generator: a.component for a in arcs}, torus=False)


# ---------------------------------------------------------------------------
# Tietze simplification

def _solve(w, g):
    """If g occurs exactly once in w, return v with g = v; else None."""
    hits = [i for i, (h, _) in enumerate(w) if h == g]
    if len(hits) != 1:
        return None
    i = hits[0]
    e = w[i][1]
    a, b = w[:i], w[i + 1:]
    # a g^e b = 1  =>  g^e = a^-1 b^-1
    v = word(inverse(a), inverse(b))
    return v if e == 1 else inverse(v)


def _eliminate(gens, rels, comp, idx, g, v):
    gens = tuple(h for h in gens if h != g)
    new = []
    for j, r in enumerate(rels):
        if j == idx:
            continue
        w = substitute(r.word, g, v)
        if w:
            new.append(Relation(r.family, w))
    comp = {h: c for h, c in comp.items() if h != g}
    return gens, tuple(new), comp


def _total_length(rels):
    return sum(len(r.word) for r in rels)


def tietze_simplify(p, max_growth=2):
    """Eliminate generators defined by a single relation g = w.

    Order: primed boundary generators through their Q relation, then
    arc-identity relations of the form g = h (the last eligible generator in
    generator order goes), then the other arc and Wirtinger relations
    greedily by resulting length, stopping
    before the total relator length exceeds ``max_growth`` times its value
    at that point.  x, y, z are kept.
    """
    gens, rels, comp = p.generators, p.relations, dict(p.component_of)
    keep = set(TORUS)

    # primed generators via their defining Q relation
    i = 0
    while i < len(rels):
        r = rels[i]
        if r.family == "Q":
            g = r.word[0][0]
            v = _solve(r.word, g)
            if v is not None and g.endswith("'"):
                gens, rels, comp = _eliminate(gens, rels, comp, i, g, v)
                continue
        i += 1

    # arc identities g = h never lengthen the presentation
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(rels):
            if r.family != "arc":
                continue
            for g in sorted({h for h, _ in r.word if h not in keep}, key=_gen_key,
                            reverse=True):
                v = _solve(r.word, g)
                if v is not None and len(v) == 1:
                    gens, rels, comp = _eliminate(gens, rels, comp, i, g, v)
                    changed = True
                    break
            if changed:
                break

    # remaining arc and Wirtinger eliminations, cheapest first, while the total length stays
    # within a fixed multiple of its starting value
    limit = max_growth * _total_length(rels)
    while True:
        best = None
        for i, r in enumerate(rels):
            if r.family not in ("W", "arc"):
                continue
            for g in {h for h, _ in r.word if h not in keep}:
                v = _solve(r.word, g)
                if v is None:
                    continue
                occ = sum(1 for j, q in enumerate(rels) if j != i for h, _ in q.word if h == g)
                cost = _total_length(rels) - len(r.word) + occ * (len(v) - 1)
                key = (cost, i, tuple(-x if isinstance(x, int) else x for x in _gen_key(g)))
                if best is None or key < best[0]:
                    best = (key, i, g, v)
        if best is None or best[0][0] > limit:
            break
        _, i, g, v = best
        gens, rels, comp = _eliminate(gens, rels, comp, i, g, v)
    return Presentation(gens, rels, p.eps, p.nu, p.tau, p.gamma, comp, p.torus)


# ---------------------------------------------------------------------------
# homology

def homology_class(d, component):
    if not 0 <= component < len(d.components):
        raise IndexError(f"component {component} out of range")
    delta = sigma = xi = 0
    for ev in d.components[component]:
        if ev.kind == "x":
            delta += ev.sign
        elif ev.kind == "y":
            sigma += ev.sign
        elif ev.kind == "z":
            xi -= ev.sign
    return HomologyClass(delta, sigma, xi)


@dataclass(frozen=True)
class HomologyDecomposition:
    """H_1 = Z^free_rank + sum Z/torsion[i].

    ``abel_map`` sends each generator to (free coordinates, torsion
    coordinates); ``basis`` maps the intrinsic generators x, y, z, m1..m_w
    (torus loops and component meridians) the same way.
    """

    free_rank: int
    torsion: tuple
    abel_map: dict = field(compare=False, hash=False)
    basis: dict = field(compare=False, hash=False)
    classes: tuple = field(compare=False, default=())

    @property
    def var_names(self):
        return tuple(f"t{i}" for i in range(1, self.free_rank + 1))

    def image(self, w):
        """Image of a free word: (free exponent vector, torsion vector mod orders)."""
        free = [0] * self.free_rank
        tors = [0] * len(self.torsion)
        for g, e in w:
            f, t = self.abel_map[g]
            for i, v in enumerate(f):
                free[i] += e * v
            for i, v in enumerate(t):
                tors[i] += e * v
        return tuple(free), tuple(v % m for v, m in zip(tors, self.torsion))

    def render(self):
        parts = [f"Z^{self.free_rank}" if self.free_rank != 1 else "Z"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self):
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "classes": [list(c.as_tuple()) for c in self.classes],
            "abel_map": {g: {"free": list(f), "torsion": list(t)}
                         for g, (f, t) in sorted(self.abel_map.items())},
        }


def lemma_decomposition(classes):
    """Closed form from component classes: Z^3 + Z^w / <rows delta, sigma, xi>."""
    w = len(classes)
    if w == 0:
        return 3, ()
    M = [[c.delta for c in classes], [c.sigma for c in classes], [c.xi for c in classes]]
    factors = smith_normal_form(M).S.diagonal()
    free = 3 + (w - len(factors)) + sum(1 for f in factors if f == 0)
    return free, tuple(f for f in factors if f > 1)


def relation_matrix(p):
    return [exponent_sums(r.word, p.generators) for r in p.relations]


def snf_decomposition(p):
    """Free rank and torsion of the abelianised presentation."""
    rows = relation_matrix(p)
    n = len(p.generators)
    if not rows:
        return n, ()
    factors = smith_normal_form(IntMatrix.from_rows(rows, n)).S.diagonal()
    free = n - sum(1 for f in factors if f)
    return free, tuple(f for f in factors if f > 1)


def _intrinsic_basis(classes):
    """Coordinates of x, y, z and the meridians m1..m_w in Z^free + torsion.

    The meridian block is put in Smith form; x, y, z are the first three free
    coordinates.  Depends only on the component classes.
    """
    w = len(classes)
    basis = {"x": ((1, 0, 0), ()), "y": ((0, 1, 0), ()), "z": ((0, 0, 1), ())}
    if w == 0:
        return 3, (), basis
    M = [[c.delta for c in classes], [c.sigma for c in classes], [c.xi for c in classes]]
    snf = smith_normal_form(M)
    V = snf.V.to_rows()
    diag = snf.S.diagonal() + [0] * (w - 3 if w > 3 else 0)
    free_idx = [i for i in range(w) if diag[i] == 0]
    tors_idx = [i for i in range(w) if diag[i] > 1]
    free_rank = 3 + len(free_idx)
    torsion = tuple(diag[i] for i in tors_idx)
    # v -> v V carries rowspace(M) onto rowspace(S), so m_j has row j of V
    for j in range(w):
        f = tuple([0, 0, 0] + [V[j][i] for i in free_idx])
        t = tuple(V[j][i] % diag[i] for i in tors_idx)
        basis[f"m{j + 1}"] = (f, t)
    for key, (f, t) in list(basis.items()):
        if len(f) < free_rank:
            basis[key] = (f + (0,) * (free_rank - len(f)), t or (0,) * len(torsion))
    return free_rank, torsion, basis


def first_homology(d, presentation=None):
    """H_1 of the link complement, checked two ways.

    The closed form from component classes must agree with the Smith form
    of the abelianised relation matrix; the abelianisation map is expressed
    in the intrinsic basis of torus loops and component meridians so that it
    is the same for every diagram of the link.
    """
    classes = tuple(homology_class(d, i) for i in range(len(d.components)))
    lemma = lemma_decomposition(classes)
    p = presentation if presentation is not None else build_presentation(d)
    snf = snf_decomposition(p)
    if lemma != snf:
        raise InconsistencyError(f"closed form {lemma} disagrees with Smith form {snf}")
    free_rank, torsion, basis = _intrinsic_basis(classes)
    if (free_rank, torsion) != lemma:
        raise InconsistencyError("intrinsic basis disagrees with the closed form")
    abel = {}
    for g in p.generators:
        c = p.component_of.get(g)
        abel[g] = basis[g] if c is None else basis[f"m{c + 1}"]
    h = HomologyDecomposition(free_rank, torsion, abel, basis, classes)
    for r in p.relations:
        f, t = h.image(r.word)
        if any(f) or any(t):
            raise InconsistencyError(f"relation {render_word(r.word)} survives abelianisation")
    return h


def abelian_map_for(h, p):
    """Re-target an existing decomposition at another presentation of the link."""
    abel = {}
    for g in p.generators:
        c = p.component_of.get(g)
        abel[g] = h.basis[g] if c is None else h.basis[f"m{c + 1}"]
    return HomologyDecomposition(h.free_rank, h.torsion, abel, h.basis, h.classes)
