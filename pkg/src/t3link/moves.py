"""Generalised Reidemeister moves on event sequences and a seeded scrambler.

Sites are (component, position) pairs.  For insertions the position is a
gap (insert before that index); otherwise it is the index of the first
event of an adjacent pair.  Pairs never wrap around the end of a component.
"""

from dataclasses import dataclass
import random

from .diagram import Event, Over, Under, Vertex, check_diagram

VARIANTS = ("R1+", "R1-", "R2+", "R2-", "R3", "R4+", "R4-", "R5",
            "V1+", "V1-", "V2", "V3")
INSERTIONS = ("R1+", "R2+", "R4+", "V1+")


class MoveError(ValueError):
    """The move's pattern does not match the diagram at the given site."""


@dataclass(frozen=True)
class Move:
    variant: str
    sites: tuple
    sign: int = 0
    params: tuple = ()  # sorted (key, value) pairs

    def __post_init__(self):
        if self.variant == "V4":
            raise MoveError("V4 is a forbidden move and cannot be applied")
        if self.variant not in VARIANTS:
            raise MoveError(f"unknown move variant {self.variant!r}")
        object.__setattr__(self, "sites", tuple(tuple(s) for s in self.sites))
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def to_line(self):
        parts = [self.variant] + [f"{c}:{p}" for c, p in self.sites]
        if self.sign:
            parts.append("+" if self.sign > 0 else "-")
        for k, v in self.params:
            if k == "e":
                v = "+1" if v > 0 else "-1"
            parts.append(f"{k}={v}")
        return " ".join(parts)

    def __str__(self):
        return self.to_line()


def parse_move(line):
    words = line.split()
    if not words:
        raise MoveError("empty move line")
    variant, sites, sign, params = words[0], [], 0, {}
    for w in words[1:]:
        if w in ("+", "-"):
            sign = 1 if w == "+" else -1
        elif "=" in w:
            k, v = w.split("=", 1)
            params[k] = v if k in ("kind", "order") else int(v)
        elif ":" in w:
            c, p = w.split(":", 1)
            try:
                sites.append((int(c), int(p)))
            except ValueError:
                raise MoveError(f"bad site {w!r}") from None
        else:
            raise MoveError(f"bad move token {w!r}")
    return Move(variant, tuple(sites), sign, tuple(params.items()))


def serialize_log(moves):
    return "".join(m.to_line() + "\n" for m in moves)


def parse_log(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_move(line))
    return out


# ---------------------------------------------------------------------------
# helpers

def _comps(d):
    return [list(c) for c in d.components]


def _pair(d, site):
    c, p = site
    if not 0 <= c < len(d.components):
        raise MoveError(f"component {c} out of range")
    comp = d.components[c]
    if not 0 <= p < len(comp) - 1:
        raise MoveError(f"no adjacent pair at {c}:{p}")
    return comp[p], comp[p + 1]


def _gap(d, site):
    c, p = site
    if not 0 <= c < len(d.components):
        raise MoveError(f"component {c} out of range")
    if not 0 <= p <= len(d.components[c]):
        raise MoveError(f"position {p} out of range in component {c}")


def _find(d, kind, index):
    for c, p, ev in d.events():
        if ev.kind == kind and ev.index == index:
            return c, p
    raise MoveError(f"no event {kind}{index}")


def _shift_positions(comps, kind, start, delta):
    """Add delta to the index of every `kind` event with index >= start."""
    for comp in comps:
        for i, ev in enumerate(comp):
            if ev.kind == kind and ev.index >= start:
                comp[i] = Event(kind, ev.index + delta, ev.sign)


def _next_id(d):
    return max((c for c, _ in d.crossings), default=0) + 1


def _done(d, comps, crossings=None):
    return check_diagram(d.replace(crossings=crossings, components=comps))


# ---------------------------------------------------------------------------
# individual moves

def _r1_plus(d, m):
    (site,) = m.sites
    _gap(d, site)
    if m.sign not in (1, -1):
        raise MoveError("R1+ needs a crossing sign")
    k = _next_id(d)
    pair = [Over(k), Under(k)] if m.param("order", "ou") == "ou" else [Under(k), Over(k)]
    comps = _comps(d)
    comps[site[0]][site[1]:site[1]] = pair
    crossings = dict(d.crossings)
    crossings[k] = m.sign
    return _done(d, comps, crossings)


def _r1_minus(d, m):
    (site,) = m.sites
    a, b = _pair(d, site)
    if not (a.is_crossing and b.is_crossing and a.index == b.index and a.kind != b.kind):
        raise MoveError(f"R1-: no kink at {site[0]}:{site[1]}")
    comps = _comps(d)
    del comps[site[0]][site[1]:site[1] + 2]
    crossings = dict(d.crossings)
    del crossings[a.index]
    return _done(d, comps, crossings)


def _r2_plus(d, m):
    s1, s2 = m.sites
    _gap(d, s1)
    _gap(d, s2)
    if m.sign not in (1, -1):
        raise MoveError("R2+ needs a crossing sign")
    a = _next_id(d)
    b = a + 1
    comps = _comps(d)
    overs, unders = [Over(a), Over(b)], [Under(b), Under(a)]
    if s1[0] == s2[0] and s2[1] >= s1[1]:
        comps[s2[0]][s2[1]:s2[1]] = unders
        comps[s1[0]][s1[1]:s1[1]] = overs
    else:
        comps[s1[0]][s1[1]:s1[1]] = overs
        comps[s2[0]][s2[1]:s2[1]] = unders
    crossings = dict(d.crossings)
    crossings[a] = m.sign
    crossings[b] = -m.sign
    return _done(d, comps, crossings)


def _r2_minus(d, m):
    s1, s2 = m.sites
    oa, ob = _pair(d, s1)
    ub, ua = _pair(d, s2)
    if not (oa.kind == ob.kind == "o" and ub.kind == ua.kind == "u"
            and oa.index == ua.index and ob.index == ub.index and oa.index != ob.index):
        raise MoveError("R2-: pattern O(a)O(b) ... U(b)U(a) not found")
    if d.sign(oa.index) != -d.sign(ob.index):
        raise MoveError("R2-: crossings must have opposite signs")
    comps = _comps(d)
    for c, p in sorted([s1, s2], reverse=True):
        del comps[c][p:p + 2]
    crossings = dict(d.crossings)
    del crossings[oa.index]
    del crossings[ob.index]
    return _done(d, comps, crossings)


def _r3_match(d, t_site):
    """Return (m_site, b_site) if an R3 triangle has its top pair at t_site."""
    e1, e2 = _pair(d, t_site)
    if not (e1.kind == e2.kind == "o" and e1.index != e2.index):
        return None
    s = d.signs
    # before form: T=(Oa,Ob), M=(Ua,Oc), B=(Ub,Uc)
    a, b = e1.index, e2.index
    if s[a] == s[b]:
        ua, ub = _find(d, "u", a), _find(d, "u", b)
        comp_a, comp_b = d.components[ua[0]], d.components[ub[0]]
        if ua[1] + 1 < len(comp_a) and ub[1] + 1 < len(comp_b):
            oc, uc = comp_a[ua[1] + 1], comp_b[ub[1] + 1]
            if oc.kind == "o" and uc.kind == "u" and oc.index == uc.index \
                    and oc.index not in (a, b):
                return ua, ub
        # after form: T=(Ob,Oa), M=(Oc,Ua), B=(Uc,Ub) with a = e2, b = e1
        a, b = e2.index, e1.index
        ua, ub = _find(d, "u", a), _find(d, "u", b)
        if ua[1] >= 1 and ub[1] >= 1:
            oc = d.components[ua[0]][ua[1] - 1]
            uc = d.components[ub[0]][ub[1] - 1]
            if oc.kind == "o" and uc.kind == "u" and oc.index == uc.index \
                    and oc.index not in (a, b):
                return (ua[0], ua[1] - 1), (ub[0], ub[1] - 1)
    return None


def _swap_pairs(d, sites):
    comps = _comps(d)
    for c, p in sites:
        comps[c][p], comps[c][p + 1] = comps[c][p + 1], comps[c][p]
    return comps


def _r3(d, m):
    (t_site,) = m.sites[:1]
    found = _r3_match(d, t_site)
    if found is None or (len(m.sites) == 3 and tuple(m.sites[1:]) != found):
        raise MoveError(f"R3: no triangle with top pair at {t_site[0]}:{t_site[1]}")
    return _done(d, _swap_pairs(d, (t_site,) + found))


def _wall_pair_ok(a, b):
    return a.kind == b.kind and a.kind in ("x", "y") and a.sign == -b.sign \
        and abs(a.index - b.index) == 1


def _r4_plus(d, m):
    (site,) = m.sites
    _gap(d, site)
    kind, e, pos, flip = m.param("kind"), m.param("e"), m.param("pos"), m.param("flip", 0)
    if kind not in ("x", "y") or e not in (1, -1):
        raise MoveError("R4+ needs kind=x|y and e=+1|-1")
    n = d.count(kind)
    if pos is None or not 1 <= pos <= n + 1:
        raise MoveError(f"R4+: position must be in 1..{n + 1}")
    comps = _comps(d)
    _shift_positions(comps, kind, pos, 2)
    p1, p2 = (pos + 1, pos) if flip else (pos, pos + 1)
    comps[site[0]][site[1]:site[1]] = [Event(kind, p1, e), Event(kind, p2, -e)]
    return _done(d, comps)


def _r4_minus(d, m):
    (site,) = m.sites
    a, b = _pair(d, site)
    if not _wall_pair_ok(a, b):
        raise MoveError(f"R4-: no cancelling wall pair at {site[0]}:{site[1]}")
    comps = _comps(d)
    del comps[site[0]][site[1]:site[1] + 2]
    _shift_positions(comps, a.kind, max(a.index, b.index) + 1, -2)
    return _done(d, comps)


def _r5_match(d, p_site, q_site):
    """Check an R5 configuration; return (w1_site, w2_site) on success."""
    p0, p1 = _pair(d, p_site)
    q0, q1 = _pair(d, q_site)
    if p0.kind in ("x", "y") and p1.kind == "o":
        w1, oc, pattern_a = p0, p1, True
    elif p0.kind == "o" and p1.kind in ("x", "y"):
        w1, oc, pattern_a = p1, p0, False
    else:
        return None
    if q0.kind == w1.kind and q1.kind == "u":
        w2, uc, q_wall_first = q0, q1, True
    elif q0.kind == "u" and q1.kind == w1.kind:
        w2, uc, q_wall_first = q1, q0, False
    else:
        return None
    if uc.index != oc.index or abs(w1.index - w2.index) != 1:
        return None
    same = w1.sign == w2.sign
    if q_wall_first != (pattern_a == same):
        return None
    s = d.sign(oc.index)
    p_first = w1.index < w2.index
    if p_first != ((s * w2.sign == 1) == pattern_a):
        return None
    w1_site = (p_site[0], p_site[1] + (0 if pattern_a else 1))
    w2_site = (q_site[0], q_site[1] + (0 if q_wall_first else 1))
    return w1_site, w2_site


def _r5(d, m):
    p_site, q_site = m.sites
    found = _r5_match(d, p_site, q_site)
    if found is None:
        raise MoveError("R5: no crossing beside a matching wall-puncture pair")
    (c1, i1), (c2, i2) = found
    w1, w2 = d.components[c1][i1], d.components[c2][i2]
    comps = _swap_pairs(d, (p_site, q_site))
    # walls moved one step inside their pair; swap their puncture positions
    n1 = (c1, i1 + 1) if comps[c1][i1 + 1:i1 + 2] == [w1] else (c1, i1 - 1)
    n2 = (c2, i2 + 1) if comps[c2][i2 + 1:i2 + 2] == [w2] else (c2, i2 - 1)
    comps[n1[0]][n1[1]] = Event(w1.kind, w2.index, w1.sign)
    comps[n2[0]][n2[1]] = Event(w2.kind, w1.index, w2.sign)
    return _done(d, comps)


def _v1_plus(d, m):
    (site,) = m.sites
    _gap(d, site)
    pos, flip = m.param("pos"), m.param("flip", 0)
    n = d.count("z")
    if pos is None or not 1 <= pos <= n + 1:
        raise MoveError(f"V1+: position must be in 1..{n + 1}")
    comps = _comps(d)
    _shift_positions(comps, "z", pos, 2)
    k1, k2 = (pos + 1, pos) if flip else (pos, pos + 1)
    comps[site[0]][site[1]:site[1]] = [Vertex(-1, k1), Vertex(1, k2)]
    return _done(d, comps)


def _v1_minus(d, m):
    (site,) = m.sites
    a, b = _pair(d, site)
    if not (a.kind == b.kind == "z" and a.sign == -1 and b.sign == 1
            and abs(a.index - b.index) == 1):
        raise MoveError(f"V1-: no cancelling vertex pair at {site[0]}:{site[1]}")
    comps = _comps(d)
    del comps[site[0]][site[1]:site[1] + 2]
    _shift_positions(comps, "z", max(a.index, b.index) + 1, -2)
    return _done(d, comps)


def _v_transpose(d, m, partner):
    (site,) = m.sites
    a, b = _pair(d, site)
    kinds = {a.kind, b.kind}
    if "z" not in kinds or len(kinds) != 2 or not (kinds - {"z"}) <= partner:
        raise MoveError(f"{m.variant}: no vertex beside a matching event at {site[0]}:{site[1]}")
    return _done(d, _swap_pairs(d, (site,)))


_APPLY = {
    "R1+": _r1_plus,
    "R1-": _r1_minus,
    "R2+": _r2_plus,
    "R2-": _r2_minus,
    "R3": _r3,
    "R4+": _r4_plus,
    "R4-": _r4_minus,
    "R5": _r5,
    "V1+": _v1_plus,
    "V1-": _v1_minus,
    "V2": lambda d, m: _v_transpose(d, m, {"x", "y"}),
    "V3": lambda d, m: _v_transpose(d, m, {"o", "u"}),
}

_NSITES = {"R1+": 1, "R1-": 1, "R2+": 2, "R2-": 2, "R3": (1, 3), "R4+": 1, "R4-": 1,
           "R5": 2, "V1+": 1, "V1-": 1, "V2": 1, "V3": 1}


def apply_move(d, m):
    if isinstance(m, str):
        m = parse_move(m)
    want = _NSITES[m.variant]
    if len(m.sites) not in (want if isinstance(want, tuple) else (want,)):
        raise MoveError(f"{m.variant} takes {want} site(s), got {len(m.sites)}")
    return _APPLY[m.variant](d, m)


def inverse(m, d):
    """The move undoing m, where d is the diagram m is applied to."""
    v = m.variant
    if v in ("R3", "R5", "V2", "V3"):
        return m
    if v in ("R1+", "R4+", "V1+"):
        return Move(v[:-1] + "-", m.sites)
    if v == "R2+":
        (c1, p1), (c2, p2) = m.sites
        if c1 == c2:
            if p2 >= p1:
                return Move("R2-", ((c1, p1), (c2, p2 + 2)))
            return Move("R2-", ((c1, p1 + 2), (c2, p2)))
        return Move("R2-", m.sites)
    if v == "R1-":
        a, _ = _pair(d, m.sites[0])
        return Move("R1+", m.sites, d.sign(a.index), (("order", "ou" if a.kind == "o" else "uo"),))
    if v == "R2-":
        (c1, p1), (c2, p2) = m.sites
        oa, _ = _pair(d, m.sites[0])
        if c1 == c2:
            if p2 > p1:
                sites = ((c1, p1), (c2, p2 - 2))
            else:
                sites = ((c1, p1 - 2), (c2, p2))
        else:
            sites = m.sites
        return Move("R2+", sites, d.sign(oa.index))
    if v == "R4-":
        a, b = _pair(d, m.sites[0])
        lo = min(a.index, b.index)
        return Move("R4+", m.sites, 0, (("kind", a.kind), ("e", a.sign), ("pos", lo),
                                        ("flip", int(a.index != lo))))
    if v == "V1-":
        a, b = _pair(d, m.sites[0])
        lo = min(a.index, b.index)
        return Move("V1+", m.sites, 0, (("pos", lo), ("flip", int(a.index != lo))))
    raise MoveError(f"no inverse for {v}")


# ---------------------------------------------------------------------------
# enumeration and scrambling

def applicable_moves(d):
    """All applicable deletions and rewrites (not insertions), in a fixed order."""
    out = []
    pairs = [(c, p) for c, comp in enumerate(d.components) for p in range(len(comp) - 1)]
    for site in pairs:
        a, b = _pair(d, site)
        if a.is_crossing and b.is_crossing and a.index == b.index:
            out.append(Move("R1-", (site,)))
        if _wall_pair_ok(a, b):
            out.append(Move("R4-", (site,)))
        if a.kind == b.kind == "z" and a.sign == -1 and b.sign == 1 \
                and abs(a.index - b.index) == 1:
            out.append(Move("V1-", (site,)))
        kinds = {a.kind, b.kind}
        if "z" in kinds and len(kinds) == 2:
            other = (kinds - {"z"}).pop()
            out.append(Move("V2" if other in ("x", "y") else "V3", (site,)))
        if a.kind == b.kind == "o" and a.index != b.index:
            if d.sign(a.index) == -d.sign(b.index):
                ub = _find(d, "u", b.index)
                comp = d.components[ub[0]]
                if ub[1] + 1 < len(comp) and comp[ub[1] + 1] == Under(a.index):
                    out.append(Move("R2-", (site, ub)))
            found = _r3_match(d, site)
            if found:
                out.append(Move("R3", (site,) + found))
    for p_site in pairs:
        for q_site in pairs:
            if p_site != q_site and _r5_match(d, p_site, q_site):
                out.append(Move("R5", (p_site, q_site)))
    return out


def random_insertion(d, rng, variant):
    comps = d.components
    c = rng.randrange(len(comps))
    site = (c, rng.randint(0, len(comps[c])))
    if variant == "R1+":
        return Move("R1+", (site,), rng.choice((1, -1)), (("order", rng.choice(("ou", "uo"))),))
    if variant == "R2+":
        c2 = rng.randrange(len(comps))
        return Move("R2+", (site, (c2, rng.randint(0, len(comps[c2])))), rng.choice((1, -1)))
    if variant == "R4+":
        kind = rng.choice(("x", "y"))
        return Move("R4+", (site,), 0, (("kind", kind), ("e", rng.choice((1, -1))),
                                        ("pos", rng.randint(1, d.count(kind) + 1)),
                                        ("flip", rng.randint(0, 1))))
    if variant == "V1+":
        return Move("V1+", (site,), 0, (("pos", rng.randint(1, d.count("z") + 1)),
                                        ("flip", rng.randint(0, 1))))
    raise MoveError(f"{variant} is not an insertion")


# The vertex moves keep H_1 but not Delta under the gamma-conjugated vertex
# relations, so seeded scrambles use the R-moves unless asked otherwise.
REIDEMEISTER_VARIANTS = ("R1+", "R1-", "R2+", "R2-", "R3", "R4+", "R4-", "R5")
DEFAULT_VARIANTS = REIDEMEISTER_VARIANTS


def scramble(d, seed, steps, variants=DEFAULT_VARIANTS, max_events=40):
    """Apply `steps` random applicable moves; returns (diagram, move log).

    Randomness comes only from ``random.Random(seed)``.  Insertions are
    suppressed once the diagram has more than ``max_events`` events.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rng = random.Random(seed)
    log = []
    inserts = [v for v in INSERTIONS if v in variants]
    for _ in range(steps):
        size = sum(len(c) for c in d.components)
        others = [m for m in applicable_moves(d) if m.variant in variants]
        if others and (not inserts or size > max_events or rng.random() < 0.5):
            m = rng.choice(others)
        elif inserts:
            m = random_insertion(d, rng, rng.choice(inserts))
        else:
            m = random_insertion(d, rng, "R1+")
        d = apply_move(d, m)
        log.append(m)
    return d, log


def replay(d, moves):
    for m in moves:
        d = apply_move(d, m)
    return d
