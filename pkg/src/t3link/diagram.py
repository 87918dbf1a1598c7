"""Combinatorial link diagrams in the 3-torus and the T3D text format.

A diagram is a set of signed crossings plus one cyclic event sequence per
link component.  Events are

* ``Over(c)`` / ``Under(c)``: the strand passes over / under crossing ``c``;
* ``WallX(e, k)``: the strand crosses the left/right edge at the k-th
  puncture; e = +1 means the arc after the event starts at the left edge;
* ``WallY(e, k)``: same for the bottom/top edge, e = +1 means the arc after
  starts at the bottom edge;
* ``Vertex(e, k)``: a vertex with poles, e = +1 means the arc after starts
  at the positive (ceiling) pole.

T3D format::

    t3d 1
    crossing 1 sign +
    component k : x+@1 o1 u1
"""

from dataclasses import dataclass, field
import re

BOUNDARY_KINDS = ("x", "y", "z")


@dataclass(frozen=True)
class Event:
    kind: str  # 'o', 'u', 'x', 'y', 'z'
    index: int  # crossing id, or puncture position / vertex index
    sign: int = 0  # +1/-1 for boundary events, 0 for crossing strands

    @property
    def is_crossing(self):
        return self.kind in ("o", "u")

    @property
    def is_boundary(self):
        return self.kind in BOUNDARY_KINDS

    def token(self):
        if self.is_crossing:
            return f"{self.kind}{self.index}"
        return f"{self.kind}{'+' if self.sign > 0 else '-'}@{self.index}"

    def __str__(self):
        return self.token()


def Over(c):
    return Event("o", c)


def Under(c):
    return Event("u", c)


def WallX(sign, pos):
    return Event("x", pos, sign)


def WallY(sign, pos):
    return Event("y", pos, sign)


def Vertex(sign, index):
    return Event("z", index, sign)


@dataclass(frozen=True)
class HomologyClass:
    delta: int
    sigma: int
    xi: int

    def as_tuple(self):
        return (self.delta, self.sigma, self.xi)

    def __str__(self):
        return f"({self.delta},{self.sigma},{self.xi})"


@dataclass(frozen=True)
class Diagram:
    """Immutable diagram.  ``crossings`` is a sorted tuple of (id, sign)."""

    crossings: tuple = ()
    components: tuple = ()
    names: tuple = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(sorted((int(c), int(s)) for c, s in
                                                          dict(self.crossings).items())))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))
        names = self.names
        if names is None or len(names) != len(self.components):
            names = tuple(f"c{i}" for i in range(len(self.components)))
        object.__setattr__(self, "names", tuple(names))

    @property
    def signs(self):
        return dict(self.crossings)

    def sign(self, c):
        return self.signs[c]

    def events(self):
        """Yield (component, position, event) over all events."""
        for i, comp in enumerate(self.components):
            for p, ev in enumerate(comp):
                yield i, p, ev

    def count(self, kind):
        return sum(1 for _, _, ev in self.events() if ev.kind == kind)

    def is_local(self):
        return not any(ev.is_boundary for _, _, ev in self.events())

    def replace(self, crossings=None, components=None, names=None):
        if names is None and (components is None or len(components) == len(self.components)):
            names = self.names
        return Diagram(
            self.crossings if crossings is None else crossings,
            self.components if components is None else components,
            names,
        )


class DiagramSyntaxError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DiagramValidationError(ValueError):
    def __init__(self, violations):
        super().__init__("invalid diagram: " + "; ".join(violations))
        self.violations = list(violations)


# ---------------------------------------------------------------------------
# validation

def validate_diagram(d):
    """List of human-readable invariant violations (empty when valid)."""
    problems = []
    signs = d.signs
    overs, unders = {}, {}
    for i, p, ev in d.events():
        if ev.is_crossing:
            table = overs if ev.kind == "o" else unders
            if ev.index in table:
                problems.append(f"crossing {ev.index}: duplicate {'over' if ev.kind == 'o' else 'under'}"
                                f" strand at component {i} position {p}")
            else:
                table[ev.index] = (i, p)
            if ev.index not in signs:
                problems.append(f"crossing {ev.index}: used at component {i} position {p}"
                                f" but not declared")
        elif ev.sign not in (1, -1):
            problems.append(f"component {i} position {p}: boundary sign must be +1 or -1")
        if ev.index < 1:
            problems.append(f"component {i} position {p}: index must be positive")
    for c, s in d.crossings:
        if s not in (1, -1):
            problems.append(f"crossing {c}: sign must be +1 or -1")
        if c not in overs and c not in unders:
            problems.append(f"crossing {c}: declared but unused")
        elif c not in unders:
            problems.append(f"crossing {c}: unmatched crossing, no under strand")
        elif c not in overs:
            problems.append(f"crossing {c}: unmatched crossing, no over strand")
    for kind, label in (("x", "WallX"), ("y", "WallY"), ("z", "Vertex")):
        seen = {}
        for i, p, ev in d.events():
            if ev.kind == kind:
                seen.setdefault(ev.index, []).append((i, p))
        for idx, where in sorted(seen.items()):
            if len(where) > 1:
                problems.append(f"{label} duplicate position {idx} at {where}")
        expected = set(range(1, len(seen) + 1))
        if set(seen) != expected:
            problems.append(f"{label} positions {sorted(seen)} are not exactly 1..{len(seen)}")
    return problems


def check_diagram(d):
    problems = validate_diagram(d)
    if problems:
        raise DiagramValidationError(problems)
    return d


# ---------------------------------------------------------------------------
# T3D text format

_EVENT_RE = re.compile(r"^(?:([ou])(\d+)|([xyz])([+-])@(\d+))$")


def _parse_event(tok, line, col):
    m = _EVENT_RE.match(tok)
    if not m:
        raise DiagramSyntaxError(f"bad event {tok!r}", line, col)
    if m.group(1):
        return Event(m.group(1), int(m.group(2)))
    return Event(m.group(3), int(m.group(5)), 1 if m.group(4) == "+" else -1)


def parse_diagram(text, validate=True):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    crossings = {}
    components = []
    names = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        words = line.split()
        if not header:
            if words != ["t3d", "1"]:
                raise DiagramSyntaxError("expected header 't3d 1'", lineno, col0)
            header = True
            continue
        if words[0] == "crossing":
            if len(words) != 4 or words[2] != "sign" or words[3] not in ("+", "-"):
                raise DiagramSyntaxError("expected 'crossing <id> sign <+|->'", lineno, col0)
            if not words[1].isdigit():
                raise DiagramSyntaxError(f"bad crossing id {words[1]!r}", lineno,
                                         line.index(words[1]) + 1)
            cid = int(words[1])
            if cid in crossings:
                raise DiagramSyntaxError(f"crossing {cid} declared twice", lineno, col0)
            crossings[cid] = 1 if words[3] == "+" else -1
        elif words[0] == "component":
            head, sep, rest = line.partition(":")
            hw = head.split()
            if not sep or len(hw) != 2:
                raise DiagramSyntaxError("expected 'component <name> : <events>'", lineno, col0)
            events = []
            offset = len(head) + 1
            for m in re.finditer(r"\S+", rest):
                events.append(_parse_event(m.group(), lineno, offset + m.start() + 1))
            components.append(events)
            names.append(hw[1])
        else:
            raise DiagramSyntaxError(f"unknown directive {words[0]!r}", lineno, col0)
    if not header:
        raise DiagramSyntaxError("missing header 't3d 1'", 1, 1)
    d = Diagram(crossings, components, names)
    return check_diagram(d) if validate else d


def serialize_diagram(d):
    lines = ["t3d 1"]
    for c, s in d.crossings:
        lines.append(f"crossing {c} sign {'+' if s > 0 else '-'}")
    for name, comp in zip(d.names, d.components):
        body = " ".join(ev.token() for ev in comp)
        lines.append(f"component {name} :" + (" " + body if body else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# construction helpers

def renumber_crossings(d, start=1):
    """Relabel crossings 1, 2, ... in order of first appearance."""
    mapping = {}
    for _, _, ev in d.events():
        if ev.is_crossing and ev.index not in mapping:
            mapping[ev.index] = start + len(mapping)
    for c, _ in d.crossings:
        mapping.setdefault(c, start + len(mapping))
    signs = d.signs
    comps = [[Event(ev.kind, mapping[ev.index]) if ev.is_crossing else ev for ev in comp]
             for comp in d.components]
    return Diagram({mapping[c]: s for c, s in signs.items()}, comps, d.names)


def connected_sum(base, comp, at, local, local_comp=0):
    """Splice a local diagram's component into ``base`` before position ``at``."""
    if not local.is_local():
        raise ValueError("connected sum needs a local diagram (no boundary events)")
    if not 0 <= comp < len(base.components):
        raise IndexError(f"component {comp} out of range")
    if not 0 <= at <= len(base.components[comp]):
        raise IndexError(f"position {at} out of range")
    if not 0 <= local_comp < len(local.components):
        raise IndexError(f"local component {local_comp} out of range")
    offset = max((c for c, _ in base.crossings), default=0)
    shifted = [[Event(ev.kind, ev.index + offset) for ev in c] for c in local.components]
    comps = [list(c) for c in base.components]
    comps[comp][at:at] = shifted[local_comp]
    names = list(base.names)
    for i, c in enumerate(shifted):
        if i != local_comp:
            comps.append(c)
            names.append(local.names[i])
    crossings = dict(base.crossings)
    crossings.update({c + offset: s for c, s in local.crossings})
    return check_diagram(Diagram(crossings, comps, names))


def _ln(n):
    return Diagram({}, [[WallX(1, i)] for i in range(1, n + 1)])


_FIXTURES = {
    "local_unknot": lambda: Diagram({}, [[]]),
    "local_trefoil": lambda: Diagram(
        {1: 1, 2: 1, 3: 1},
        [[Over(1), Under(2), Over(3), Under(1), Over(2), Under(3)]],
    ),
    "local_hopf": lambda: Diagram({1: 1, 2: 1}, [[Over(1), Under(2)], [Under(1), Over(2)]]),
    "U1": lambda: Diagram({}, [[WallX(1, 1)]]),
    "W2": lambda: Diagram({}, [[WallX(1, 1), WallX(1, 2)]]),
    "U1#trefoil": lambda: connected_sum(builtin_example("U1"), 0, 1,
                                        builtin_example("local_trefoil"), 0),
}

FIXTURE_NAMES = ("local_unknot", "local_trefoil", "local_hopf", "U1", "Ln(n)", "W2", "U1#trefoil")


def builtin_example(name):
    """Built-in fixture diagrams; ``Ln(n)`` is n parallel copies of U1."""
    m = re.fullmatch(r"Ln\((\d+)\)|L(\d+)", name)
    if m:
        n = int(m.group(1) or m.group(2))
        if n < 1:
            raise ValueError("Ln needs n >= 1")
        return _ln(n)
    try:
        return _FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
