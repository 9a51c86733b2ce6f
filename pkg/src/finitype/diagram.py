"""Oriented knot/link diagrams in PD form, with exact structural operations.

A diagram is a list of crossings.  Each crossing stores its four arc labels
counterclockwise starting from the incoming under-strand, plus a sign:

    X[a,b,c,d]   a = incoming under-arc, c = outgoing under-arc,
                 b,d = the over-strand; for a positive crossing the
                 over-strand runs d -> b, for a negative one b -> d.

Equivalently, a crossing is positive when the outgoing over-strand sees the
incoming under-strand on its right.  Arc labels are positive integers; every
label appears exactly twice (once incoming, once outgoing).  Crossingless
components ("free loops") are carried as a count, declared in PD text by a
``components=k arcs=m`` preamble.

Nothing here checks planarity; diagrams are purely combinatorial and all
downstream invariants are computed from the combinatorics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "PDError",
    "PDSyntaxError",
    "PDArcError",
    "PDOrientationError",
    "GaussError",
    "Crossing",
    "Diagram",
    "SingularDiagram",
    "FormalSum",
    "parse_pd",
    "serialize_pd",
    "parse_gauss",
    "to_gauss",
    "switch_crossing",
    "mirror",
    "mark_singular",
    "load_table",
]


class PDError(ValueError):
    """Base class for diagram parsing/validation failures."""


class PDSyntaxError(PDError):
    """Malformed PD text (bad token, bad preamble)."""


class PDArcError(PDError):
    """Arc labels do not form a valid diagram (label count wrong, etc.)."""


class PDOrientationError(PDError):
    """No consistent orientation of the arcs exists."""


class GaussError(PDError):
    """Malformed or inconsistent Gauss code."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: slots counterclockwise from the incoming under-arc."""

    slots: tuple[int, int, int, int]
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise PDError(f"crossing sign must be +-1, got {self.sign}")
        if len(self.slots) != 4:
            raise PDError("crossing needs exactly 4 slots")

    @property
    def under_in(self) -> int:
        return self.slots[0]

    @property
    def under_out(self) -> int:
        return self.slots[2]

    @property
    def over_in(self) -> int:
        return self.slots[3] if self.sign > 0 else self.slots[1]

    @property
    def over_out(self) -> int:
        return self.slots[1] if self.sign > 0 else self.slots[3]

    def incoming(self) -> tuple[int, int]:
        return (self.under_in, self.over_in)

    def outgoing(self) -> tuple[int, int]:
        return (self.under_out, self.over_out)

    def token(self) -> str:
        a, b, c, d = self.slots
        return f"X[{a},{b},{c},{d}]"

    def relabel(self, mapping: dict[int, int]) -> "Crossing":
        return Crossing(tuple(mapping[s] for s in self.slots), self.sign)

    def switched(self) -> "Crossing":
        """Exchange over- and under-strand.

        The new incoming under-arc is the old incoming over-arc; slots stay
        counterclockwise, so the quad rotates and the sign flips.
        """
        a, b, c, d = self.slots
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), +1)


class Diagram:
    """An oriented link diagram: crossings plus crossingless free loops.

    Validation happens on construction: every arc label must occur exactly
    twice, once as an incoming slot and once as an outgoing slot.  Component
    structure and writhe are precomputed.
    """

    __slots__ = ("crossings", "free_loops", "components", "arc_component", "writhe")

    def __init__(self, crossings: Sequence[Crossing], free_loops: int = 0):
        self.crossings: tuple[Crossing, ...] = tuple(crossings)
        if free_loops < 0:
            raise PDArcError("negative free loop count")
        self.free_loops = free_loops
        self._validate_arcs()
        self.components: tuple[tuple[int, ...], ...] = self._trace_components()
        self.arc_component: dict[int, int] = {
            arc: ci for ci, comp in enumerate(self.components) for arc in comp
        }
        self.writhe = sum(x.sign for x in self.crossings)

    # -- validation and structure -------------------------------------

    def _validate_arcs(self) -> None:
        seen_in: dict[int, int] = {}
        seen_out: dict[int, int] = {}
        counts: dict[int, int] = {}
        for idx, x in enumerate(self.crossings):
            for s in x.slots:
                if not isinstance(s, int) or s <= 0:
                    raise PDArcError(f"arc labels must be positive integers, got {s!r}")
                counts[s] = counts.get(s, 0) + 1
            for s in x.incoming():
                if s in seen_in:
                    raise PDOrientationError(
                        f"arc {s} is incoming at two crossings ({seen_in[s]} and {idx})"
                    )
                seen_in[s] = idx
            for s in x.outgoing():
                if s in seen_out:
                    raise PDOrientationError(
                        f"arc {s} is outgoing at two crossings ({seen_out[s]} and {idx})"
                    )
                seen_out[s] = idx
        for arc, n in counts.items():
            if n != 2:
                raise PDArcError(f"arc {arc} occurs {n} times, expected exactly 2")
        for arc in counts:
            if arc not in seen_in or arc not in seen_out:
                raise PDOrientationError(f"arc {arc} is not oriented consistently")

    def _trace_components(self) -> tuple[tuple[int, ...], ...]:
        # successor of an arc = the outgoing arc of the same strand at the
        # crossing where it comes in
        succ: dict[int, int] = {}
        for x in self.crossings:
            succ[x.under_in] = x.under_out
            succ[x.over_in] = x.over_out
        comps = []
        left = set(succ)
        while left:
            start = min(left)
            cycle = [start]
            left.discard(start)
            cur = succ[start]
            while cur != start:
                cycle.append(cur)
                left.discard(cur)
                cur = succ[cur]
            comps.append(tuple(cycle))
        comps.sort(key=lambda cyc: min(cyc))
        return tuple(comps)

    # -- basic queries -------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    def arcs(self) -> list[int]:
        return sorted({s for x in self.crossings for s in x.slots})

    def is_knot(self) -> bool:
        return self.n_components == 1

    def crossing_components(self, i: int) -> tuple[int, int]:
        """(under-strand component, over-strand component) of crossing i."""
        x = self.crossings[i]
        return (self.arc_component[x.under_in], self.arc_component[x.over_in])

    def is_connected(self) -> bool:
        """Connectivity of the 4-valent diagram graph (free loops split)."""
        if self.free_loops:
            return self.n_crossings == 0 and self.free_loops == 1
        if not self.crossings:
            return True  # empty diagram; vacuous
        comp_of = self.arc_component
        # union components that share a crossing
        parent = list(range(len(self.components)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for x in self.crossings:
            a = find(comp_of[x.under_in])
            b = find(comp_of[x.over_in])
            parent[a] = b
        roots = {find(i) for i in range(len(self.components))}
        return len(roots) == 1

    # -- transformation helpers ---------------------------------------

    def relabeled(self, mapping: dict[int, int]) -> "Diagram":
        return Diagram([x.relabel(mapping) for x in self.crossings], self.free_loops)

    def with_crossing(self, i: int, replacement: Crossing) -> "Diagram":
        xs = list(self.crossings)
        xs[i] = replacement
        return Diagram(xs, self.free_loops)

    # -- canonical form ------------------------------------------------

    def _relabelings(self) -> Iterator[dict[int, int]]:
        """All arc relabelings from cyclic start choices, component order kept."""
        if not self.components:
            yield {}
            return

        def choices(ci: int) -> Iterator[tuple[int, ...]]:
            comp = self.components[ci]
            for k in range(len(comp)):
                yield comp[k:] + comp[:k]

        def rec(ci: int, acc: list[int]) -> Iterator[dict[int, int]]:
            if ci == len(self.components):
                yield {arc: i + 1 for i, arc in enumerate(acc)}
                return
            for rot in choices(ci):
                yield from rec(ci + 1, acc + list(rot))

        yield from rec(0, [])

    def canonical(self) -> "Diagram":
        """The canonical representative: minimal serialization over cyclic
        arc relabelings (component order preserved)."""
        best = None
        best_d = None
        for mapping in self._relabelings():
            cand = self.relabeled(mapping)
            cand = Diagram(
                sorted(cand.crossings, key=lambda x: x.slots), cand.free_loops
            )
            s = serialize_pd(cand)
            if best is None or s < best:
                best, best_d = s, cand
        return best_d if best_d is not None else self

    def canonical_key(self) -> str:
        return serialize_pd(self.canonical())

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"Diagram({serialize_pd(self)!r})"


# ---------------------------------------------------------------------------
# PD text format


_COMPONENTS_RE = re.compile(r"^components=(\d+)$")
_ARCS_RE = re.compile(r"^arcs=(\d+)$")
_X_TOKEN_RE = re.compile(r"^X\[(\d+),(\d+),(\d+),(\d+)\]$")
_D_TOKEN_RE = re.compile(r"^D\[(\d+),(\d+),(\d+),(\d+)\]$")


def _split_tokens(text: str) -> tuple[tuple[int, int] | None, list[str]]:
    """Separate the optional two leading preamble tokens from the body."""
    tokens: list[str] = []
    for ln in text.strip().splitlines():
        tokens.extend(ln.split("#", 1)[0].split())
    preamble: tuple[int, int] | None = None
    if tokens and tokens[0].startswith("components="):
        if len(tokens) < 2:
            raise PDSyntaxError("preamble must read 'components=k arcs=m'")
        mc, ma = _COMPONENTS_RE.match(tokens[0]), _ARCS_RE.match(tokens[1])
        if not mc or not ma:
            raise PDSyntaxError("preamble must read 'components=k arcs=m'")
        preamble = (int(mc.group(1)), int(ma.group(1)))
        tokens = tokens[2:]
    for tok in tokens:
        if tok.startswith(("components=", "arcs=")):
            raise PDSyntaxError("preamble tokens are only allowed at the start")
    return preamble, tokens


def _parse_quads(tokens: list[str], allow_marks: bool = False):
    quads: list[tuple[int, int, int, int]] = []
    marks: list[int] = []
    for tok in tokens:
        m = _X_TOKEN_RE.match(tok)
        if m:
            quads.append(tuple(int(g) for g in m.groups()))
            continue
        m = _D_TOKEN_RE.match(tok)
        if m and allow_marks:
            marks.append(len(quads))
            quads.append(tuple(int(g) for g in m.groups()))
            continue
        raise PDSyntaxError(f"malformed PD token {tok!r}")
    return quads, marks


def _infer_signs(quads: list[tuple[int, int, int, int]]) -> list[int]:
    """Assign crossing signs so every arc is once-incoming, once-outgoing.

    Slots a (index 0) and c (index 2) are forced in/out; for slot b the arc
    is incoming iff the sign is negative, for slot d iff positive.  This is
    a parity constraint system which we solve by propagation; components
    with no forcing constraint get a deterministic default.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, q in enumerate(quads):
        for si, arc in enumerate(q):
            occ.setdefault(arc, []).append((ci, si))
    for arc, places in occ.items():
        if len(places) != 2:
            raise PDArcError(f"arc {arc} occurs {len(places)} times, expected exactly 2")

    # x[ci] = True  <=>  sign +1.  Slot direction as function of x:
    #   slot 0: IN (const), slot 2: OUT (const),
    #   slot 1 (b): IN iff not x, slot 3 (d): IN iff x.
    n = len(quads)
    x: list[bool | None] = [None] * n
    # constraints: unit assignments and parity edges
    units: list[tuple[int, bool]] = []
    edges: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(n)}

    def var_of(ci: int, si: int):
        # returns None for const slots, else (ci, invert) with IN == x ^ invert
        if si == 0 or si == 2:
            return None
        return (ci, si == 1)  # slot1: IN iff x is False -> invert=True

    for arc, ((c1, s1), (c2, s2)) in occ.items():
        v1, v2 = var_of(c1, s1), var_of(c2, s2)
        in1 = s1 == 0
        in2 = s2 == 0
        if v1 is None and v2 is None:
            if in1 == in2:
                raise PDOrientationError(
                    f"arc {arc} has conflicting forced directions"
                )
        elif v1 is None or v2 is None:
            const_in = in1 if v1 is None else in2
            (ci, inv) = v2 if v1 is None else v1
            # need var direction != const: IN(var) = not const_in
            # IN(var) = x[ci] ^ inv  =>  x[ci] = (not const_in) ^ inv
            units.append((ci, (not const_in) ^ inv))
        else:
            (ca, ia), (cb, ib) = v1, v2
            # (x[ca]^ia) != (x[cb]^ib)  =>  x[ca] ^ x[cb] = True ^ ia ^ ib
            parity = ia == ib
            edges[ca].append((cb, parity))
            edges[cb].append((ca, parity))

    from collections import deque

    def assign(start: int, value: bool) -> None:
        queue = deque([start])
        if x[start] is None:
            x[start] = value
        elif x[start] != value:
            raise PDOrientationError("inconsistent crossing orientation system")
        while queue:
            i = queue.popleft()
            for j, parity in edges[i]:
                want = x[i] ^ parity
                if x[j] is None:
                    x[j] = want
                    queue.append(j)
                elif x[j] != want:
                    raise PDOrientationError(
                        "inconsistent crossing orientation system"
                    )

    for ci, val in units:
        assign(ci, val)
    for ci in range(n):
        if x[ci] is None:
            # no under-strand forcing reaches this crossing; fix a default
            assign(ci, True)
    return [+1 if v else -1 for v in x]


def parse_pd(text: str) -> Diagram:
    """Parse PD text into a validated diagram.

    Raises:
        PDSyntaxError: malformed token or preamble.
        PDArcError: arc labels that do not occur exactly twice.
        PDOrientationError: no consistent orientation assignment.
    """
    preamble, tokens = _split_tokens(text)
    quads, _ = _parse_quads(tokens)
    signs = _infer_signs(quads)
    crossings = [Crossing(q, s) for q, s in zip(quads, signs)]
    d = Diagram(crossings, 0)
    free = 0
    if preamble is not None:
        ncomp, narcs = preamble
        if narcs != 2 * len(quads):
            raise PDSyntaxError(
                f"preamble declares {narcs} arcs but tokens define {2 * len(quads)}"
            )
        traced = len(d.components)
        if ncomp < traced:
            raise PDSyntaxError(
                f"preamble declares {ncomp} components but crossings trace {traced}"
            )
        free = ncomp - traced
    return Diagram(crossings, free)


def serialize_pd(d: Diagram) -> str:
    """Serialize a diagram; parse_pd(serialize_pd(d)) reproduces d exactly."""
    head = f"components={d.n_components} arcs={2 * d.n_crossings}"
    toks = " ".join(x.token() for x in d.crossings)
    return f"{head} {toks}".rstrip()


# ---------------------------------------------------------------------------
# Gauss code


_GAUSS_TOKEN_RE = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(text: str) -> Diagram:
    """Parse a signed Gauss code such as ``O1+U2+O3+U1+O2+U3+``.

    Tokens may also be whitespace separated.  Each crossing id must appear
    exactly once as O and once as U, with the same sign on both tokens.
    """
    body = "".join(text.split())
    pos = 0
    toks: list[tuple[str, int, int]] = []
    for m in _GAUSS_TOKEN_RE.finditer(body):
        if m.start() != pos:
            raise GaussError(f"malformed Gauss code near {body[pos:m.start()]!r}")
        toks.append((m.group(1), int(m.group(2)), +1 if m.group(3) == "+" else -1))
        pos = m.end()
    if pos != len(body):
        raise GaussError(f"malformed Gauss code near {body[pos:]!r}")
    if not toks:
        raise GaussError("empty Gauss code")

    byid: dict[int, dict[str, tuple[int, int]]] = {}
    for p, (kind, cid, sign) in enumerate(toks):
        slot = byid.setdefault(cid, {})
        if kind in slot:
            raise GaussError(f"crossing {cid} passed twice as {kind}")
        slot[kind] = (p, sign)
    for cid, slot in byid.items():
        if set(slot) != {"O", "U"}:
            raise GaussError(f"crossing {cid} lacks an O or U passage")
        if slot["O"][1] != slot["U"][1]:
            raise GaussError(f"crossing {cid} has mismatched signs on O and U")

    n = len(toks)

    def arc_in(p: int) -> int:
        return p if p >= 1 else n

    def arc_out(p: int) -> int:
        return p + 1 if p + 1 <= n else 1

    crossings = []
    for cid in sorted(byid):
        (po, sign), (pu, _) = byid[cid]["O"], byid[cid]["U"]
        a, c = arc_in(pu), arc_out(pu)
        oi, oo = arc_in(po), arc_out(po)
        if sign > 0:
            quad = (a, oo, c, oi)
        else:
            quad = (a, oi, c, oo)
        crossings.append(Crossing(quad, sign))
    return Diagram(crossings, 0)


def to_gauss(d: Diagram) -> str:
    """Write the Gauss code of a knot diagram (single component)."""
    if d.n_components != 1 or d.free_loops:
        raise PDError("Gauss codes are only emitted for knots")
    if not d.crossings:
        return ""
    passage: dict[int, tuple[str, int, int]] = {}
    for i, x in enumerate(d.crossings):
        passage[x.under_in] = ("U", i, x.sign)
        passage[x.over_in] = ("O", i, x.sign)
    out = []
    for arc in d.components[0]:
        kind, i, sign = passage[arc]
        out.append(f"{kind}{i + 1}{'+' if sign > 0 else '-'}")
    return "".join(out)


# ---------------------------------------------------------------------------
# crossing switch, mirror, singular marking


def switch_crossing(d: Diagram, i: int) -> Diagram:
    """Exchange over/under at crossing i (an involution)."""
    if not 0 <= i < d.n_crossings:
        raise IndexError(f"crossing index {i} out of range")
    return d.with_crossing(i, d.crossings[i].switched())


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing."""
    out = d
    for i in range(d.n_crossings):
        out = switch_crossing(out, i)
    return out


class SingularDiagram:
    """A diagram with a subset of crossings marked as double points.

    A marked crossing remembers the transversal strands and the orientation
    but, semantically, no over/under choice: the canonical form erases it.
    The stored crossing acts as a bookkeeping resolution.
    """

    __slots__ = ("diagram", "marked")

    def __init__(self, diagram: Diagram, marked: Iterable[int]):
        marked = frozenset(marked)
        for i in marked:
            if not 0 <= i < diagram.n_crossings:
                raise IndexError(f"marked crossing {i} out of range")
        self.diagram = diagram
        self.marked = marked

    @property
    def n_singular(self) -> int:
        return len(self.marked)

    def resolved(self, signs: dict[int, int]) -> Diagram:
        """Resolve every marked double point with the given sign (+1/-1)."""
        if set(signs) != set(self.marked):
            raise ValueError("resolution must cover exactly the marked set")
        out = self.diagram
        for i, s in signs.items():
            if out.crossings[i].sign != s:
                out = switch_crossing(out, i)
        return out

    def canonical_key(self) -> str:
        best = None
        for mapping in self.diagram._relabelings():
            toks = []
            for i, x in enumerate(self.diagram.crossings):
                q = tuple(mapping[s] for s in x.slots)
                if i in self.marked:
                    rots = [q[k:] + q[:k] for k in range(4)]
                    q = min(rots)
                    toks.append("D[%d,%d,%d,%d]" % q)
                else:
                    toks.append("X[%d,%d,%d,%d]" % q)
            s = (
                f"components={self.diagram.n_components} "
                f"arcs={2 * self.diagram.n_crossings} " + " ".join(sorted(toks))
            )
            if best is None or s < best:
                best = s
        return best if best is not None else "components=1 arcs=0"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SingularDiagram)
            and self.canonical_key() == other.canonical_key()
        )

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"SingularDiagram({serialize_pd(self.diagram)!r}, marked={sorted(self.marked)})"


def mark_singular(d: Diagram, indices: Iterable[int]) -> SingularDiagram:
    """Mark the given crossings of a diagram as double points."""
    return SingularDiagram(d, indices)


# ---------------------------------------------------------------------------
# formal sums


class FormalSum:
    """A finite formal linear combination with rational coefficients.

    Keys are objects exposing ``canonical_key()``; terms with equal keys are
    merged and zero coefficients dropped, so sums cancel exactly.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[object, Fraction]] = ()):
        merged: dict[str, tuple[object, Fraction]] = {}
        for obj, coeff in terms:
            coeff = Fraction(coeff)
            key = obj.canonical_key()
            if key in merged:
                coeff = merged[key][1] + coeff
            if coeff == 0:
                merged.pop(key, None)
            else:
                merged[key] = (obj, coeff)
        self._terms = merged

    @classmethod
    def single(cls, obj, coeff=1) -> "FormalSum":
        return cls([(obj, Fraction(coeff))])

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    def terms(self) -> list[tuple[object, Fraction]]:
        return [self._terms[k] for k in sorted(self._terms)]

    def coefficient(self, obj) -> Fraction:
        entry = self._terms.get(obj.canonical_key())
        return entry[1] if entry else Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(list(self._terms.values()) + list(other._terms.values()))

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scale(-1)

    def scale(self, c) -> "FormalSum":
        c = Fraction(c)
        return FormalSum([(o, k * c) for o, k in self._terms.values()])

    def map_terms(self, fn: Callable[[object], "FormalSum"]) -> "FormalSum":
        """Linear extension of a generator-to-sum map."""
        out = FormalSum()
        for obj, coeff in self._terms.values():
            out = out + fn(obj).scale(coeff)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return {k: v for k, (_, v) in self._terms.items()} == {
            k: v for k, (_, v) in other._terms.items()
        }

    def __repr__(self):
        inner = " ".join(f"{coeff}*[{key[:40]}...]" for key, (_, coeff) in sorted(self._terms.items()))
        return f"FormalSum({inner or '0'})"


# ---------------------------------------------------------------------------
# bundled table


def load_table(text: str) -> dict[str, Diagram]:
    """Parse a ``name<TAB>pdcode`` table file body into diagrams."""
    out: dict[str, Diagram] = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].rstrip()
        if not ln.strip():
            continue
        if "\t" not in ln:
            raise PDSyntaxError(f"table line without tab separator: {ln!r}")
        name, code = ln.split("\t", 1)
        name = name.strip()
        if name in out:
            raise PDSyntaxError(f"duplicate table entry {name!r}")
        out[name] = parse_pd(code)
    return out
