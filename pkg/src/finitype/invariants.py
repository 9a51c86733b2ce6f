"""Exact polynomial invariants of oriented diagrams.

jones
    Kauffman bracket state sum over all 2^c smoothings, writhe-corrected,
    returned as a Laurent polynomial in q with the unknot normalized to 1.
conway
    Conway polynomial in z by the skein relation
    nabla(L+) - nabla(L-) = z * nabla(L0), with descending diagrams and
    split diagrams as base cases.
c2, j3
    The degree-2 coefficient of conway and the x^3 coefficient of
    jones(e^x); the first two nontrivial perturbative coefficients.
linking_matrix
    Symmetric matrix of pairwise linking numbers of link components.

All computations are exact (Fractions / integer-exponent Laurent maps).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .diagram import Diagram, FormalSum, switch_crossing
from .exact_math import LaurentPoly, laurent_substitute_exp

__all__ = [
    "InvariantError",
    "SkeinDepthError",
    "kauffman_bracket",
    "jones",
    "conway",
    "c2",
    "j3",
    "linking_matrix",
    "Invariant",
    "invariant_names",
    "get_invariant",
    "evaluate_on_sum",
]


class InvariantError(ValueError):
    """Raised when an invariant is evaluated outside its domain."""


class SkeinDepthError(InvariantError):
    """Skein recursion exceeded the configured depth cap."""


# ---------------------------------------------------------------------------
# Kauffman bracket / Jones


class _ArcUnion:
    def __init__(self, arcs):
        self.parent = {a: a for a in arcs}
        self.count = len(self.parent)

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


def kauffman_bracket(d: Diagram) -> tuple[LaurentPoly, int]:
    """Bracket polynomial in the variable A by full state enumeration.

    Returns (bracket, number of states visited); the state count is always
    exactly 2^c, which tests assert.
    """
    arcs = d.arcs()
    n = d.n_crossings
    delta = LaurentPoly("A", {2: Fraction(-1), -2: Fraction(-1)})
    total = LaurentPoly.zero("A")
    states = 0
    for mask in range(1 << n):
        states += 1
        uf = _ArcUnion(arcs)
        exp = 0
        for i, x in enumerate(d.crossings):
            a, b, c, dd = x.slots
            if mask >> i & 1:  # B-smoothing
                uf.union(a, dd)
                uf.union(b, c)
                exp -= 1
            else:  # A-smoothing
                uf.union(a, b)
                uf.union(c, dd)
                exp += 1
        loops = uf.count + d.free_loops
        total = total + (delta ** (loops - 1)).shift(exp)
    return total, states


def jones(d: Diagram) -> LaurentPoly:
    """Jones polynomial in q, unknot -> 1, via the writhe-corrected bracket.

    The substitution A = q^(-1/4) only lands in integer powers of q when the
    diagram has an odd number of components (in particular for knots); other
    inputs are rejected rather than returning fractional exponents.
    """
    bracket, _ = kauffman_bracket(d)
    w = d.writhe
    # (-A^3)^(-w) * bracket
    corr = LaurentPoly("A", {-3 * w: Fraction(-1) if w % 2 else Fraction(1)})
    f = corr * bracket
    terms = {}
    for e, c in f.terms.items():
        if e % 4 != 0:
            raise InvariantError(
                "jones value has fractional q-exponents "
                f"({d.n_components} components); only odd component counts supported"
            )
        terms[-e // 4] = c
    return LaurentPoly("q", terms)


# ---------------------------------------------------------------------------
# Conway polynomial


def _is_split(d: Diagram) -> bool:
    if d.free_loops:
        return d.n_crossings > 0 or d.free_loops > 1
    return not d.is_connected() if d.crossings else False


def _passages(d: Diagram, rotate: bool) -> list[tuple[int, bool]]:
    """Crossing passages in traversal order as (crossing index, is_over).

    With rotate=False every component starts at its minimal arc; with
    rotate=True at its maximal arc.  Either choice gives a valid skein
    resolution order; computing with both is a consistency check.
    """
    where: dict[int, tuple[int, bool]] = {}
    for i, x in enumerate(d.crossings):
        where[x.under_in] = (i, False)
        where[x.over_in] = (i, True)
    out = []
    for comp in d.components:
        comp = list(comp)
        if rotate:
            k = comp.index(max(comp))
            comp = comp[k:] + comp[:k]
        for arc in comp:
            out.append(where[arc])
    return out


def _first_bad(d: Diagram, rotate: bool) -> int | None:
    seen: set[int] = set()
    for i, over in _passages(d, rotate):
        if i not in seen:
            seen.add(i)
            if not over:
                return i
    return None


def _smooth_oriented(d: Diagram, i: int) -> Diagram:
    """Orientation-respecting smoothing of crossing i."""
    x = d.crossings[i]
    a, b, c, dd = x.slots
    arcs = d.arcs()
    uf = _ArcUnion(arcs)
    if x.sign > 0:
        uf.union(a, b)
        uf.union(dd, c)
    else:
        uf.union(a, dd)
        uf.union(b, c)
    rest = [y for j, y in enumerate(d.crossings) if j != i]
    used = {uf.find(s) for y in rest for s in y.slots}
    reps = {uf.find(arc) for arc in arcs}
    new_free = d.free_loops + len([r for r in reps if r not in used])
    relabel = {r: k + 1 for k, r in enumerate(sorted(used))}
    new_crossings = [y.relabel({s: relabel[uf.find(s)] for s in y.slots}) for y in rest]
    return Diagram(new_crossings, new_free)


def conway(d: Diagram, *, max_depth: int = 64, rotate: bool = False) -> LaurentPoly:
    """Conway polynomial in z.

    Base cases: split diagrams give 0, descending diagrams give 1 for a
    knot and 0 for a multi-component link.  One skein step walks the whole
    switch chain toward the descending diagram iteratively and recurses
    only into smoothings, so max_depth caps the smoothing depth (default
    64, far above the sizes this library targets).

    Raises:
        SkeinDepthError: the smoothing recursion exceeded max_depth.
    """
    z = LaurentPoly.monomial("z", 1)

    def nabla(cur: Diagram, depth: int) -> LaurentPoly:
        if depth > max_depth:
            raise SkeinDepthError(f"skein recursion exceeded depth cap {max_depth}")
        acc = LaurentPoly.zero("z")
        while True:
            if _is_split(cur):
                return acc
            bad = _first_bad(cur, rotate)
            if bad is None:
                if cur.n_components == 1:
                    return acc + LaurentPoly.constant("z", 1)
                return acc
            sign = cur.crossings[bad].sign
            smoothed = _smooth_oriented(cur, bad)
            acc = acc + z * nabla(smoothed, depth + 1).scale(sign)
            cur = switch_crossing(cur, bad)

    return nabla(d, 0)


# ---------------------------------------------------------------------------
# coefficient extractions


def c2(d: Diagram, **kw) -> Fraction:
    """Coefficient of z^2 in the Conway polynomial (knots only)."""
    if d.n_components != 1:
        raise InvariantError("c2 is defined for knots (single component)")
    return conway(d, **kw).coefficient(2)


def j3(d: Diagram) -> Fraction:
    """Coefficient of x^3 in jones evaluated at q = e^x (knots only)."""
    if d.n_components != 1:
        raise InvariantError("j3 is defined for knots (single component)")
    series = laurent_substitute_exp(jones(d), 3)
    return series.coefficient(3)


def linking_matrix(d: Diagram) -> list[list[int]]:
    """Pairwise linking numbers; entry (i,j) is half the signed sum of the
    crossings between components i and j.  Diagonal entries are 0."""
    if d.n_components < 2:
        raise InvariantError("linking matrix needs at least 2 components")
    n = len(d.components)
    if d.free_loops:
        n += d.free_loops  # free loops link nothing
    acc = [[0] * n for _ in range(n)]
    for i in range(d.n_crossings):
        cu, co = d.crossing_components(i)
        if cu != co:
            s = d.crossings[i].sign
            acc[cu][co] += s
            acc[co][cu] += s
    for i in range(n):
        for j in range(n):
            if acc[i][j] % 2:
                raise InvariantError("odd inter-component crossing sum")
            acc[i][j] //= 2
    return acc


# ---------------------------------------------------------------------------
# registry / linear extension


@dataclass(frozen=True)
class Invariant:
    """A named exact invariant with a zero element for linear extension."""

    name: str
    fn: Callable[[Diagram], object]
    zero: object
    knots_only: bool = False

    def __call__(self, d: Diagram):
        return self.fn(d)


_REGISTRY: dict[str, Invariant] = {}


def _register(inv: Invariant) -> Invariant:
    _REGISTRY[inv.name] = inv
    return inv


JONES = _register(Invariant("jones", jones, LaurentPoly.zero("q")))
CONWAY = _register(Invariant("conway", conway, LaurentPoly.zero("z")))
C2 = _register(Invariant("c2", c2, Fraction(0), knots_only=True))
J3 = _register(Invariant("j3", j3, Fraction(0), knots_only=True))


def invariant_names() -> list[str]:
    return sorted(_REGISTRY)


def get_invariant(name: str) -> Invariant:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise InvariantError(
            f"unknown invariant {name!r}; choose from {', '.join(invariant_names())}"
        ) from None


def evaluate_on_sum(inv: Invariant, s: FormalSum):
    """Linear extension: evaluate the invariant on a formal sum of diagrams."""
    acc = inv.zero
    for dgm, coeff in s.terms():
        val = inv.fn(dgm)
        if isinstance(val, LaurentPoly):
            acc = acc + val.scale(coeff)
        else:
            acc = acc + val * coeff
    return acc
