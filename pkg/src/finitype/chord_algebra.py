"""Chord diagrams on a circle and the weight spaces they span.

A degree-n chord diagram is n chords with endpoints on an oriented
circle, up to rotation; concretely a double-occurrence word of length 2n
canonicalized as the lexicographically smallest rotation (chord ids
renamed in order of first appearance).  Reflections are *not* quotiented
out.

The degree-n weight space is the span of diagrams modulo the four-term
relations (and, in the unframed case, the framing-independence relations
that kill diagrams with an isolated chord).  Dimensions come from an
exact sparse rank computation over the rationals.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .exact_math import SparseMatrix

__all__ = [
    "ChordDiagram",
    "canonicalize",
    "enumerate_diagrams",
    "RelationSet",
    "generate_4t",
    "generate_fi",
    "WeightSpaceReport",
    "dim_a",
    "MAX_DEGREE",
]

MAX_DEGREE = 7


def _canonical_word(word: Sequence[int]) -> tuple[int, ...]:
    """Smallest rotation with ids renamed by first appearance."""
    size = len(word)
    if size == 0:
        return ()
    best = None
    for s in range(size):
        rename: dict[int, int] = {}
        out = []
        for k in range(size):
            c = word[(s + k) % size]
            if c not in rename:
                rename[c] = len(rename)
            out.append(rename[c])
        cand = tuple(out)
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class ChordDiagram:
    """Canonical double-occurrence word; construct via from_word/from_pairs."""

    word: tuple[int, ...]

    @classmethod
    def from_word(cls, word: Iterable[int]) -> "ChordDiagram":
        word = tuple(word)
        seen: dict[int, int] = {}
        for c in word:
            seen[c] = seen.get(c, 0) + 1
        if any(v != 2 for v in seen.values()):
            raise ValueError("every chord id must occur exactly twice")
        return cls(_canonical_word(word))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ChordDiagram":
        pairs = list(pairs)
        positions = [p for pair in pairs for p in pair]
        if sorted(positions) != list(range(2 * len(pairs))):
            raise ValueError(
                f"endpoints must be exactly 0..{2 * len(pairs) - 1}, "
                f"got {sorted(positions)}"
            )
        word = [0] * (2 * len(pairs))
        for cid, (i, j) in enumerate(pairs):
            word[i] = word[j] = cid
        return cls.from_word(word)

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Endpoint positions of each chord, in first-appearance order."""
        first: dict[int, int] = {}
        out: list[tuple[int, int]] = []
        for pos, c in enumerate(self.word):
            if c in first:
                out.append((first[c], pos))
            else:
                first[c] = pos
        return tuple(sorted(out))

    def has_isolated_chord(self) -> bool:
        """True if some chord's endpoints are cyclically adjacent."""
        size = len(self.word)
        return any(
            self.word[k] == self.word[(k + 1) % size] for k in range(size)
        )

    def __str__(self) -> str:
        return "".join(string.ascii_uppercase[c] for c in self.word) or "(empty)"

    def canonical_key(self) -> str:
        return str(self)

    def __lt__(self, other: "ChordDiagram") -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)


def canonicalize(word: Iterable[int]) -> ChordDiagram:
    """Canonical form of a raw double-occurrence word; idempotent."""
    return ChordDiagram.from_word(word)


def _matchings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect matchings on the given points, as sorted pair tuples."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, second in enumerate(rest):
        others = rest[:k] + rest[k + 1 :]
        for sub in _matchings(others):
            yield ((first, second),) + sub


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the limit of {MAX_DEGREE}")


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> tuple[ChordDiagram, ...]:
    """All degree-n chord diagrams, canonical and sorted."""
    _check_degree(n)
    out = {ChordDiagram.from_pairs(m) for m in _matchings(tuple(range(2 * n)))}
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# relations

Relation = dict[int, Fraction]


@dataclass(frozen=True)
class RelationSet:
    """Linear relations over a fixed diagram basis (rows of coefficients)."""

    kind: str
    basis: tuple[ChordDiagram, ...]
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def as_formal_sums(self):
        """The relations as FormalSums of chord diagrams."""
        from .diagram import FormalSum

        return [
            FormalSum([(self.basis[i], c) for i, c in row]) for row in self.rows
        ]


def _normalize(row: Relation) -> tuple[tuple[int, Fraction], ...] | None:
    items = sorted((i, c) for i, c in row.items() if c)
    if not items:
        return None
    lead = items[0][1]
    return tuple((i, c / lead) for i, c in items)


def _insert_two(word: Sequence[int], a: int, b: int, cid: int) -> tuple[int, ...]:
    """Insert both endpoints of chord cid at linear gaps a <= b."""
    if a > b:
        a, b = b, a
    w = list(word)
    return tuple(w[:a] + [cid] + w[a:b] + [cid] + w[b:])


# Relative signs of the four placements of the moving chord's near end:
# just before / just after each endpoint of the fixed chord.
_4T_SIGNS = (1, -1, 1, -1)


def generate_4t(n: int) -> RelationSet:
    """Four-term relations among degree-n diagrams.

    Each relation fixes a diagram of degree n-2, a fixed chord Y, and the
    far endpoint of a moving chord M; the four terms slide M's near
    endpoint across the four positions adjacent to Y's endpoints, with
    alternating signs.  Duplicate and vanishing relations are dropped.
    """
    _check_degree(n)
    basis = enumerate_diagrams(n)
    index = {d: i for i, d in enumerate(basis)}
    rows: dict[tuple[tuple[int, Fraction], ...], None] = {}
    if n >= 2:
        y, m = n - 2, n - 1  # chord ids above any base id
        for base in enumerate_diagrams(n - 2):
            length = len(base.word)
            for g1 in range(length + 1):
                for g2 in range(g1, length + 1):
                    v = _insert_two(base.word, g1, g2, y)
                    y1, y2 = g1, g2 + 1
                    near = (y1, y1 + 1, y2, y2 + 1)
                    for far in range(length + 3):
                        row: Relation = {}
                        for gap, sign in zip(near, _4T_SIGNS):
                            d = ChordDiagram.from_word(
                                _insert_two(v, far, gap, m)
                            )
                            i = index[d]
                            row[i] = row.get(i, Fraction(0)) + sign
                        norm = _normalize(row)
                        if norm is not None:
                            rows.setdefault(norm, None)
    return RelationSet("4T", basis, tuple(rows))


def generate_fi(n: int) -> RelationSet:
    """Framing independence: each diagram with an isolated chord is zero."""
    _check_degree(n)
    basis = enumerate_diagrams(n)
    rows = tuple(
        ((i, Fraction(1)),)
        for i, d in enumerate(basis)
        if d.has_isolated_chord()
    )
    return RelationSet("FI", basis, rows)


@dataclass(frozen=True)
class WeightSpaceReport:
    n: int
    framed: bool
    n_diagrams: int
    n_relations: int
    rank: int
    dim: int


def dim_a(n: int, *, framed: bool = False, order_seed: int | None = None) -> WeightSpaceReport:
    """Dimension of the degree-n weight space (unframed by default).

    order_seed, if given, shuffles both the diagram basis and the relation
    rows before the rank computation; the answer must not depend on it.
    """
    _check_degree(n)
    basis = enumerate_diagrams(n)
    rel_rows = list(generate_4t(n).rows)
    if not framed:
        rel_rows += list(generate_fi(n).rows)
    cols = len(basis)
    if order_seed is not None:
        rng = random.Random(order_seed)
        perm = list(range(cols))
        rng.shuffle(perm)
        rel_rows = [
            tuple(sorted((perm[i], c) for i, c in row)) for row in rel_rows
        ]
        rng.shuffle(rel_rows)
    mat = SparseMatrix.from_rows([dict(row) for row in rel_rows], ncols=cols)
    rank = mat.rank()
    return WeightSpaceReport(
        n=n,
        framed=framed,
        n_diagrams=cols,
        n_relations=len(rel_rows),
        rank=rank,
        dim=cols - rank,
    )
