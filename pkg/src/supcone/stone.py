"""Clopen algebra of the Cantor space K = {0,1}^N.

A cell ``[w]`` is the set of infinite binary addresses starting with the
finite word ``w``.  Every clopen subset of K is a finite union of cells;
:class:`ClopenSet` keeps such a union in a canonical form so that equal
sets compare equal.  A :class:`BranchPoint` is an eventually constant
address ``w b b b ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Cell",
    "ClopenSet",
    "BranchPoint",
    "OpenDense",
    "NotAPartition",
    "EMPTY",
    "FULL",
    "clopen_normalize",
    "clopen_complement",
    "clopen_meet",
    "clopen_join",
    "branch_in_clopen",
    "partition_meet",
    "cell_relation",
]


class NotAPartition(ValueError):
    pass


def _check_word(word: str) -> str:
    if any(ch not in "01" for ch in word):
        raise ValueError(f"cell words are binary, got {word!r}")
    return word


@dataclass(frozen=True, order=True)
class Cell:
    word: str = ""

    def __post_init__(self):
        _check_word(self.word)

    def child(self, bit: int) -> "Cell":
        return Cell(self.word + "01"[bit])

    def contains(self, other: "Cell") -> bool:
        return other.word.startswith(self.word)

    def __str__(self) -> str:
        return self.word or "e"

    @classmethod
    def parse(cls, text: str) -> "Cell":
        t = text.strip()
        return cls("" if t == "e" else _check_word(t))


@dataclass(frozen=True, order=True)
class BranchPoint:
    """The address ``prefix + tail*omega``; canonical when ``prefix`` does not end in ``tail``."""

    prefix: str
    tail: int

    def __post_init__(self):
        _check_word(self.prefix)
        if self.tail not in (0, 1):
            raise ValueError("tail bit must be 0 or 1")
        b = "01"[self.tail]
        trimmed = self.prefix.rstrip(b)
        if trimmed != self.prefix:
            object.__setattr__(self, "prefix", trimmed)

    def bit(self, i: int) -> str:
        return self.prefix[i] if i < len(self.prefix) else "01"[self.tail]

    def address(self, n: int) -> str:
        """First ``n`` bits of the address."""
        return "".join(self.bit(i) for i in range(n))

    def in_cell(self, cell: Cell) -> bool:
        return self.address(len(cell.word)) == cell.word

    def __str__(self) -> str:
        return f"{self.prefix}({self.tail})^w"

    @classmethod
    def parse(cls, text: str) -> "BranchPoint":
        m = re.fullmatch(r"\s*([01]*)\(([01])\)\^w\s*", text)
        if not m:
            raise ValueError(f"not a branch point: {text!r}")
        return cls(m.group(1), int(m.group(2)))


class ClopenSet:
    """A finite union of cells in canonical form.

    Canonical means: no cell lies inside another and no two sibling cells
    are both present.  Two clopen sets are equal iff their canonical cell
    sets are equal.
    """

    __slots__ = ("_words",)

    def __init__(self, cells: Iterable[Cell | str] = ()):
        words = []
        for c in cells:
            words.append(c.word if isinstance(c, Cell) else _check_word(c))
        self._words = _canonical_words(words)

    @classmethod
    def _raw(cls, words: frozenset) -> "ClopenSet":
        obj = object.__new__(cls)
        obj._words = words
        return obj

    @property
    def cells(self) -> tuple[Cell, ...]:
        return tuple(Cell(w) for w in sorted(self._words, key=lambda w: (w, len(w))))

    @property
    def words(self) -> frozenset:
        return self._words

    def is_empty(self) -> bool:
        return not self._words

    def is_full(self) -> bool:
        return self._words == frozenset({""})

    def __contains__(self, point) -> bool:
        if isinstance(point, BranchPoint):
            return branch_in_clopen(point, self)
        if isinstance(point, Cell):
            return cell_relation(point, self) == "in"
        raise TypeError(point)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClopenSet) and self._words == other._words

    def __hash__(self) -> int:
        return hash(self._words)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        return clopen_meet(self, other)

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return clopen_join(self, other)

    def __invert__(self) -> "ClopenSet":
        return clopen_complement(self)

    def __le__(self, other: "ClopenSet") -> bool:
        return clopen_meet(self, other) == self

    def __str__(self) -> str:
        return "{" + ",".join(str(c) for c in self.cells) + "}"

    def __repr__(self) -> str:
        return f"ClopenSet('{self}')"

    @classmethod
    def parse(cls, text: str) -> "ClopenSet":
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise ValueError(f"not a clopen set: {text!r}")
        body = t[1:-1].strip()
        if not body:
            return EMPTY
        return cls(Cell.parse(part) for part in body.split(","))


def _canonical_words(words: Sequence[str]) -> frozenset:
    ws = sorted(set(words), key=len)
    kept: set[str] = set()
    for w in ws:
        if not any(w[:i] in kept for i in range(len(w))):
            kept.add(w)
    # merge siblings, deepest first
    changed = True
    while changed:
        changed = False
        for w in sorted(kept, key=len, reverse=True):
            if not w or w not in kept:
                continue
            sib = w[:-1] + ("1" if w[-1] == "0" else "0")
            if sib in kept:
                kept.discard(w)
                kept.discard(sib)
                kept.add(w[:-1])
                changed = True
    return frozenset(kept)


EMPTY = ClopenSet._raw(frozenset())
FULL = ClopenSet._raw(frozenset({""}))


def clopen_normalize(cells: Iterable[Cell | str]) -> ClopenSet:
    return ClopenSet(cells)


def cell_relation(cell: Cell | str, U: ClopenSet) -> str:
    """Return ``"in"``, ``"out"`` or ``"mixed"`` for ``cell`` against ``U``."""
    w = cell.word if isinstance(cell, Cell) else cell
    if any(w.startswith(u) for u in U.words):
        return "in"
    if any(u.startswith(w) for u in U.words):
        return "mixed"
    return "out"


def _complement_below(w: str, words: frozenset) -> list[str]:
    rel = cell_relation(w, ClopenSet._raw(words))
    if rel == "in":
        return []
    if rel == "out":
        return [w]
    return _complement_below(w + "0", words) + _complement_below(w + "1", words)


def clopen_complement(U: ClopenSet) -> ClopenSet:
    return ClopenSet._raw(_canonical_words(_complement_below("", U.words)))


def clopen_meet(U: ClopenSet, V: ClopenSet) -> ClopenSet:
    out = []
    for a in U.words:
        for b in V.words:
            if b.startswith(a):
                out.append(b)
            elif a.startswith(b):
                out.append(a)
    return ClopenSet(out)


def clopen_join(U: ClopenSet, V: ClopenSet) -> ClopenSet:
    return ClopenSet(list(U.words) + list(V.words))


def branch_in_clopen(p: BranchPoint, U: ClopenSet) -> bool:
    return any(p.address(len(w)) == w for w in U.words)


class OpenDense:
    """K minus finitely many branch points."""

    __slots__ = ("excluded",)

    def __init__(self, excluded: Iterable[BranchPoint] = ()):
        self.excluded = frozenset(excluded)

    def __contains__(self, point) -> bool:
        if isinstance(point, BranchPoint):
            return point not in self.excluded
        if isinstance(point, Cell):
            # a cell is inside iff it avoids every excluded point
            return not any(p.in_cell(point) for p in self.excluded)
        raise TypeError(point)

    def __repr__(self) -> str:
        return "OpenDense(K \\ {" + ",".join(sorted(map(str, self.excluded))) + "})"


def partition_meet(P: Sequence[ClopenSet], Q: Sequence[ClopenSet]) -> list[ClopenSet]:
    """Coarsest common refinement of two partitions of K."""
    for part in (P, Q):
        _check_partition(part)
    out = []
    for A in P:
        for B in Q:
            C = clopen_meet(A, B)
            if not C.is_empty():
                out.append(C)
    return sorted(out, key=lambda S: sorted(S.words))


def _check_partition(part: Sequence[ClopenSet]) -> None:
    union = EMPTY
    for i, A in enumerate(part):
        if A.is_empty():
            raise NotAPartition("partition blocks must be nonempty")
        for B in part[i + 1:]:
            if not clopen_meet(A, B).is_empty():
                raise NotAPartition(f"blocks {A} and {B} overlap")
        union = clopen_join(union, A)
    if not union.is_full():
        raise NotAPartition(f"blocks cover only {union}")
