"""Partial orders on simple labels."""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence


class SimpleOrder:
    """A strict partial order on a finite list of labels (transitively closed)."""

    def __init__(self, labels: Sequence[Hashable], less: Iterable[tuple[Hashable, Hashable]] = ()):
        self.labels = list(labels)
        index = {lab: k for k, lab in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise ValueError("duplicate labels in order")
        rel = set()
        for a, b in less:
            if a not in index or b not in index:
                raise ValueError(f"order mentions unknown label {a!r} or {b!r}")
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        for a, b in rel:
            if a == b:
                raise ValueError(f"order is not antisymmetric at {a!r}")
        self._index = index
        self._less = frozenset(rel)

    @classmethod
    def chain(cls, labels: Sequence[Hashable]) -> "SimpleOrder":
        labs = list(labels)
        return cls(labs, list(zip(labs, labs[1:])))

    @classmethod
    def discrete(cls, labels: Sequence[Hashable]) -> "SimpleOrder":
        return cls(labels, [])

    def lt(self, a, b) -> bool:
        return (a, b) in self._less

    def le(self, a, b) -> bool:
        return a == b or (a, b) in self._less

    def pairs(self) -> list[tuple]:
        """All strict pairs, sorted by label position."""
        return sorted(self._less, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def cover_pairs(self) -> list[tuple]:
        out = []
        for a, b in self.pairs():
            if not any(self.lt(a, c) and self.lt(c, b) for c in self.labels):
                out.append((a, b))
        return out

    def maximal(self, subset: Iterable[Hashable] | None = None) -> list:
        sub = list(self.labels if subset is None else subset)
        return [a for a in sub if not any(self.lt(a, b) for b in sub)]

    def minimal(self, subset: Iterable[Hashable] | None = None) -> list:
        sub = list(self.labels if subset is None else subset)
        return [a for a in sub if not any(self.lt(b, a) for b in sub)]

    def linear_extension(self) -> list:
        """Labels from smallest to largest, ties broken by label position."""
        left = list(self.labels)
        out = []
        while left:
            a = self.minimal(left)[0]
            out.append(a)
            left.remove(a)
        return out

    def restrict(self, labels: Iterable[Hashable]) -> "SimpleOrder":
        labs = [x for x in self.labels if x in set(labels)]
        keep = set(labs)
        return SimpleOrder(labs, [(a, b) for a, b in self._less if a in keep and b in keep])

    def relabel(self, mapping: dict) -> "SimpleOrder":
        return SimpleOrder([mapping[x] for x in self.labels], [(mapping[a], mapping[b]) for a, b in self._less])

    def reversed(self) -> "SimpleOrder":
        return SimpleOrder(self.labels, [(b, a) for a, b in self._less])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleOrder):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self._less == other._less

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), self._less))

    def __repr__(self) -> str:
        rel = ", ".join(f"{a}<{b}" for a, b in self.cover_pairs())
        return f"SimpleOrder({rel or 'discrete'})"


def _flat(x) -> tuple:
    return x if isinstance(x, tuple) else (x,)


def tensor_order(o1: SimpleOrder, o2: SimpleOrder) -> SimpleOrder:
    """Product order: ``(i, i') < (j, j')`` iff ``i <= j``, ``i' <= j'`` and not both equal."""
    labels = []
    parts = {}
    for a in o1.labels:
        for b in o2.labels:
            lab = _flat(a) + _flat(b)
            labels.append(lab)
            parts[lab] = (a, b)
    less = []
    for x in labels:
        for y in labels:
            (a, b), (c, d) = parts[x], parts[y]
            if x != y and o1.le(a, c) and o2.le(b, d):
                less.append((x, y))
    return SimpleOrder(labels, less)
