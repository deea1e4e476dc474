"""Node algebra for the infinite rooted binary tree.

Nodes are finite 0/1 sequences; the empty sequence is the root.  A node's
level is the length of its sequence, and ``s`` precedes ``t`` when the bits
of ``s`` are a prefix of the bits of ``t``.  Sets of pairwise comparable
nodes that are convex under this order are intervals: finite ones are
segments (a chain between two comparable endpoints), infinite ones are
branches (everything from a stem node down one fixed 0/1 direction).

The canonical enumeration lists nodes level by level, within a level in
binary-counter order: root, (0), (1), (0,0), (0,1), (1,0), (1,1), ...
Indices are 1-based, so the node at index n sits at level floor(log2 n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union


class InsufficientPrefixError(ValueError):
    """Two branch descriptors agree on every bit both of them provide."""


def _coerce_bits(bits: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"node bits must be 0 or 1, got {out!r}")
    return out


@dataclass(frozen=True)
class NodeId:
    """A tree node addressed by its root path, most significant bit first."""

    bits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", _coerce_bits(self.bits))

    @classmethod
    def parse(cls, text: str) -> "NodeId":
        """Parse the textual form: a string of '0'/'1', empty meaning root."""
        if not all(ch in "01" for ch in text):
            raise ValueError(f"invalid node string {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @property
    def level(self) -> int:
        return len(self.bits)

    @property
    def is_root(self) -> bool:
        return not self.bits

    def child(self, bit: int) -> "NodeId":
        return NodeId(self.bits + (bit,))

    def parent(self) -> "NodeId":
        if self.is_root:
            raise ValueError("the root has no parent")
        return NodeId(self.bits[:-1])

    def prefix(self, length: int) -> "NodeId":
        if not 0 <= length <= len(self.bits):
            raise ValueError(f"prefix length {length} out of range")
        return NodeId(self.bits[:length])

    def precedes(self, other: "NodeId") -> bool:
        """True when self lies on the root path of other (or equals it)."""
        return self.bits == other.bits[: len(self.bits)]

    def comparable(self, other: "NodeId") -> bool:
        return self.precedes(other) or other.precedes(self)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __repr__(self) -> str:
        return f"NodeId({str(self)!r})"


ROOT = NodeId()


def level(node: NodeId) -> int:
    return node.level


def precedes(s: NodeId, t: NodeId) -> bool:
    return s.precedes(t)


def node_at(n: int) -> NodeId:
    """The n-th node of the enumeration, 1-based.

    Index 1 is the root; index 2**k + j (0 <= j < 2**k) is the level-k node
    whose bits spell j in binary.
    """
    if n < 1:
        raise ValueError(f"enumeration index must be >= 1, got {n}")
    k = n.bit_length() - 1
    j = n - (1 << k)
    return NodeId(tuple((j >> (k - 1 - i)) & 1 for i in range(k)))


def index_of(node: NodeId) -> int:
    """Inverse of node_at: the 1-based enumeration index of a node."""
    j = 0
    for b in node.bits:
        j = (j << 1) | b
    return (1 << node.level) + j


def successor(node: NodeId) -> NodeId:
    """Next node in enumeration order, as a binary-counter step.

    All bits 1 (or root) rolls over to the all-zero sequence one longer;
    otherwise the last 0 flips to 1 and everything after it resets to 0.
    """
    bits = node.bits
    if all(b == 1 for b in bits):
        return NodeId((0,) * (len(bits) + 1))
    i0 = max(i for i, b in enumerate(bits) if b == 0)
    return NodeId(bits[:i0] + (1,) + (0,) * (len(bits) - i0 - 1))


def enumerate_nodes(count: int) -> list[NodeId]:
    """The first ``count`` nodes in enumeration order."""
    return [node_at(n) for n in range(1, count + 1)]


@dataclass(frozen=True)
class Segment:
    """A finite chain of nodes between two comparable endpoints.

    Contains exactly the nodes w with start ⊑ w ⊑ end; start and end may
    coincide (a singleton).
    """

    start: NodeId
    end: NodeId

    def __post_init__(self) -> None:
        if not self.start.precedes(self.end):
            raise ValueError(
                f"segment endpoints must be comparable with start above end, "
                f"got {self.start!r} .. {self.end!r}"
            )

    @classmethod
    def parse(cls, text: str) -> "Segment":
        """Parse the textual form "start..end", e.g. "0..011" or ".." (root)."""
        if text.count("..") != 1:
            raise ValueError(f"invalid segment string {text!r}")
        a, b = text.split("..")
        return cls(NodeId.parse(a), NodeId.parse(b))

    def __len__(self) -> int:
        return self.end.level - self.start.level + 1

    def nodes(self) -> list[NodeId]:
        """All nodes of the segment in top-down order."""
        return [self.end.prefix(k) for k in range(self.start.level, self.end.level + 1)]

    def contains(self, node: NodeId) -> bool:
        return self.start.precedes(node) and node.precedes(self.end)

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"


def segment_between(s: NodeId, t: NodeId) -> Segment:
    """The unique segment with top endpoint s and bottom endpoint t."""
    return Segment(s, t)


@dataclass(frozen=True)
class BranchPrefix:
    """A branch: the infinite chain through ``stem`` in one fixed direction.

    The direction below the stem is given by ``tail``, a nonempty finite bit
    pattern whose last bit repeats forever.  Finite-support vectors only ever
    see finitely many branch nodes, but the constant-tail convention makes
    branch equality decidable; the stored pattern is canonicalized by
    stripping repeats of its last bit.
    """

    stem: NodeId = ROOT
    tail: tuple[int, ...] = (0,)

    def __post_init__(self) -> None:
        tail = _coerce_bits(self.tail)
        if not tail:
            raise ValueError("branch tail pattern must be nonempty")
        while len(tail) > 1 and tail[-2] == tail[-1]:
            tail = tail[:-1]
        object.__setattr__(self, "tail", tail)

    def bit_at(self, i: int) -> int:
        """Bit i (0-based from the root) of the branch's direction sequence."""
        if i < self.stem.level:
            return self.stem.bits[i]
        j = i - self.stem.level
        return self.tail[j] if j < len(self.tail) else self.tail[-1]

    def node_at_level(self, k: int) -> NodeId:
        """The branch's unique node at level k (k >= stem level)."""
        if k < self.stem.level:
            raise ValueError(f"branch has no node above its stem (level {k})")
        return NodeId(tuple(self.bit_at(i) for i in range(k)))

    def contains(self, node: NodeId) -> bool:
        if node.level < self.stem.level:
            return False
        return all(node.bits[i] == self.bit_at(i) for i in range(node.level))

    def __str__(self) -> str:
        return f"{self.stem}~{''.join(str(b) for b in self.tail)}"


Interval = Union[Segment, BranchPrefix]


def _segments_disjoint(a: Segment, b: Segment) -> bool:
    # Two chains intersect iff one's top endpoint lies inside the other.
    return not (b.contains(a.start) or a.contains(b.start))


def _common_direction_length(a: BranchPrefix, b: BranchPrefix) -> float:
    """Length of the common prefix of two branch direction sequences.

    Returns math-style infinity when the directions coincide; both are
    eventually constant, so agreement past every explicit bit is final.
    """
    horizon = max(a.stem.level + len(a.tail), b.stem.level + len(b.tail))
    for i in range(horizon + 1):
        if a.bit_at(i) != b.bit_at(i):
            return i
    return float("inf")


def disjoint(a: Interval, b: Interval) -> bool:
    """True when the two intervals share no node."""
    if isinstance(a, Segment) and isinstance(b, Segment):
        return _segments_disjoint(a, b)
    if isinstance(a, Segment) and isinstance(b, BranchPrefix):
        a, b = b, a
    if isinstance(b, Segment):
        # branch a vs segment b: a common node is a segment node at some
        # level L >= stem level whose bits follow the branch direction.
        lo = max(a.stem.level, b.start.level)
        if lo > b.end.level:
            return True
        return any(b.end.bits[i] != a.bit_at(i) for i in range(lo))
    lo = max(a.stem.level, b.stem.level)
    return _common_direction_length(a, b) < lo


def interval_contains(interval: Interval, node: NodeId) -> bool:
    return interval.contains(node)


def separation_level(
    prefixes: Sequence[NodeId], stems: Sequence[NodeId] = ()
) -> int:
    """Smallest N making all length-N truncations pairwise distinct.

    ``prefixes`` describe branches by finitely many known direction bits;
    the returned N also dominates the level of every stem.  Raises
    InsufficientPrefixError when some pair agrees on every bit both
    provide, which leaves their divergence point unknown.
    """
    if stems and len(stems) != len(prefixes):
        raise ValueError("stems must be empty or match prefixes in length")
    n = max((s.level for s in stems), default=0)
    n = max(n, 1)
    for i in range(len(prefixes)):
        for j in range(i + 1, len(prefixes)):
            p, q = prefixes[i], prefixes[j]
            avail = min(p.level, q.level)
            diverge = next(
                (k for k in range(avail) if p.bits[k] != q.bits[k]), None
            )
            if diverge is None:
                raise InsufficientPrefixError(
                    f"insufficient prefix: {p!r} and {q!r} agree on all "
                    f"available bits"
                )
            n = max(n, diverge + 1)
    return n
