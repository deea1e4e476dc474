"""Dual-side evaluations: interval functionals and norming elements.

An interval functional I* sums the coordinates over an interval (segment
or branch); it has operator norm 1.  Elements of the norming set combine
pairwise disjoint interval functionals with an l2-bounded coefficient
vector.  To stay radical-free on the exact backend a combination is stored
as integer-side weights plus a separate ``scale_squared``: the acting
coefficient of term i is weight_i / sqrt(scale_squared).  Identities are
then checked on squares, where everything is rational.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .nodes import (
    BranchPrefix,
    Interval,
    InsufficientPrefixError,
    NodeId,
    Segment,
    disjoint,
    interval_contains,
)
from .norm import jt_norm
from .vectors import (
    EXACT,
    BackendMismatchError,
    JTVector,
    Scalar,
    VectorFormatError,
    as_scalar,
    scalar_to_json,
    zero_scalar,
)


class InvalidKStarError(ValueError):
    """Raised when a combination breaks the l2 bound or interval disjointness."""


def eval_interval(interval: Interval, x: JTVector) -> Scalar:
    """I*(x) = sum of x_s over support nodes s lying in the interval."""
    total = zero_scalar(x.backend)
    for node, value in x.items():
        if interval_contains(interval, node):
            total += value
    return total


def branch_through(prefix: NodeId) -> BranchPrefix:
    """The root-based branch whose bits start with the given nonempty prefix."""
    if prefix.is_root:
        raise ValueError("a branch needs at least one bit of direction")
    return BranchPrefix(NodeId(), prefix.bits)


def separation_witness(p: NodeId, q: NodeId) -> NodeId:
    """First node where the branches through p and q part ways.

    The returned node s lies on the branch through p but not on the branch
    through q, so the two branch functionals differ by exactly 1 on e_s.
    Raises when one prefix agrees with the other on every available bit.
    """
    limit = min(len(p.bits), len(q.bits))
    for i in range(limit):
        if p.bits[i] != q.bits[i]:
            return NodeId(p.bits[: i + 1])
    raise InsufficientPrefixError(
        f"prefixes {p!s} and {q!s} agree on all mutually available bits"
    )


@dataclass(frozen=True)
class KStarElement:
    """Finite combination sum_i (w_i / sqrt(scale_squared)) * I_i*.

    Invariants: the intervals are pairwise disjoint and
    sum_i w_i^2 <= scale_squared (the l2 unit-ball constraint on the
    acting coefficients).  Plain hand-written functionals have
    scale_squared = 1, making w_i the literal coefficients.
    """

    terms: tuple[tuple[Scalar, Interval], ...]
    scale_squared: Scalar
    backend: str = EXACT

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[tuple[object, Interval]],
        backend: str = EXACT,
        scale_squared: object = 1,
    ) -> "KStarElement":
        coerced = tuple(
            (as_scalar(alpha, backend), interval) for alpha, interval in terms
        )
        element = cls(coerced, as_scalar(scale_squared, backend), backend)
        element.validate()
        return element

    def validate(self) -> None:
        if self.scale_squared <= 0:
            raise InvalidKStarError("scale_squared must be positive")
        weight_sq = zero_scalar(self.backend)
        for w, _ in self.terms:
            weight_sq += w * w
        if self.backend == EXACT:
            if weight_sq > self.scale_squared:
                raise InvalidKStarError(
                    f"l2 bound violated: sum of squares {weight_sq} > {self.scale_squared}"
                )
        else:
            if weight_sq > self.scale_squared * (1.0 + 1e-9):
                raise InvalidKStarError("l2 bound violated")
        intervals = [iv for _, iv in self.terms]
        for i in range(len(intervals)):
            for j in range(i + 1, len(intervals)):
                if not disjoint(intervals[i], intervals[j]):
                    raise InvalidKStarError(
                        f"intervals {intervals[i]} and {intervals[j]} overlap"
                    )


def _weighted_sum(k: KStarElement, x: JTVector) -> Scalar:
    total = zero_scalar(x.backend)
    for w, interval in k.terms:
        total += w * eval_interval(interval, x)
    return total


def eval_kstar_squared(k: KStarElement, x: JTVector) -> Scalar:
    """Square of the evaluation, exact on the exact backend.

    (sum_i w_i I_i*(x))^2 / scale_squared is rational whenever the inputs
    are, even though the evaluation itself may be irrational.
    """
    if k.backend != x.backend:
        raise BackendMismatchError(
            f"cannot evaluate {k.backend} functional on {x.backend} vector"
        )
    k.validate()
    s = _weighted_sum(k, x)
    return s * s / k.scale_squared


def eval_kstar(k: KStarElement, x: JTVector) -> Scalar:
    """k*(x).  Backend-exact when scale_squared = 1; binary64 otherwise.

    With a nontrivial scale the true value carries a square root, so it is
    returned as a float; exact identity checks should use
    eval_kstar_squared instead.
    """
    if k.backend != x.backend:
        raise BackendMismatchError(
            f"cannot evaluate {k.backend} functional on {x.backend} vector"
        )
    k.validate()
    s = _weighted_sum(k, x)
    if k.scale_squared == 1:
        result: Scalar = s
    else:
        result = float(s) / math.sqrt(float(k.scale_squared))
    if __debug__ and not x.is_zero:
        # |k*(x)|^2 <= ||x||^2: coefficient l2 bound against disjoint intervals
        norm_sq = jt_norm(x).value_squared
        ev_sq = s * s / k.scale_squared
        if x.backend == EXACT:
            assert ev_sq <= norm_sq
        else:
            assert float(ev_sq) <= float(norm_sq) * (1.0 + 1e-9) + 1e-12
    return result


def norming_functional(x: JTVector) -> KStarElement:
    """The element of the norming set that attains the norm of x.

    Takes an optimal disjoint family {F_i} and weights each F_i* by
    F_i*(x); with scale_squared = sum_i F_i*(x)^2 = ||x||^2 the acting
    coefficients are l2-normalized and the evaluation squares back to
    ||x||^2 exactly.
    """
    if x.is_zero:
        raise ValueError("the zero vector has no norming functional")
    witness = jt_norm(x)
    terms = []
    for seg in witness.family:
        w = eval_interval(seg, x)
        terms.append((w, seg))
    return KStarElement(tuple(terms), witness.value_squared, x.backend)


# ---------------------------------------------------------------------------
# file format


def interval_from_json(obj, what: str = "interval") -> Interval:
    """Parse 'start..end' segment strings or {branch_stem, tail} objects."""
    if isinstance(obj, str):
        try:
            return Segment.parse(obj)
        except ValueError as exc:
            raise VectorFormatError(f"bad {what} {obj!r}: {exc}") from exc
    if isinstance(obj, dict):
        extra = set(obj) - {"branch_stem", "tail"}
        if extra or "tail" not in obj:
            raise VectorFormatError(
                f"branch {what} needs keys branch_stem and tail, got {sorted(obj)}"
            )
        stem_text = obj.get("branch_stem", "")
        tail_text = obj["tail"]
        if not isinstance(stem_text, str) or not isinstance(tail_text, str):
            raise VectorFormatError("branch_stem and tail must be bit strings")
        try:
            stem = NodeId.parse(stem_text)
            if not tail_text or any(ch not in "01" for ch in tail_text):
                raise ValueError(f"tail must be a nonempty 0/1 string, got {tail_text!r}")
            return BranchPrefix(stem, tuple(int(ch) for ch in tail_text))
        except ValueError as exc:
            raise VectorFormatError(str(exc)) from exc
    raise VectorFormatError(f"bad {what}: {obj!r}")


def interval_to_json(interval: Interval):
    if isinstance(interval, Segment):
        return str(interval)
    return {"branch_stem": str(interval.stem), "tail": "".join(map(str, interval.tail))}


def kstar_from_json_dict(obj, backend: str) -> KStarElement:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise VectorFormatError('functional document must be an object with "terms"')
    extra = set(obj) - {"terms", "scale_squared"}
    if extra:
        raise VectorFormatError(f"unknown functional keys {sorted(extra)}")
    raw_terms = obj["terms"]
    if not isinstance(raw_terms, list):
        raise VectorFormatError('"terms" must be a list')
    terms = []
    for entry in raw_terms:
        if not isinstance(entry, dict) or set(entry) != {"alpha", "interval"}:
            raise VectorFormatError(
                f"each term needs exactly the keys alpha and interval, got {entry!r}"
            )
        alpha = entry["alpha"]
        if not isinstance(alpha, (int, float, str, Fraction)) or isinstance(alpha, bool):
            raise VectorFormatError(f"bad alpha {alpha!r}")
        terms.append((alpha, interval_from_json(entry["interval"])))
    scale = obj.get("scale_squared", 1)
    if not isinstance(scale, (int, float, str, Fraction)) or isinstance(scale, bool):
        raise VectorFormatError(f"bad scale_squared {scale!r}")
    try:
        return KStarElement.from_terms(terms, backend, scale)
    except InvalidKStarError:
        raise
    except (BackendMismatchError, VectorFormatError):
        raise
    except ValueError as exc:
        raise VectorFormatError(str(exc)) from exc


def loads_kstar(text: str, backend: str = EXACT) -> KStarElement:
    try:
        if backend == EXACT:
            obj = json.loads(text, parse_float=Fraction)
        else:
            obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise VectorFormatError(f"invalid JSON: {exc}") from exc
    return kstar_from_json_dict(obj, backend)


def load_kstar(path, backend: str = EXACT) -> KStarElement:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_kstar(fh.read(), backend)


def kstar_to_json_dict(k: KStarElement) -> dict:
    out = {
        "terms": [
            {"alpha": scalar_to_json(w), "interval": interval_to_json(iv)}
            for w, iv in k.terms
        ]
    }
    if k.scale_squared != 1:
        out["scale_squared"] = scalar_to_json(k.scale_squared)
    return out
