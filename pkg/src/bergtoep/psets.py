"""Property (P): a recursive sparseness condition on subsets of the
positive-integer grid N_*^n, decided symbolically on structured set
expressions.

A subset M of N_* has property (P) when sum_{s in M} 1/(s+1) converges
(or M is empty); in higher dimension the condition recurses: along every
axis, the set of cross-sections whose slice series diverges must itself
have property (P).  Deciding this for an arbitrary set from finite data
is impossible, so the engine applies exactly the closure rules that are
sound:

  finite sets                  -> yes
  union of two yes             -> yes
  integer translate of a yes   -> yes
  yes with a full axis glued   -> yes
  the full grid N_*^n          -> no
  complement of a yes          -> no   (a yes can't fill up the grid)

Everything else is reported as unknown, with the applied rules recorded
as a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multiindex import MultiIndex, enumerate_multiindices
from .quadrature import ball_monomial_integral
from .specialfn import SpaceParams
from .symbols import MonomialCombo

__all__ = [
    "Finite",
    "Full",
    "Union",
    "Translate",
    "ProductWithFull",
    "Complement",
    "SetExpr",
    "dim",
    "contains",
    "PVerdict",
    "property_p",
    "replay",
    "divergence_probe",
    "zero_set_prefix",
]


@dataclass(frozen=True)
class Finite:
    n: int
    members: frozenset[tuple[int, ...]]

    @classmethod
    def of(cls, n: int, members) -> "Finite":
        ms = frozenset(tuple(int(c) for c in m) for m in members)
        for m in ms:
            if len(m) != n:
                raise ValueError(f"member {m} does not match dimension {n}")
            if any(c < 1 for c in m):
                raise ValueError(f"member {m} is outside the positive grid")
        return cls(n=n, members=ms)


@dataclass(frozen=True)
class Full:
    n: int


@dataclass(frozen=True)
class Union:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Translate:
    """(inner + offset) intersected back with the positive grid."""

    inner: "SetExpr"
    offset: tuple[int, ...]


@dataclass(frozen=True)
class ProductWithFull:
    """inner (dimension n-1) with a full positive axis inserted at `axis`."""

    inner: "SetExpr"
    axis: int


@dataclass(frozen=True)
class Complement:
    """N_*^n minus inner."""

    inner: "SetExpr"


SetExpr = Finite | Full | Union | Translate | ProductWithFull | Complement


def dim(e: SetExpr) -> int:
    if isinstance(e, (Finite, Full)):
        return e.n
    if isinstance(e, Union):
        nl, nr = dim(e.left), dim(e.right)
        if nl != nr:
            raise ValueError(f"union of dimensions {nl} and {nr}")
        return nl
    if isinstance(e, Translate):
        n = dim(e.inner)
        if len(e.offset) != n:
            raise ValueError(f"offset {e.offset} does not match dimension {n}")
        return n
    if isinstance(e, ProductWithFull):
        n = dim(e.inner) + 1
        if not 0 <= e.axis < n:
            raise ValueError(f"axis {e.axis} out of range for dimension {n}")
        return n
    if isinstance(e, Complement):
        return dim(e.inner)
    raise TypeError(f"not a set expression: {e!r}")


def contains(e: SetExpr, r) -> bool:
    """Membership of a point of N_*^n (points off the positive grid are
    never members)."""
    r = tuple(int(c) for c in r)
    if len(r) != dim(e):
        raise ValueError(f"point {r} does not match dimension {dim(e)}")
    if any(c < 1 for c in r):
        return False
    if isinstance(e, Finite):
        return r in e.members
    if isinstance(e, Full):
        return True
    if isinstance(e, Union):
        return contains(e.left, r) or contains(e.right, r)
    if isinstance(e, Translate):
        pre = tuple(a - b for a, b in zip(r, e.offset))
        return all(c >= 1 for c in pre) and contains(e.inner, pre)
    if isinstance(e, ProductWithFull):
        rest = r[: e.axis] + r[e.axis + 1 :]
        return contains(e.inner, rest)
    if isinstance(e, Complement):
        return not contains(e.inner, r)
    raise TypeError(f"not a set expression: {e!r}")


TraceStep = tuple[tuple[int, ...], str, str]  # (path from root, rule, status)


@dataclass(frozen=True)
class PVerdict:
    status: str  # "yes" | "no" | "unknown"
    trace: tuple[TraceStep, ...]


def _decide(e: SetExpr, path: tuple[int, ...], trace: list[TraceStep]) -> str:
    if isinstance(e, Finite):
        trace.append((path, "finite", "yes"))
        return "yes"
    if isinstance(e, Full):
        trace.append((path, "full-grid", "no"))
        return "no"
    if isinstance(e, Union):
        sl = _decide(e.left, path + (0,), trace)
        sr = _decide(e.right, path + (1,), trace)
        if sl == "yes" and sr == "yes":
            trace.append((path, "union-of-yes", "yes"))
            return "yes"
        # no closure rule covers union with a non-(P) part
        trace.append((path, "union-underived", "unknown"))
        return "unknown"
    if isinstance(e, Translate):
        s = _decide(e.inner, path + (0,), trace)
        if s == "yes":
            trace.append((path, "translate-of-yes", "yes"))
            return "yes"
        trace.append((path, "translate-underived", "unknown"))
        return "unknown"
    if isinstance(e, ProductWithFull):
        s = _decide(e.inner, path + (0,), trace)
        if s == "yes":
            trace.append((path, "product-with-full-axis", "yes"))
            return "yes"
        trace.append((path, "product-underived", "unknown"))
        return "unknown"
    if isinstance(e, Complement):
        s = _decide(e.inner, path + (0,), trace)
        if s == "yes":
            trace.append((path, "complement-of-yes", "no"))
            return "no"
        trace.append((path, "complement-underived", "unknown"))
        return "unknown"
    raise TypeError(f"not a set expression: {e!r}")


def property_p(e: SetExpr) -> PVerdict:
    """Tri-state verdict with a replayable rule trace.

    yes and no are only ever produced by the sound rules listed in the
    module docstring; anything underivable is unknown."""
    dim(e)  # validates dimensions throughout
    trace: list[TraceStep] = []
    status = _decide(e, (), trace)
    return PVerdict(status=status, trace=tuple(trace))


def replay(e: SetExpr, trace) -> str:
    """Re-derive a verdict using only the recorded rule at each node.

    Walks the expression, checks that each recorded rule applies to the
    node it points at (given the replayed child statuses), and returns
    the root status.  Raises ValueError on any mismatch."""
    steps = {tuple(path): (rule, status) for path, rule, status in trace}

    def walk(node: SetExpr, path: tuple[int, ...]) -> str:
        if path not in steps:
            raise ValueError(f"trace has no step for node at path {path}")
        rule, status = steps[path]
        if isinstance(node, Finite):
            expected = ("finite", "yes")
        elif isinstance(node, Full):
            expected = ("full-grid", "no")
        elif isinstance(node, Union):
            sl, sr = walk(node.left, path + (0,)), walk(node.right, path + (1,))
            expected = (
                ("union-of-yes", "yes")
                if sl == "yes" and sr == "yes"
                else ("union-underived", "unknown")
            )
        elif isinstance(node, Translate):
            s = walk(node.inner, path + (0,))
            expected = (
                ("translate-of-yes", "yes") if s == "yes" else ("translate-underived", "unknown")
            )
        elif isinstance(node, ProductWithFull):
            s = walk(node.inner, path + (0,))
            expected = (
                ("product-with-full-axis", "yes")
                if s == "yes"
                else ("product-underived", "unknown")
            )
        elif isinstance(node, Complement):
            s = walk(node.inner, path + (0,))
            expected = (
                ("complement-of-yes", "no") if s == "yes" else ("complement-underived", "unknown")
            )
        else:
            raise TypeError(f"not a set expression: {node!r}")
        if (rule, status) != expected:
            raise ValueError(
                f"trace step {rule!r}/{status!r} at {path} does not replay "
                f"(expected {expected[0]!r}/{expected[1]!r})"
            )
        return status

    return walk(e, ())


def divergence_probe(e, axis: int, r_rest, cutoff: int) -> float:
    """Partial sum sum_{s <= cutoff, slice member} 1/(s+1) along `axis`
    through the cross-section r_rest (a point of N_*^(n-1)).

    A diagnostic for the slice series behind property (P) — never a
    proof, since no finite partial sum certifies divergence.  `e` may be
    a set expression or a membership predicate.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    member = (lambda r: contains(e, r)) if not callable(e) else e
    r_rest = tuple(int(c) for c in r_rest)
    total = 0.0
    for s in range(1, cutoff + 1):
        point = r_rest[:axis] + (s,) + r_rest[axis:]
        if member(point):
            total += 1.0 / (s + 1.0)
    return total


def zero_set_prefix(
    p: SpaceParams,
    f: MonomialCombo,
    l,
    D: int,
    *,
    weighted: bool = False,
) -> set[MultiIndex]:
    """The degree <= D prefix of Z(f, l): all m with m + l in the cone and
    int f(z) z^(m+l) conj(z)^m dnu = 0.

    By monomial orthogonality the integral reduces to the terms of f with
    a - b = -l, each contributing c times a single monomial moment, so
    membership is decided on an exact closed-form sum (|sum| <= 1e-14).
    The plain Lebesgue measure nu is used unless `weighted`, which
    switches to the (1-|z|^2)^alpha-weighted variant.
    """
    l = tuple(int(c) for c in l)
    if f.n != p.n or len(l) != p.n:
        raise ValueError("dimension mismatch between params, symbol, and shift")
    moments = SpaceParams(p.n, p.alpha if weighted else 0.0)
    relevant = [
        (b, c) for a, b, c in f.terms
        if tuple(x - y for x, y in zip(a, b)) == tuple(-x for x in l)
    ]
    out: set[MultiIndex] = set()
    for m in enumerate_multiindices(p.n, D):
        if any(x + y < 0 for x, y in zip(m, l)):
            continue
        total = 0.0 + 0.0j
        for b, c in relevant:
            q = tuple(x + y for x, y in zip(m, b))
            total += c * ball_monomial_integral(moments, q)
        if abs(total) <= 1e-14:
            out.add(m)
    return out
