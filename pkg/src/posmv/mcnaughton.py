"""Exact piecewise-linear semantics of positive terms on [0, 1].

One-variable terms evaluate in the standard algebra to continuous
piecewise-linear functions with integer coefficients (McNaughton
functions).  :class:`PLFunction` stores them exactly with rational
breakpoints, so equality of functions is decidable and the free algebra on
one generator can be enumerated up to a depth.  For two or more variables
only grid fingerprints are offered: unequal fingerprints prove two terms
distinct, equal ones do not prove them equal.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as cartesian
from typing import Sequence

import numpy as np

from .terms import Const, Op, Term, Var

ZERO, ONE = Fraction(0), Fraction(1)
DEFAULT_MAX_DEPTH = 5
DEFAULT_MAX_CANDIDATES = 2_000_000
DEFAULT_GRID_BUDGET = 10**7


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear map [0, 1] -> [0, 1].

    ``breakpoints`` runs from 0 to 1; piece ``i`` is ``slope*x + intercept``
    on ``[breakpoints[i], breakpoints[i+1]]``.  Instances are kept canonical
    (no two adjacent pieces collinear), so ``==`` is equality of functions.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[int, int], ...]

    def __post_init__(self):
        bp, pc = self.breakpoints, self.pieces
        if len(bp) != len(pc) + 1 or bp[0] != 0 or bp[-1] != 1:
            raise ValueError("breakpoints must run from 0 to 1, one more than pieces")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must increase strictly")
        for i, (a, b) in enumerate(pc):
            if not (isinstance(a, int) and isinstance(b, int)):
                raise ValueError("pieces need integer slope and intercept")
            if i and _affine(pc[i - 1], bp[i]) != _affine(pc[i], bp[i]):
                raise ValueError(f"discontinuous at {bp[i]}")
            if i and pc[i - 1] == pc[i]:
                raise ValueError("adjacent pieces must differ (canonical form)")
        if any(not 0 <= self(x) <= 1 for x in bp):
            raise ValueError("values must stay in [0, 1]")

    @classmethod
    def constant(cls, c: int) -> "PLFunction":
        return cls((ZERO, ONE), ((0, c),))

    @classmethod
    def identity(cls) -> "PLFunction":
        return cls((ZERO, ONE), ((1, 0),))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("argument outside [0, 1]")
        i = min(bisect.bisect_right(self.breakpoints, x) - 1, len(self.pieces) - 1)
        return _affine(self.pieces[i], x)

    def sort_key(self):
        return (len(self.pieces), self.breakpoints, self.pieces)

    def __str__(self):
        parts = []
        for (l, r), (a, b) in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            parts.append(f"[{l},{r}]: {a}x{b:+d}")
        return "; ".join(parts)


def _affine(piece, x):
    a, b = piece
    return a * x + b


def _canonical(bp: list[Fraction], pieces: list[tuple[int, int]]) -> PLFunction:
    out_bp, out_pc = [bp[0]], []
    for i, p in enumerate(pieces):
        if out_pc and out_pc[-1] == p:
            out_bp[-1] = bp[i + 1]
        else:
            out_pc.append(p)
            out_bp.append(bp[i + 1])
    return PLFunction(tuple(out_bp), tuple(out_pc))


def _pick(p, q, lo, hi, take_max):
    """Pieces of max/min(p, q) on [lo, hi], splitting at an interior crossing."""
    (a1, b1), (a2, b2) = p, q
    if a1 != a2:
        c = Fraction(b2 - b1, a1 - a2)
        if lo < c < hi:
            return [(lo, _choose(p, q, (lo + c) / 2, take_max)),
                    (c, _choose(p, q, (c + hi) / 2, take_max))]
    return [(lo, _choose(p, q, (lo + hi) / 2, take_max))]


def _choose(p, q, x, take_max):
    vp, vq = _affine(p, x), _affine(q, x)
    if take_max:
        return p if vp >= vq else q
    return p if vp <= vq else q


def pl_binary(op: str, f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise ``+`` (truncated sum), ``.`` (truncated product), ``|`` or ``&``."""
    grid = sorted(set(f.breakpoints) | set(g.breakpoints))
    bp: list[Fraction] = []
    pieces: list[tuple[int, int]] = []
    i = j = 0
    for lo, hi in zip(grid, grid[1:]):
        while f.breakpoints[i + 1] <= lo:
            i += 1
        while g.breakpoints[j + 1] <= lo:
            j += 1
        (a1, b1), (a2, b2) = f.pieces[i], g.pieces[j]
        if op == "+":
            chunk = _pick((a1 + a2, b1 + b2), (0, 1), lo, hi, take_max=False)
        elif op == ".":
            chunk = _pick((a1 + a2, b1 + b2 - 1), (0, 0), lo, hi, take_max=True)
        elif op == "|":
            chunk = _pick(f.pieces[i], g.pieces[j], lo, hi, take_max=True)
        elif op == "&":
            chunk = _pick(f.pieces[i], g.pieces[j], lo, hi, take_max=False)
        else:
            raise ValueError(f"unknown operation {op!r}")
        for start, piece in chunk:
            bp.append(start)
            pieces.append(piece)
    bp.append(ONE)
    return _canonical(bp, pieces)


def pl_of_term(t: Term) -> PLFunction:
    """Exact function of a one-variable term in the standard algebra."""
    if isinstance(t, Op):
        return pl_binary(t.sym, pl_of_term(t.left), pl_of_term(t.right))
    if isinstance(t, Const):
        return PLFunction.constant(t.value)
    if t.index != 0:
        raise ValueError("pl_of_term handles the single variable x0 only")
    return PLFunction.identity()


def is_nondecreasing(f: PLFunction) -> bool:
    return all(a >= 0 for a, _ in f.pieces)


def eval_standard(t: Term, point: Sequence) -> Fraction:
    """Value of ``t`` at a point of [0, 1]^n, by the truncation formulas."""
    if isinstance(t, Op):
        x, y = eval_standard(t.left, point), eval_standard(t.right, point)
        if t.sym == "+":
            return min(x + y, ONE)
        if t.sym == ".":
            return max(x + y - 1, ZERO)
        return max(x, y) if t.sym == "|" else min(x, y)
    if isinstance(t, Const):
        return Fraction(t.value)
    return Fraction(point[t.index])


@dataclass(frozen=True)
class GridFingerprint:
    denominator: int
    nvars: int
    values: tuple[Fraction, ...]

    def __len__(self):
        return len(self.values)


def grid_fingerprint(t: Term, nvars: int, denominator: int,
                     budget: int = DEFAULT_GRID_BUDGET) -> GridFingerprint:
    """Exact values of ``t`` at every point of ``{0, 1/D, ..., 1}^n``.

    Points are listed with the last coordinate varying fastest.  Used as a
    semi-decision for distinctness when ``n >= 2``.
    """
    if nvars < 1 or denominator < 1:
        raise ValueError("need nvars >= 1 and denominator >= 1")
    count = (denominator + 1) ** nvars
    if count > budget:
        raise EnumerationTooLarge(f"{count} grid points exceed budget {budget}")
    grid = [Fraction(k, denominator) for k in range(denominator + 1)]
    vals = tuple(eval_standard(t, p) for p in cartesian(grid, repeat=nvars))
    return GridFingerprint(denominator, nvars, vals)


def safe_denominator(depth: int) -> int:
    """A grid denominator that separates all one-variable functions of depth <= ``depth``.

    Pieces of such functions have integer slopes in [0, 2**depth], so every
    breakpoint is a crossing with a denominator at most 2**depth.  Two
    distinct functions differ at a common breakpoint, hence on the grid
    ``{k / lcm(1..2**depth)}``.
    """
    return reduce(math.lcm, range(1, 2 ** depth + 1), 1)


@dataclass
class FreeEnumeration:
    """Distinct functions found per depth, with one witness term each."""

    functions: dict  # PLFunction -> Term
    levels: list  # list of per-depth new functions
    terms_generated: list  # number of syntactic terms of depth <= d
    candidates: list  # operation applications actually evaluated at depth d

    def distinct(self, d: int) -> int:
        return sum(len(level) for level in self.levels[: d + 1])

    def sorted_functions(self) -> list[PLFunction]:
        return sorted(self.functions, key=PLFunction.sort_key)


def count_terms(depth: int, nvars: int = 1) -> int:
    """Number of syntactic terms of depth at most ``depth``."""
    t = nvars + 2
    for _ in range(depth):
        t = nvars + 2 + 4 * t * t
    return t


_OPS = ("+", ".", "|", "&")


def enumerate_free(nvars: int = 1, depth: int = 3, max_depth: int = DEFAULT_MAX_DEPTH,
                   max_candidates: int = DEFAULT_MAX_CANDIDATES) -> FreeEnumeration:
    """Distinct one-variable functions of all terms of depth <= ``depth``.

    Depth counts nested operation nodes; constants and the variable have
    depth 0.  Since a term's function depends only on the functions of its
    arguments, level ``d`` is obtained by applying each operation to pairs
    of level ``< d`` functions where at least one is new at ``d - 1``.
    """
    if nvars != 1:
        raise ValueError("exact enumeration is one-variable only; use grid dedup for more")
    if depth > max_depth:
        raise EnumerationTooLarge(f"depth {depth} exceeds configured bound {max_depth}")
    base = {PLFunction.constant(0): Const(0), PLFunction.constant(1): Const(1),
            PLFunction.identity(): Var(0)}
    known = dict(base)
    levels = [sorted(base, key=PLFunction.sort_key)]
    candidates = [0]
    for _ in range(depth):
        old = sorted(known, key=PLFunction.sort_key)
        fresh = set(levels[-1])
        pairs = [(f, g) for i, f in enumerate(old) for g in old[i:] if f in fresh or g in fresh]
        if len(pairs) * len(_OPS) > max_candidates:
            raise EnumerationTooLarge(
                f"{len(pairs) * len(_OPS)} candidates exceed limit {max_candidates}")
        new = {}
        for f, g in pairs:
            for op in _OPS:
                h = pl_binary(op, f, g)
                if h not in known and h not in new:
                    new[h] = Op(op, known[f], known[g])
        known.update(new)
        levels.append(sorted(new, key=PLFunction.sort_key))
        candidates.append(len(pairs) * len(_OPS))
    return FreeEnumeration(known, levels, [count_terms(d) for d in range(depth + 1)], candidates)


def grid_axis(denominator: int, max_point_denominator: int | None = None) -> np.ndarray:
    """Numerators ``k`` of grid points ``k/D``, optionally only those whose
    reduced denominator is at most ``max_point_denominator``."""
    ks = np.arange(denominator + 1, dtype=np.int64)
    if max_point_denominator is not None:
        ks = ks[denominator // np.gcd(ks, denominator) <= max_point_denominator]
    return ks


def grid_dedup_counts(depth: int, denominator: int, nvars: int = 1,
                      max_point_denominator: int | None = None,
                      budget: int = DEFAULT_GRID_BUDGET) -> list[int]:
    """Distinct-function counts per depth, deduplicating by grid values only.

    Works in the finite algebra of functions on the grid: each function is
    an integer vector of numerators over ``denominator``, with ``+`` as
    ``min(u + v, D)`` and ``.`` as ``max(u + v - D, 0)``.  Shares nothing with
    the piecewise-linear code.  For ``nvars >= 2`` the counts are lower
    bounds on the true counts.

    ``max_point_denominator`` keeps only grid points ``p/q`` (reduced) with
    ``q <= max_point_denominator``.  With ``D = safe_denominator(depth)`` and
    ``max_point_denominator = 2**depth`` every possible breakpoint is kept,
    so the counts equal those of the full grid at a fraction of the cost.
    """
    D = denominator
    axis = grid_axis(D, max_point_denominator)
    npts = len(axis) ** nvars
    if npts > budget:
        raise EnumerationTooLarge(f"{npts} grid points exceed budget {budget}")
    axes = np.meshgrid(*[axis] * nvars, indexing="ij")
    gens = [np.zeros(npts, np.int64), np.full(npts, D, np.int64)]
    gens += [ax.ravel() for ax in axes]

    def key(v):
        return v.tobytes()

    known = {}
    for g in gens:
        known.setdefault(key(g), g)
    fresh = list(known)
    counts = [len(known)]
    for _ in range(depth):
        old = list(known)
        fresh_set = set(fresh)
        new = {}
        for i, kf in enumerate(old):
            f = known[kf]
            for kg in old[i:]:
                if kf not in fresh_set and kg not in fresh_set:
                    continue
                g = known[kg]
                s = f + g
                for h in (np.minimum(s, D), np.maximum(s - D, 0),
                          np.maximum(f, g), np.minimum(f, g)):
                    k = key(h)
                    if k not in known and k not in new:
                        new[k] = h
        known.update(new)
        fresh = list(new)
        counts.append(len(known))
    return counts
