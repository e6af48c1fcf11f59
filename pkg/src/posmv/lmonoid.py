"""Finite windows onto unital commutative distributive l-monoids, and Γ.

The l-monoids of interest are infinite, so everything here works on a
bounded piece of them.  A :class:`WindowedLMonoid` is the grid
``{k/d : -N <= k/d <= N}`` of the l-group ``(1/d)Z``; ``+`` is partial (a sum
leaving the window is undefined) and quantified checks skip any instance
that touches an undefined sum.  A pass on a window is therefore evidence,
not proof, for the infinite structure.  The unit interval and Γ are the
exception: they sit inside the window as soon as it covers [-1, 2].

Arbitrary finite partial tables can be supplied as :class:`PartialLMonoid`
(JSON: the algebra format with a ``"+"`` table allowing ``null`` entries and
a ``"-1"`` constant instead of the four positive-signature tables).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Mapping

from .algebra import AlgebraParseError, AlgebraValidationError, FiniteAlgebra
from .checker import Violation, check_cancellation

PTable = tuple[tuple["int | None", ...], ...]


class ArchimedeanWarning(UserWarning):
    """U3 could not be certified inside a finite partial table."""


@dataclass(frozen=True)
class PartialLMonoid:
    """Finite carrier with partial ``+``, total join/meet and constants 0, 1, -1."""

    elements: tuple[str, ...]
    plus: PTable
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    neg_one: int
    u3_by_construction: bool = False
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise AlgebraValidationError("elements", "duplicate element")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})
        for name, partial in (("+", True), ("join", False), ("meet", False)):
            t = self.plus if name == "+" else getattr(self, name)
            if len(t) != n or any(len(r) != n for r in t):
                raise AlgebraValidationError(name, f"table must be {n}x{n}")
            for i, j in cartesian(range(n), repeat=2):
                v = t[i][j]
                if v is None and partial:
                    continue
                if not (isinstance(v, int) and 0 <= v < n):
                    raise AlgebraValidationError(
                        f"{name}({self.elements[i]},{self.elements[j]})", "not in carrier")
        for name in ("zero", "one", "neg_one"):
            if not 0 <= getattr(self, name) < n:
                raise AlgebraValidationError(name, "constant not in carrier")

    def __len__(self):
        return len(self.elements)

    def index(self, name: str) -> int:
        return self._index[name]

    def leq(self, i: int, j: int) -> bool:
        return self.join[i][j] == j

    def add(self, i: int | None, j: int | None) -> int | None:
        if i is None or j is None:
            return None
        return self.plus[i][j]


def load_lmonoid(source: str | Mapping) -> PartialLMonoid:
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise AlgebraParseError(f"malformed JSON: {exc}") from None
    if not isinstance(data, Mapping):
        raise AlgebraParseError("top level must be a JSON object")
    data = dict(data)
    if "−1" in data and "-1" not in data:
        data["-1"] = data.pop("−1")
    for key in ("elements", "zero", "one", "-1", "+", "join", "meet"):
        if key not in data:
            raise AlgebraValidationError(key, "field missing")
    names = list(data["elements"])
    idx = {e: i for i, e in enumerate(names)}

    def look(where, v, partial=False):
        if v is None and partial:
            return None
        if v not in idx:
            raise AlgebraValidationError(where, f"unknown element {v!r}")
        return idx[v]

    def tab(key, partial=False):
        rows = data[key]
        if not isinstance(rows, list) or len(rows) != len(names):
            raise AlgebraValidationError(key, f"expected {len(names)} rows")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != len(names):
                raise AlgebraValidationError(f"{key}({names[i]},*)", f"expected {len(names)} entries")
            out.append(tuple(look(f"{key}({names[i]},{names[j]})", v, partial)
                             for j, v in enumerate(row)))
        return tuple(out)

    return PartialLMonoid(tuple(names), tab("+", True), tab("join"), tab("meet"),
                          look("zero", data["zero"]), look("one", data["one"]),
                          look("-1", data["-1"]))


def dump_lmonoid(m: PartialLMonoid) -> str:
    e = m.elements

    def rows(t):
        return [[None if v is None else e[v] for v in r] for r in t]

    return json.dumps({"elements": list(e), "zero": e[m.zero], "one": e[m.one],
                       "-1": e[m.neg_one], "+": rows(m.plus), "join": rows(m.join),
                       "meet": rows(m.meet)}, indent=1, ensure_ascii=False)


@dataclass(frozen=True)
class WindowedLMonoid:
    """The grid ``(1/d)Z`` cut to ``[-N, N]``."""

    denominator: int
    radius: int

    def __post_init__(self):
        if self.denominator < 1 or self.radius < 1:
            raise ValueError("denominator and radius must be positive")

    @property
    def bound(self) -> int:
        """Largest numerator in the window."""
        return self.radius * self.denominator

    def numerators(self) -> range:
        return range(-self.bound, self.bound + 1)

    def value(self, k: int) -> Fraction:
        return Fraction(k, self.denominator)

    def name(self, k: int) -> str:
        return str(Fraction(k, self.denominator))

    def contains(self, k: int) -> bool:
        return -self.bound <= k <= self.bound

    def widened(self, radius: int) -> "WindowedLMonoid":
        return WindowedLMonoid(self.denominator, max(self.radius, radius))

    def to_partial(self) -> PartialLMonoid:
        ks = list(self.numerators())
        off = self.bound
        plus = tuple(tuple(a + b + off if self.contains(a + b) else None for b in ks) for a in ks)
        join = tuple(tuple(max(a, b) + off for b in ks) for a in ks)
        meet = tuple(tuple(min(a, b) + off for b in ks) for a in ks)
        d = self.denominator
        return PartialLMonoid(tuple(self.name(k) for k in ks), plus, join, meet,
                              off, off + d, off - d, u3_by_construction=True)


def _as_partial(m) -> PartialLMonoid:
    return m.to_partial() if isinstance(m, WindowedLMonoid) else m


def _m_checks(m: PartialLMonoid):
    """(id, arity, fn) triples; fn returns (lhs, rhs) or None when undefined."""
    J, M, add = m.join, m.meet, m.add
    z = m.zero
    return [
        ("M1.join-comm", 2, lambda x, y: (J[x][y], J[y][x])),
        ("M1.meet-comm", 2, lambda x, y: (M[x][y], M[y][x])),
        ("M1.join-assoc", 3, lambda x, y, w: (J[J[x][y]][w], J[x][J[y][w]])),
        ("M1.meet-assoc", 3, lambda x, y, w: (M[M[x][y]][w], M[x][M[y][w]])),
        ("M1.join-idem", 1, lambda x: (J[x][x], x)),
        ("M1.meet-idem", 1, lambda x: (M[x][x], x)),
        ("M1.absorb-join", 2, lambda x, y: (J[x][M[x][y]], x)),
        ("M1.absorb-meet", 2, lambda x, y: (M[x][J[x][y]], x)),
        ("M1.distrib-meet", 3, lambda x, y, w: (M[x][J[y][w]], J[M[x][y]][M[x][w]])),
        ("M1.distrib-join", 3, lambda x, y, w: (J[x][M[y][w]], M[J[x][y]][J[x][w]])),
        ("M2.plus-comm", 2, lambda x, y: (add(x, y), add(y, x))),
        ("M2.plus-assoc", 3, lambda x, y, w: (add(add(x, y), w), add(x, add(y, w)))),
        ("M2.plus-unit", 1, lambda x: (add(x, z), x)),
        ("M3.plus-join-l", 3, lambda x, y, w: (add(x, J[y][w]), _j(J, add(x, y), add(x, w)))),
        ("M3.plus-join-r", 3, lambda x, y, w: (add(J[y][w], x), _j(J, add(y, x), add(w, x)))),
        ("M3.plus-meet-l", 3, lambda x, y, w: (add(x, M[y][w]), _j(M, add(x, y), add(x, w)))),
        ("M3.plus-meet-r", 3, lambda x, y, w: (add(M[y][w], x), _j(M, add(y, x), add(w, x)))),
    ]


def _j(t, a, b):
    return None if a is None or b is None else t[a][b]


def check_m_axioms(m: WindowedLMonoid | PartialLMonoid, strict_u3: bool = False) -> list[Violation]:
    """First failure of each lattice/monoid/unit axiom over defined instances.

    Instances involving an undefined sum are skipped.  U3 is satisfied by
    construction on grid windows; for other tables it is certified when
    every element lies between some defined n(-1) and n1, otherwise an
    :class:`ArchimedeanWarning` is issued (or a ``U3`` violation with
    ``strict_u3``).
    """
    p = _as_partial(m)
    e = p.elements
    names = ("x", "y", "z")
    out = []
    for axiom_id, arity, fn in _m_checks(p):
        for args in cartesian(range(len(p)), repeat=arity):
            r = fn(*args)
            if r[0] is None or r[1] is None or r[0] == r[1]:
                continue
            env = {names[i]: e[a] for i, a in enumerate(args)}
            out.append(Violation(axiom_id, env, e[r[0]], e[r[1]]))
            break
    s = p.add(p.neg_one, p.one)
    if s != p.zero:
        out.append(Violation("U1", {}, "undefined" if s is None else e[s], e[p.zero]))
    for lo, hi, label in ((p.neg_one, p.zero, "U2.-1<=0"), (p.zero, p.one, "U2.0<=1")):
        if not p.leq(lo, hi):
            out.append(Violation(label, {}, e[p.join[lo][hi]], e[hi]))
    if not p.u3_by_construction:
        bad = uncertified_u3(p)
        if bad:
            msg = f"U3 not certified for {', '.join(e[x] for x in bad)}"
            if strict_u3:
                out.append(Violation("U3", {"x": e[bad[0]]}, "unbounded", "bounded"))
            else:
                warnings.warn(msg, ArchimedeanWarning, stacklevel=2)
    return out


def uncertified_u3(p: PartialLMonoid) -> list[int]:
    """Elements x with no defined n such that n(-1) <= x <= n1."""
    ups, downs = [p.one], [p.neg_one]
    while len(ups) <= len(p):
        u, d = p.add(ups[-1], p.one), p.add(downs[-1], p.neg_one)
        if u is None or d is None:
            break
        ups.append(u)
        downs.append(d)
    return [x for x in range(len(p))
            if not any(p.leq(d, x) and p.leq(x, u) for u, d in zip(ups, downs))]


def gamma(m: WindowedLMonoid | PartialLMonoid) -> FiniteAlgebra:
    """Unit interval ``{x : 0 <= x <= 1}`` with ``x + y := (x + y) & 1`` and
    ``x . y := (x + y + (-1)) | 0``; lattice operations and constants restricted.

    Grid windows are first widened to radius 2 so that ``x + y`` stays defined.
    """
    if isinstance(m, WindowedLMonoid):
        m = m.widened(2)
    p = _as_partial(m)
    unit = [x for x in range(len(p)) if p.leq(p.zero, x) and p.leq(x, p.one)]
    pos = {x: i for i, x in enumerate(unit)}

    def sum_(x, y):
        s = p.add(x, y)
        if s is None:
            raise ValueError(f"{p.elements[x]} + {p.elements[y]} undefined; window too small")
        return s

    def truncated_sum(x, y):
        return p.meet[sum_(x, y)][p.one]

    def truncated_prod(x, y):
        return p.join[sum_(sum_(x, y), p.neg_one)][p.zero]

    def tab(f):
        return tuple(tuple(pos[f(x, y)] for y in unit) for x in unit)

    return FiniteAlgebra(tuple(p.elements[x] for x in unit), tab(truncated_sum),
                         tab(truncated_prod), tab(lambda x, y: p.join[x][y]),
                         tab(lambda x, y: p.meet[x][y]), pos[p.zero], pos[p.one])


@dataclass(frozen=True)
class CancellativityReport:
    """The three cancellativity conditions on one window.

    ``cond_general`` quantifies over in-window triples only ("windowed").
    """

    cond_general: bool
    cond_unit_interval: bool
    cond_gamma: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return (self.cond_unit_interval == self.cond_gamma
                and (not self.cond_general or self.cond_unit_interval))

    def to_dict(self) -> dict:
        return {"cond_general_windowed": self.cond_general,
                "cond_unit_interval": self.cond_unit_interval,
                "cond_gamma": self.cond_gamma, "consistent": self.consistent,
                "witnesses": self.witnesses}


def _cancel_witness(p: PartialLMonoid, carrier):
    for z in carrier:
        for y in carrier:
            for x in carrier:
                if x == y:
                    continue
                s, t = p.add(x, z), p.add(y, z)
                if s is not None and s == t:
                    return {"x": p.elements[x], "y": p.elements[y], "z": p.elements[z]}
    return None


def check_cancellativity_equivalence(m: WindowedLMonoid | PartialLMonoid) -> CancellativityReport:
    p = _as_partial(m)
    carrier = range(len(p))
    unit = [x for x in carrier if p.leq(p.zero, x) and p.leq(x, p.one)]
    w1 = _cancel_witness(p, carrier)
    w2 = _cancel_witness(p, unit)
    v3 = check_cancellation(gamma(m))
    witnesses = {}
    if w1:
        witnesses["general"] = w1
    if w2:
        witnesses["unit_interval"] = w2
    if v3 is not None:
        witnesses["gamma"] = dict(v3.assignment)
    return CancellativityReport(w1 is None, w2 is None, v3 is None, witnesses)


def strip(m: WindowedLMonoid, k: int, n: int) -> int:
    """Numerator of ``((x - n) | 0) & 1`` for ``x = k/d``, computed in ``(1/d)Z``."""
    d = m.denominator
    return min(max(k - n * d, 0), d)


def separating_shift(m: WindowedLMonoid, k1: int, k2: int) -> int | None:
    """Smallest-magnitude integer ``n`` with ``|n| <= N`` whose strip separates
    ``k1/d`` and ``k2/d``; None if they are not separated."""
    for n in sorted(range(-m.radius, m.radius + 1), key=lambda n: (abs(n), n)):
        if strip(m, k1, n) != strip(m, k2, n):
            return n
    return None
