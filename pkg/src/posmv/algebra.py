"""Finite algebras over the positive MV signature and their JSON file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .terms import Const, Op, Term

TABLES = ("oplus", "odot", "join", "meet")
SYMBOL_TABLE = {"+": "oplus", ".": "odot", "|": "join", "&": "meet"}


class AlgebraError(ValueError):
    """Malformed or invalid algebra description."""


class AlgebraParseError(AlgebraError):
    pass


class AlgebraValidationError(AlgebraError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite algebra ``(A, +, ., |, &, 0, 1)`` with total operation tables.

    Elements are opaque string names; internally tables hold element indices
    in declaration order, so ``oplus[i][j]`` is the index of
    ``elements[i] + elements[j]``.
    """

    elements: tuple[str, ...]
    oplus: Table
    odot: Table
    join: Table
    meet: Table
    zero: int
    one: int
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise AlgebraValidationError("elements", "carrier is empty")
        index = {}
        for i, e in enumerate(self.elements):
            if not isinstance(e, str):
                raise AlgebraValidationError("elements", f"element name {e!r} is not a string")
            if e in index:
                raise AlgebraValidationError("elements", f"duplicate element {e!r}")
            index[e] = i
        object.__setattr__(self, "_index", index)
        for name in TABLES:
            table = getattr(self, name)
            if len(table) != n:
                raise AlgebraValidationError(name, f"expected {n} rows, got {len(table)}")
            for i, row in enumerate(table):
                if len(row) != n:
                    raise AlgebraValidationError(
                        f"{name}({self.elements[i]},*)", f"expected {n} entries, got {len(row)}")
                for j, v in enumerate(row):
                    if not (isinstance(v, int) and 0 <= v < n):
                        raise AlgebraValidationError(
                            f"{name}({self.elements[i]},{self.elements[j]})",
                            f"result {v!r} not in carrier")
        for name in ("zero", "one"):
            v = getattr(self, name)
            if not (isinstance(v, int) and 0 <= v < n):
                raise AlgebraValidationError(name, "constant not in carrier")

    @classmethod
    def from_names(cls, elements: Sequence[str], zero: str, one: str,
                   **tables: Sequence[Sequence[str]]) -> "FiniteAlgebra":
        """Build from tables written with element names."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise AlgebraValidationError("elements", f"duplicate element {dup!r}")

        def lookup(where, name):
            try:
                return index[name]
            except (KeyError, TypeError):
                raise AlgebraValidationError(where, f"unknown element {name!r}") from None

        converted = {}
        for name in TABLES:
            if name not in tables:
                raise AlgebraValidationError(name, "table missing")
            rows = tables[name]
            if not isinstance(rows, (list, tuple)) or len(rows) != len(elements):
                raise AlgebraValidationError(name, f"expected {len(elements)} rows")
            out = []
            for i, row in enumerate(rows):
                if not isinstance(row, (list, tuple)):
                    raise AlgebraValidationError(f"{name}({elements[i]},*)", "row is not a list")
                if len(row) < len(elements):
                    j = len(row)
                    raise AlgebraValidationError(f"{name}({elements[i]},{elements[j]})",
                                                 "missing entry")
                if len(row) > len(elements):
                    raise AlgebraValidationError(f"{name}({elements[i]},*)", "too many entries")
                out.append(tuple(lookup(f"{name}({elements[i]},{elements[j]})", v)
                                 for j, v in enumerate(row)))
            converted[name] = tuple(out)
        return cls(elements, zero=lookup("zero", zero), one=lookup("one", one), **converted)

    @classmethod
    def from_functions(cls, elements: Sequence[str], zero, one, oplus, odot, join, meet,
                       values: Sequence | None = None) -> "FiniteAlgebra":
        """Tabulate Python functions over ``values`` (default: the names themselves).

        Each function receives and returns values; results are mapped back
        through ``values`` to indices.
        """
        elements = tuple(elements)
        values = tuple(values) if values is not None else elements
        pos = {v: i for i, v in enumerate(values)}

        def tab(f):
            return tuple(tuple(pos[f(a, b)] for b in values) for a in values)

        return cls(elements, tab(oplus), tab(odot), tab(join), tab(meet),
                   zero=pos[zero], one=pos[one])

    def __len__(self):
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not an element") from None

    def table(self, sym: str) -> Table:
        return getattr(self, SYMBOL_TABLE.get(sym, sym))

    def op(self, sym: str, a: str, b: str) -> str:
        """Apply a binary operation to element names."""
        t = self.table(sym)
        return self.elements[t[self.index(a)][self.index(b)]]

    def leq(self, x: str, y: str) -> bool:
        return derived_leq(self, x, y)

    def to_dict(self) -> dict:
        names = self.elements

        def rows(t):
            return [[names[v] for v in row] for row in t]

        return {
            "elements": list(names),
            "zero": names[self.zero],
            "one": names[self.one],
            **{name: rows(getattr(self, name)) for name in TABLES},
        }

    def rename(self, mapping: Mapping[str, str] | Sequence[str]) -> "FiniteAlgebra":
        """Same tables, new element names."""
        if isinstance(mapping, Mapping):
            names = tuple(mapping[e] for e in self.elements)
        else:
            names = tuple(mapping)
        return FiniteAlgebra(names, self.oplus, self.odot, self.join, self.meet,
                             self.zero, self.one)

    def permute(self, order: Sequence[int]) -> "FiniteAlgebra":
        """Isomorphic copy whose i-th declared element is old element ``order[i]``."""
        inv = [0] * len(order)
        for new, old in enumerate(order):
            inv[old] = new

        def tab(t):
            return tuple(tuple(inv[t[order[i]][order[j]]] for j in range(len(order)))
                         for i in range(len(order)))

        return FiniteAlgebra(tuple(self.elements[o] for o in order),
                             tab(self.oplus), tab(self.odot), tab(self.join), tab(self.meet),
                             inv[self.zero], inv[self.one])


def load_algebra(source: str | bytes | Mapping) -> FiniteAlgebra:
    """Parse and validate an algebra from JSON text (or an already-decoded dict)."""
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise AlgebraParseError(f"malformed JSON: {exc}") from None
    if not isinstance(data, Mapping):
        raise AlgebraParseError("top level must be a JSON object")
    for key in ("elements", "zero", "one", *TABLES):
        if key not in data:
            raise AlgebraValidationError(key, "field missing")
    elements = data["elements"]
    if not isinstance(elements, list):
        raise AlgebraValidationError("elements", "must be a list of names")
    return FiniteAlgebra.from_names(elements, data["zero"], data["one"],
                                    **{name: data[name] for name in TABLES})


def dump_algebra(a: FiniteAlgebra, indent: int | None = 1) -> str:
    return json.dumps(a.to_dict(), indent=indent, ensure_ascii=False)


def eval_index(a: FiniteAlgebra, t: Term, env: Sequence[int]) -> int:
    """Evaluate ``t`` with variables bound to element indices."""
    if isinstance(t, Op):
        return a.table(t.sym)[eval_index(a, t.left, env)][eval_index(a, t.right, env)]
    if isinstance(t, Const):
        return a.one if t.value else a.zero
    try:
        return env[t.index]
    except (IndexError, KeyError):
        raise KeyError(f"unbound variable x{t.index}") from None


def eval_term(a: FiniteAlgebra, t: Term, env: Mapping[int, str] | Sequence[str]) -> str:
    """Evaluate ``t`` in ``a``; ``env`` maps variable index to element name."""
    if isinstance(env, Mapping):
        idx = {k: a.index(v) for k, v in env.items()}
    else:
        idx = [a.index(v) for v in env]
    return a.elements[eval_index(a, t, idx)]


def derived_leq(a: FiniteAlgebra, x: str, y: str) -> bool:
    """``x <= y`` in the order induced by join."""
    i, j = a.index(x), a.index(y)
    return a.join[i][j] == j


def algebra_fingerprint(a: FiniteAlgebra) -> str:
    """Canonical serialization: declared element order, tables row-major."""
    return json.dumps(a.to_dict(), separators=(",", ":"), ensure_ascii=False)
