"""Generators and combinators for finite algebras.

Łukasiewicz chains, the three-element Chang quotient, finite MV-algebras
with negation and their positive reducts, direct products, generated
subalgebras, congruences, quotients and a backtracking embedding search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .algebra import TABLES, AlgebraValidationError, FiniteAlgebra

DEFAULT_PRODUCT_MAX = 4096
CONGRUENCE_MAX = 8
DEFAULT_EMBED_BUDGET = 10**6


class SizeGuardError(ValueError):
    pass


class SearchBudgetExhausted(RuntimeError):
    """The embedding search gave up before deciding."""


def frac_name(q: Fraction) -> str:
    return str(q)


def luk_chain(n: int) -> FiniteAlgebra:
    """The subalgebra {0, 1/n, ..., 1} of the standard algebra on [0, 1]."""
    if n < 1:
        raise ValueError("luk_chain needs n >= 1")
    vals = [Fraction(k, n) for k in range(n + 1)]
    return FiniteAlgebra.from_functions(
        [frac_name(v) for v in vals], Fraction(0), Fraction(1),
        oplus=lambda x, y: min(x + y, Fraction(1)),
        odot=lambda x, y: max(x + y - 1, Fraction(0)),
        join=max, meet=min, values=vals)


def boolean2() -> FiniteAlgebra:
    return FiniteAlgebra.from_names(
        ["0", "1"], "0", "1",
        oplus=[["0", "1"], ["1", "1"]],
        odot=[["0", "0"], ["0", "1"]],
        join=[["0", "1"], ["1", "1"]],
        meet=[["0", "0"], ["0", "1"]])


def trivial() -> FiniteAlgebra:
    """The one-element algebra (0 = 1)."""
    t = ((0,),)
    return FiniteAlgebra(("0",), t, t, t, t, 0, 0)


EPS = "ε"


def chang_quotient_witness() -> FiniteAlgebra:
    """Three-element chain 0 < ε < 1 with ε + ε = ε and ε . ε = 0.

    An MV-monoidal algebra (a quotient of a positive subreduct of the Chang
    algebra) that is not a positive MV-algebra.
    """
    e = EPS
    return FiniteAlgebra.from_names(
        ["0", e, "1"], "0", "1",
        oplus=[["0", e, "1"], [e, e, "1"], ["1", "1", "1"]],
        odot=[["0", "0", "0"], ["0", "0", e], ["0", e, "1"]],
        join=[["0", e, "1"], [e, e, "1"], ["1", "1", "1"]],
        meet=[["0", "0", "0"], ["0", e, e], ["0", e, "1"]])


@dataclass(frozen=True)
class FiniteMVAlgebra:
    """A finite MV-algebra: a positive-signature algebra plus negation."""

    algebra: FiniteAlgebra
    neg: tuple[int, ...]

    def __post_init__(self):
        a, neg = self.algebra, self.neg
        n = len(a)
        if len(neg) != n or any(not (0 <= v < n) for v in neg):
            raise AlgebraValidationError("neg", "negation table must be total on the carrier")
        e = a.elements
        for x in range(n):
            if neg[neg[x]] != x:
                raise AlgebraValidationError("neg", f"¬¬{e[x]} != {e[x]}")
            if a.oplus[x][neg[a.zero]] != neg[a.zero]:
                raise AlgebraValidationError("oplus", f"{e[x]} ⊕ ¬0 != ¬0")
        p = a.oplus
        for x in range(n):
            for y in range(n):
                if p[neg[p[neg[x]][y]]][y] != p[neg[p[neg[y]][x]]][x]:
                    raise AlgebraValidationError(
                        "oplus", f"¬(¬x ⊕ y) ⊕ y is not symmetric at x={e[x]}, y={e[y]}")
        derived = _derived_tables(p, neg)
        if a.one != neg[a.zero]:
            raise AlgebraValidationError("one", "one must equal ¬0")
        for name in ("odot", "join", "meet"):
            if getattr(a, name) != derived[name]:
                raise AlgebraValidationError(name, "table differs from the derived operation")

    @classmethod
    def from_oplus_neg(cls, elements: Sequence[str], oplus, neg, zero: int) -> "FiniteMVAlgebra":
        """Complete ⊕, ¬, 0 (as index tables) with the derived 1, ⊙, ∨, ∧."""
        oplus = tuple(tuple(r) for r in oplus)
        neg = tuple(neg)
        d = _derived_tables(oplus, neg)
        alg = FiniteAlgebra(tuple(elements), oplus, d["odot"], d["join"], d["meet"],
                            zero, neg[zero])
        return cls(alg, neg)

    def __len__(self):
        return len(self.algebra)


def _derived_tables(p, neg):
    n = len(neg)
    r = range(n)
    odot = tuple(tuple(neg[p[neg[x]][neg[y]]] for y in r) for x in r)
    join = tuple(tuple(p[odot[x][neg[y]]][y] for y in r) for x in r)
    meet = tuple(tuple(neg[join[neg[x]][neg[y]]] for y in r) for x in r)
    return {"odot": odot, "join": join, "meet": meet}


def mv_chain(n: int) -> FiniteMVAlgebra:
    """Łukasiewicz chain {0, 1/n, ..., 1} with negation 1 - x."""
    if n < 1:
        raise ValueError("mv_chain needs n >= 1")
    names = [frac_name(Fraction(k, n)) for k in range(n + 1)]
    oplus = [[min(i + j, n) for j in range(n + 1)] for i in range(n + 1)]
    return FiniteMVAlgebra.from_oplus_neg(names, oplus, [n - i for i in range(n + 1)], 0)


def positive_reduct(m: FiniteMVAlgebra) -> FiniteAlgebra:
    """Forget negation."""
    return m.algebra


def _pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


def product(a: FiniteAlgebra, b: FiniteAlgebra, max_size: int = DEFAULT_PRODUCT_MAX) -> FiniteAlgebra:
    """Direct product with componentwise operations.

    Elements are ordered lexicographically, left factor first, and named
    ``(x,y)``.
    """
    na, nb = len(a), len(b)
    if na * nb > max_size:
        raise SizeGuardError(f"product would have {na * nb} elements (limit {max_size})")
    names = tuple(_pair_name(x, y) for x in a.elements for y in b.elements)

    def tab(ta, tb):
        return tuple(
            tuple(ta[i // nb][j // nb] * nb + tb[i % nb][j % nb] for j in range(na * nb))
            for i in range(na * nb))

    tables = {name: tab(getattr(a, name), getattr(b, name)) for name in TABLES}
    return FiniteAlgebra(names, zero=a.zero * nb + b.zero, one=a.one * nb + b.one, **tables)


def mv_product(m: FiniteMVAlgebra, k: FiniteMVAlgebra) -> FiniteMVAlgebra:
    alg = product(m.algebra, k.algebra)
    nb = len(k)
    neg = tuple(m.neg[i // nb] * nb + k.neg[i % nb] for i in range(len(alg)))
    return FiniteMVAlgebra(alg, neg)


def finite_mv_algebras(max_size: int) -> Iterator[FiniteMVAlgebra]:
    """One representative of every finite MV-algebra with at most ``max_size`` elements.

    Finite MV-algebras are exactly finite products of Łukasiewicz chains;
    factor lists are taken in nondecreasing order to skip isomorphic repeats.
    """
    def factorizations(limit, smallest):
        yield []
        for n in range(smallest, limit):
            if n + 1 > limit:
                break
            for rest in factorizations(limit // (n + 1), n):
                yield [n, *rest]

    for factors in factorizations(max_size, 1):
        if not factors:
            continue
        m = mv_chain(factors[0])
        for f in factors[1:]:
            m = mv_product(m, mv_chain(f))
        yield m


def subalgebra_closure(a: FiniteAlgebra, seed: Iterable[str]) -> list[int]:
    """Indices (in declared order) of the least subuniverse containing seed, 0 and 1."""
    have = {a.index(s) for s in seed} | {a.zero, a.one}
    frontier = list(have)
    tables = [getattr(a, name) for name in TABLES]
    while frontier:
        new = []
        for x in frontier:
            for y in list(have):
                for t in tables:
                    for v in (t[x][y], t[y][x]):
                        if v not in have:
                            have.add(v)
                            new.append(v)
        frontier = new
    return sorted(have)


def restrict(a: FiniteAlgebra, keep: Sequence[int]) -> FiniteAlgebra:
    """Subalgebra on the given closed set of indices, declared order kept."""
    pos = {old: new for new, old in enumerate(keep)}
    try:
        tables = {name: tuple(tuple(pos[getattr(a, name)[i][j]] for j in keep) for i in keep)
                  for name in TABLES}
        return FiniteAlgebra(tuple(a.elements[i] for i in keep), zero=pos[a.zero],
                             one=pos[a.one], **tables)
    except KeyError:
        raise ValueError("index set is not closed under the operations") from None


def subalgebra_generated(a: FiniteAlgebra, seed: Iterable[str]) -> FiniteAlgebra:
    return restrict(a, subalgebra_closure(a, seed))


def all_subalgebras(a: FiniteAlgebra, max_size: int | None = None,
                    max_seed: int | None = None) -> list[FiniteAlgebra]:
    """Every subalgebra, from ``subalgebra_generated`` over every seed set.

    ``max_seed`` caps the seed size (all seeds by default).  Results are
    deduplicated by carrier and ordered by size, then declared order.
    """
    seen = {}
    top = len(a) if max_seed is None else min(max_seed, len(a))
    for r in range(top + 1):
        for seed in itertools.combinations(a.elements, r):
            s = subalgebra_generated(a, seed)
            if max_size is None or len(s) <= max_size:
                seen.setdefault(tuple(a.index(e) for e in s.elements), s)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


@dataclass(frozen=True)
class Congruence:
    """A partition of the carrier, as tuples of element indices."""

    blocks: tuple[tuple[int, ...], ...]

    def block_of(self) -> list[int]:
        n = sum(len(b) for b in self.blocks)
        out = [0] * n
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x] = k
        return out

    def is_compatible(self, a: FiniteAlgebra) -> bool:
        return _compatible(a, self.block_of())

    def named(self, a: FiniteAlgebra) -> list[list[str]]:
        return [[a.elements[x] for x in b] for b in self.blocks]


def _compatible(a: FiniteAlgebra, label: Sequence[int]) -> bool:
    n = len(a)
    tables = [getattr(a, name) for name in TABLES]
    # Enough to vary one argument at a time: x θ x' implies f(x,y) θ f(x',y).
    for x in range(n):
        for x2 in range(x + 1, n):
            if label[x] != label[x2]:
                continue
            for t in tables:
                rx, rx2 = t[x], t[x2]
                for y in range(n):
                    if label[rx[y]] != label[rx2[y]] or label[t[y][x]] != label[t[y][x2]]:
                        return False
    return True


def _partial_compatible(a, label, upto):
    """Check compatibility among elements 0..upto whose images are also labelled."""
    tables = [getattr(a, name) for name in TABLES]
    for x in range(upto + 1):
        for x2 in range(x + 1, upto + 1):
            if label[x] != label[x2]:
                continue
            for t in tables:
                for y in range(len(a)):
                    for u, v in ((t[x][y], t[x2][y]), (t[y][x], t[y][x2])):
                        if u <= upto and v <= upto and label[u] != label[v]:
                            return False
    return True


def congruences(a: FiniteAlgebra, max_size: int = CONGRUENCE_MAX) -> list[Congruence]:
    """All congruences, via restricted-growth strings with early pruning."""
    n = len(a)
    if n > max_size:
        raise SizeGuardError(f"congruence enumeration limited to {max_size} elements, got {n}")
    out = []
    label = [0] * n

    def extend(i, nblocks):
        if i == n:
            if _compatible(a, label):
                blocks = [[] for _ in range(nblocks)]
                for x, b in enumerate(label):
                    blocks[b].append(x)
                out.append(Congruence(tuple(tuple(b) for b in blocks)))
            return
        for b in range(nblocks + 1):
            label[i] = b
            if _partial_compatible(a, label, i):
                extend(i + 1, max(nblocks, b + 1))

    extend(0, 0)
    return out


def quotient(a: FiniteAlgebra, c: Congruence) -> FiniteAlgebra:
    """Quotient algebra; each block is named ``{e1,e2,...}`` (singletons keep their name)."""
    label = c.block_of()
    if len(label) != len(a) or not _compatible(a, label):
        raise ValueError("partition is not a congruence of this algebra")
    reps = [b[0] for b in c.blocks]
    names = tuple(a.elements[b[0]] if len(b) == 1 else "{" + ",".join(a.elements[x] for x in b) + "}"
                  for b in c.blocks)
    tables = {name: tuple(tuple(label[getattr(a, name)[r][s]] for s in reps) for r in reps)
              for name in TABLES}
    return FiniteAlgebra(names, zero=label[a.zero], one=label[a.one], **tables)


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism, stored as target indices per source index."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    image: tuple[int, ...]

    def mapping(self) -> dict[str, str]:
        return {self.source.elements[i]: self.target.elements[j] for i, j in enumerate(self.image)}

    def is_valid(self) -> bool:
        f, s, t = self.image, self.source, self.target
        if len(set(f)) != len(f) or f[s.zero] != t.zero or f[s.one] != t.one:
            return False
        n = len(s)
        return all(f[getattr(s, name)[x][y]] == getattr(t, name)[f[x]][f[y]]
                   for name in TABLES for x in range(n) for y in range(n))

    def is_inclusion(self) -> bool:
        return all(self.source.elements[i] == self.target.elements[j]
                   for i, j in enumerate(self.image))


def find_embedding(a: FiniteAlgebra, b: FiniteAlgebra,
                   budget: int = DEFAULT_EMBED_BUDGET) -> Embedding | None:
    """First embedding of ``a`` into ``b``, or None if there is none.

    Candidates for each source element are tried with the same-named target
    element first (so an inclusion is found whenever it is an embedding),
    then in declared order.  Constants are fixed up front and candidates must
    respect the join-derived order against everything already mapped.
    ``SearchBudgetExhausted`` is raised when more than ``budget`` partial
    maps were tried, which is distinct from returning None.
    """
    na, nb = len(a), len(b)
    if na > nb:
        return None
    tabs_a = [getattr(a, name) for name in TABLES]
    tabs_b = [getattr(b, name) for name in TABLES]
    f: list[int | None] = [None] * na
    used = [False] * nb
    if a.zero == a.one:
        if b.zero != b.one:
            return None
        f[a.zero] = b.zero
    else:
        if b.zero == b.one:
            return None
        f[a.zero], f[a.one] = b.zero, b.one
    for v in f:
        if v is not None:
            used[v] = True
    order = [x for x in range(na) if f[x] is None]
    b_index = {e: j for j, e in enumerate(b.elements)}
    steps = 0

    producers: list[list[tuple[int, int, int]]] = [[] for _ in range(na)]
    for k, ta in enumerate(tabs_a):
        for y in range(na):
            for z in range(na):
                producers[ta[y][z]].append((k, y, z))
    join_a, join_b = a.join, b.join

    def consistent(x):
        # every operation instance among mapped elements must commute with f
        fx = f[x]
        for y in range(na):
            fy = f[y]
            if fy is not None and (join_a[x][y] == y) != (join_b[fx][fy] == fy):
                return False
        for ta, tb in zip(tabs_a, tabs_b):
            row_a, row_b = ta[x], tb[fx]
            for y in range(na):
                fy = f[y]
                if fy is None:
                    continue
                for r_a, r_b in ((row_a[y], row_b[fy]), (ta[y][x], tb[fy][fx])):
                    fr = f[r_a]
                    if fr is not None and fr != r_b:
                        return False
        for k, y, z in producers[x]:
            fy, fz = f[y], f[z]
            if fy is not None and fz is not None and tabs_b[k][fy][fz] != fx:
                return False
        return True

    def candidates(x):
        same = b_index.get(a.elements[x])
        if same is not None:
            yield same
        for j in range(nb):
            if j != same:
                yield j

    def search(k):
        nonlocal steps
        if k == len(order):
            return True
        x = order[k]
        for j in candidates(x):
            if used[j]:
                continue
            steps += 1
            if steps > budget:
                raise SearchBudgetExhausted(f"embedding search exceeded {budget} steps")
            f[x] = j
            used[j] = True
            if consistent(x) and search(k + 1):
                return True
            f[x] = None
            used[j] = False
        return False

    if not all(consistent(x) for x in range(na) if f[x] is not None):
        return None
    if not search(0):
        return None
    return Embedding(a, b, tuple(f))


def random_relabel(a: FiniteAlgebra, rng) -> FiniteAlgebra:
    """Isomorphic copy with shuffled declaration order and fresh names."""
    order = list(range(len(a)))
    rng.shuffle(order)
    b = a.permute(order)
    return b.rename([f"a{i}" for i in range(len(b))])
