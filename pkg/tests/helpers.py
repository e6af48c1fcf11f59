"""Random algebra generators shared by the test modules."""

import random
from functools import lru_cache

from posmv.algebra import FiniteAlgebra
from posmv.constructions import (all_subalgebras, luk_chain, mv_chain, mv_product,
                                 positive_reduct, random_relabel, trivial)


def random_algebra(rng: random.Random, n: int) -> FiniteAlgebra:
    """Uniformly random tables; almost never MV-monoidal."""
    def tab():
        return tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
    return FiniteAlgebra(tuple(f"e{i}" for i in range(n)), tab(), tab(), tab(), tab(),
                         rng.randrange(n), rng.randrange(n))


def random_chain_algebra(rng: random.Random, n: int) -> FiniteAlgebra:
    """Chain lattice 0 < ... < n-1 with random commutative monotone-ish + and .

    Hits the cancellation check far more often than uniform tables.
    """
    def sym_table(base):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                t[i][j] = t[j][i] = base(i, j)
        return tuple(tuple(r) for r in t)

    plus = sym_table(lambda i, j: rng.randrange(max(i, j), n))
    times = sym_table(lambda i, j: rng.randrange(0, min(i, j) + 1))
    join = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
    meet = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    return FiniteAlgebra(tuple(f"c{i}" for i in range(n)), plus, times, join, meet, 0, n - 1)


@lru_cache(maxsize=None)
def positive_pool(max_size: int = 4) -> tuple:
    """Positive MV-algebras with at most ``max_size`` elements: every small
    subalgebra of a handful of finite MV-algebra reducts, plus the trivial one."""
    sources = [mv_chain(n) for n in range(1, 7)]
    sources += [mv_product(mv_chain(a), mv_chain(b)) for a, b in ((1, 1), (1, 2), (2, 2), (1, 3))]
    pool = {}
    for m in sources:
        for s in all_subalgebras(positive_reduct(m), max_size=max_size, max_seed=2):
            pool.setdefault(s.elements, s)
    return (trivial(), *pool.values())


def random_positive(rng: random.Random, max_size: int = 4) -> FiniteAlgebra:
    return random_relabel(rng.choice(positive_pool(max_size)), rng)


def mixed_algebra(rng: random.Random, max_size: int = 4) -> FiniteAlgebra:
    kind = rng.random()
    n = rng.randint(1, max_size)
    if kind < 0.4:
        return random_algebra(rng, n)
    if kind < 0.8:
        return random_chain_algebra(rng, n)
    return random_positive(rng, max_size)


__all__ = ["random_algebra", "random_chain_algebra", "positive_pool", "random_positive",
           "mixed_algebra", "luk_chain"]
