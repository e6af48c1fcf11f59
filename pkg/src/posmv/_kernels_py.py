"""Pure-Python assignment scanner; same contract as the compiled ``_kernels``."""

from __future__ import annotations

import operator


def _closure(code, tables, zero, one):
    """Turn one postfix program into a function of the assignment list."""
    stack = []
    for op in code:
        op = int(op)
        if op < 4:
            right = stack.pop()
            left = stack.pop()
            stack.append(_apply(tables[op], left, right))
        elif op == 4:
            stack.append(lambda env, _v=zero: _v)
        elif op == 5:
            stack.append(lambda env, _v=one: _v)
        else:
            stack.append(operator.itemgetter(op - 6))
    (f,) = stack
    return f


def _apply(table, left, right):
    return lambda env: table[left(env)][right(env)]


def first_violation(tables, zero, one, code, bounds, nvars, start, stop):
    """First assignment index in ``[start, stop)`` satisfying every premise
    and falsifying the conclusion, or -1.

    Index ``k`` decodes with variable 0 varying fastest:
    ``x_i = (k // n**i) % n``.
    """
    n = len(tables[0])
    tabs = [[list(map(int, row)) for row in t] for t in tables]
    progs = [_closure(code[bounds[p]:bounds[p + 1]], tabs, int(zero), int(one))
             for p in range(len(bounds) - 1)]
    pairs = [(progs[i], progs[i + 1]) for i in range(0, len(progs), 2)]
    premises, (cl, cr) = pairs[:-1], pairs[-1]

    env = [0] * nvars
    k = start
    for i in range(nvars):
        env[i] = k % n
        k //= n
    for idx in range(start, stop):
        if all(l(env) == r(env) for l, r in premises) and cl(env) != cr(env):
            return idx
        i = 0
        while i < nvars:
            env[i] += 1
            if env[i] < n:
                break
            env[i] = 0
            i += 1
    return -1
