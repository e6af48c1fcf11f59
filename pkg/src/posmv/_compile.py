"""Lower quasi-equations to the flat stack bytecode run by the kernels.

Opcodes: 0-3 apply the oplus/odot/join/meet table to the top two stack
entries, 4 pushes zero, 5 pushes one, ``6 + i`` pushes variable ``i``.
"""

from __future__ import annotations

import numpy as np

from .algebra import TABLES, FiniteAlgebra
from .terms import Const, Op, QuasiEquation, Term, Var, postfix

OPCODE = {"+": 0, ".": 1, "|": 2, "&": 3}
PUSH_ZERO, PUSH_ONE, PUSH_VAR = 4, 5, 6


def compile_term(t: Term) -> list[int]:
    code = []
    for node in postfix(t):
        if isinstance(node, Op):
            code.append(OPCODE[node.sym])
        elif isinstance(node, Const):
            code.append(PUSH_ONE if node.value else PUSH_ZERO)
        else:
            assert isinstance(node, Var)
            code.append(PUSH_VAR + node.index)
    return code


def compile_quasi(q: QuasiEquation) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(code, bounds)``; program ``p`` is ``code[bounds[p]:bounds[p+1]]``.

    Programs come in lhs/rhs pairs, premises first, conclusion last.
    """
    code: list[int] = []
    bounds = [0]
    for eq in (*q.premises, q.conclusion):
        for side in (eq.lhs, eq.rhs):
            code.extend(compile_term(side))
            bounds.append(len(code))
    return np.asarray(code, dtype=np.int32), np.asarray(bounds, dtype=np.int32)


def table_array(a: FiniteAlgebra) -> np.ndarray:
    return np.ascontiguousarray(
        np.array([getattr(a, name) for name in TABLES], dtype=np.int32).reshape(4, len(a), len(a)))
