"""Brute-force satisfaction of quasi-equations and the positive MV classifier.

Assignments are enumerated in lexicographic order of the declared element
order, reading the assignment from its last variable to its first (variable
``x`` varies fastest).  The first violation reported is always the least one
in that order, whatever the number of worker threads.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import kernels
from ._compile import compile_quasi, table_array
from .algebra import FiniteAlgebra, eval_index
from .terms import QuasiEquation, parse_quasi

DEFAULT_BUDGET = 10**8
# Below this many assignments a single kernel call beats thread dispatch.
_PARALLEL_MIN = 1 << 16


class BudgetExceeded(RuntimeError):
    """Instance too large: the assignment space exceeds the budget."""


@dataclass(frozen=True)
class Violation:
    """A failing instance of an axiom.

    ``assignment`` maps variable names to element names.  A Violation is
    falsy, so ``holds`` can return either ``True`` or the counterexample.
    """

    axiom_id: str
    assignment: dict = field(hash=False)
    lhs_value: str
    rhs_value: str

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"axiom": self.axiom_id, "assignment": dict(self.assignment),
                "lhs": self.lhs_value, "rhs": self.rhs_value}

    def __str__(self):
        env = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        return f"{self.axiom_id}: [{env}] gives {self.lhs_value} != {self.rhs_value}"


@lru_cache(maxsize=None)
def catalogue() -> dict[str, QuasiEquation]:
    """The shipped axiom catalogue, in file order."""
    text = resources.files("posmv").joinpath("data/axioms.txt").read_text(encoding="utf-8")
    return parse_catalogue(text)


def parse_catalogue(text: str) -> dict[str, QuasiEquation]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, body = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'id: quasi-equation'")
        out[key.strip()] = parse_quasi(body)
    return out


def mvm_axioms() -> dict[str, QuasiEquation]:
    return {k: q for k, q in catalogue().items() if k[:2] in {f"E{i}" for i in range(1, 8)}}


def cancellation() -> QuasiEquation:
    return catalogue()["cancellation"]


def _decode(idx: int, n: int, k: int) -> list[int]:
    env = []
    for _ in range(k):
        env.append(idx % n)
        idx //= n
    return env


def find_violation(a: FiniteAlgebra, q: QuasiEquation, axiom_id: str = "",
                   budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Violation | None:
    """Least violating assignment of ``q`` in ``a``, or None if ``q`` holds."""
    n, k = len(a), q.arity
    total = n ** k
    if total > budget:
        raise BudgetExceeded(
            f"instance too large: {n}^{k} = {total} assignments exceeds budget {budget}")
    tables = table_array(a)
    code, bounds = compile_quasi(q)

    def scan(lo, hi):
        return kernels.first_violation(tables, a.zero, a.one, code, bounds, k, lo, hi)

    if jobs <= 1 or total < _PARALLEL_MIN:
        found = scan(0, total)
    else:
        step = -(-total // (4 * jobs))
        chunks = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        found = -1
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(scan, lo, hi) for lo, hi in chunks]
            for fut in futures:
                r = fut.result()
                if r >= 0:
                    found = r
                    for rest in futures:
                        rest.cancel()
                    break
    if found < 0:
        return None
    env = _decode(found, n, k)
    lhs = eval_index(a, q.conclusion.lhs, env)
    rhs = eval_index(a, q.conclusion.rhs, env)
    assignment = {q.var_name(i): a.elements[v] for i, v in enumerate(env)}
    return Violation(axiom_id or str(q), assignment, a.elements[lhs], a.elements[rhs])


def holds(a: FiniteAlgebra, q: QuasiEquation, **kwargs) -> "bool | Violation":
    """``True`` if ``q`` holds in ``a``, otherwise the first Violation (falsy)."""
    v = find_violation(a, q, **kwargs)
    return True if v is None else v


def check_mvm(a: FiniteAlgebra, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[Violation]:
    """First violation of each failing equation of E1-E7, in catalogue order."""
    out = []
    for axiom_id, q in mvm_axioms().items():
        v = find_violation(a, q, axiom_id, budget=budget, jobs=jobs)
        if v is not None:
            out.append(v)
    return out


def check_cancellation(a: FiniteAlgebra, budget: int = DEFAULT_BUDGET,
                       jobs: int = 1) -> Violation | None:
    return find_violation(a, cancellation(), "cancellation", budget=budget, jobs=jobs)


def cancellation_loop(a: FiniteAlgebra) -> Violation | None:
    """Hand-written triple loop for cancellation, independent of the engine."""
    n = len(a)
    plus, times = a.oplus, a.odot
    for z in range(n):
        for y in range(n):
            for x in range(n):
                if x != y and plus[x][z] == plus[y][z] and times[x][z] == times[y][z]:
                    e = a.elements
                    return Violation("cancellation", {"x": e[x], "y": e[y], "z": e[z]}, e[x], e[y])
    return None


class Verdict(str, enum.Enum):
    NOT_MVM = "NotMVM"
    MVM_ONLY = "MVMOnly"
    POSITIVE_MV = "PositiveMV"

    @property
    def exit_code(self) -> int:
        return {"PositiveMV": 0, "MVMOnly": 2, "NotMVM": 3}[self.value]


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    violations: tuple[Violation, ...] = ()

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value,
                "violations": [v.to_dict() for v in self.violations]}


def classify(a: FiniteAlgebra, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ClassificationReport:
    """Decide membership in the class of positive MV-algebras.

    These are exactly the algebras satisfying E1-E7 together with the
    cancellation quasi-equation ``x + z = y + z, x . z = y . z => x = y``.
    """
    bad = check_mvm(a, budget=budget, jobs=jobs)
    if bad:
        return ClassificationReport(Verdict.NOT_MVM, tuple(bad))
    v = check_cancellation(a, budget=budget, jobs=jobs)
    if v is not None:
        return ClassificationReport(Verdict.MVM_ONLY, (v,))
    return ClassificationReport(Verdict.POSITIVE_MV)
