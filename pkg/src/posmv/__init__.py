"""Decide whether finite algebras over {+, ., |, &, 0, 1} are positive MV-algebras."""

from .algebra import (AlgebraError, FiniteAlgebra, algebra_fingerprint, derived_leq,
                      dump_algebra, eval_term, load_algebra)
from .checker import (BudgetExceeded, ClassificationReport, Verdict, Violation, check_cancellation,
                      check_mvm, classify, holds)
from .constructions import (FiniteMVAlgebra, boolean2, chang_quotient_witness, congruences,
                            find_embedding, luk_chain, mv_chain, positive_reduct, product,
                            quotient, subalgebra_generated)
from .terms import parse_equation, parse_quasi, parse_term

__version__ = "0.1.0"
