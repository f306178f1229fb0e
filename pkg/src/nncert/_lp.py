"""Small dense LP front end used by every feasibility oracle.

All programs in this package are tiny (at most ~150 variables and ~300
rows), so a single generic entry point around scipy's HiGHS solver is
enough.  The contract callers rely on: a bounded feasible program returns
an optimal basic solution with duality gap below ~1e-9; an infeasible
program raises :class:`LpInfeasibleError`; anything else (unbounded,
iteration limit, numerical breakdown) raises :class:`LpSolverError`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog


class LpError(Exception):
    """Base class for LP solver failures."""


class LpInfeasibleError(LpError):
    """The constraint system admits no feasible point."""


class LpSolverError(LpError):
    """The solver did not return a certified optimum (unbounded, limits, ...)."""


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray
    objective: float


def solve_lp(cost, a_ub=None, b_ub=None, a_eq=None, b_eq=None, bounds=(0, None)) -> LpSolution:
    """Minimize ``cost @ x`` subject to ``a_ub x <= b_ub``, ``a_eq x == b_eq``.

    `bounds` follows scipy's convention (single pair applied to all
    variables, or a sequence of pairs).  Nonnegativity is the default.
    """
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    if res.status == 2:
        raise LpInfeasibleError(res.message)
    if res.status != 0:
        raise LpSolverError(f"LP solver failed (status {res.status}): {res.message}")
    return LpSolution(x=np.asarray(res.x), objective=float(res.fun))
