"""Exact and approximate solvers, one per tractable class, plus brute-force oracles."""

from .outcome import (BUDGET_EXCEEDED, INFEASIBLE, OPTIMAL, WITHIN_RATIO, SolveOutcome,
                      flat_outcome, human_outcome)
from .brute import brute_force_dcsp, solve_valid
from .bijunctive import solve_bijunctive
from .linear import min_linear_deletion, solve_linear_dcsp
from .lp import solve_covering_lp
from .ihsb import approx_ihsb, lp_relaxation
from .parity import nc_outcome, solve_nc_exact, solve_oddset_exact
from .satisfy import find_satisfying
from .auto import solve_auto
