"""Reductions between the problems, each carrying a way to pull solutions back."""

from .artifact import A_REDUCTION, COST_PRESERVING, SELF_IMPROVEMENT, ReductionArtifact, chain, compose
from .pp import PpDefinition, check_pp_definition, defined_relation, odd_definition, pp_expand, shipped_definitions
from .core import add_constants, circuit_language, dualize, eliminate_undeletable, mcs_to_dcsp
from .parity import (dcsp_to_nc, dcspB2_to_dcspB3, dcspB3_to_nc, evenodd_to_odd, nc_to_evenodd,
                     nc_to_oddset, oddset_to_dcspB2, parity_cycle)
from .gadgets import (experiment_mkds, kds_color_coding, lift_solution, max3sat_to_oddset,
                      mkds_guess_to_oddset, oddset_self_improve)
from .verify import SUITES, optimum, run_suite, solution_cost, verify_reduction
