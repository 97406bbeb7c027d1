"""Plain satisfiability of a subset of constraints."""

from __future__ import annotations

from ..errors import InstanceTooLarge
from ..instances.model import Constraint, DcspInstance
from ..relations import relation_properties
from .brute import MAX_BRUTE_VARIABLES, brute_force_dcsp
from .linear import affine_equations, constraint_equations, min_linear_deletion


def restrict(instance: DcspInstance, indices) -> DcspInstance:
    """The constraints at ``indices``, all made undeletable."""
    cons = tuple(Constraint(instance.constraints[i].relation, instance.constraints[i].scope, True)
                 for i in sorted(indices))
    return instance.replace(constraints=cons)


def find_satisfying(instance: DcspInstance, indices=None):
    """An assignment satisfying the chosen constraints (default: all), or None.

    Affine constraints go through Gaussian elimination, bijunctive ones
    through 2-SAT; anything else is enumerated up to the brute-force cap.
    """
    if indices is None:
        indices = range(len(instance.constraints))
    sub = restrict(instance, indices)
    used = {c.relation for c in sub.constraints}
    rels = [instance.language[name] for name in used]
    if all(affine_equations(r) is not None for r in rels):
        groups = [(constraint_equations(sub, j), 1, True) for j in range(len(sub.constraints))]
        found = min_linear_deletion(len(sub.variables), groups, 0)
        if found is None:
            return None
        return {v: found[2][i] for i, v in enumerate(sub.variables)}
    if all(relation_properties(r)["bijunctive"] for r in rels):
        from .bijunctive import solve_bijunctive
        out = solve_bijunctive(sub, 0)
        return out.assignment
    if len(sub.variables) > MAX_BRUTE_VARIABLES:
        raise InstanceTooLarge("satisfiability check needs more variables than the brute-force cap")
    return brute_force_dcsp(sub).assignment
