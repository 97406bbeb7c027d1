"""Primitive positive definitions: checking them and expanding instances with them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import MalformedInstance, PreconditionError
from ..instances.model import Constraint, DcspInstance, DcspSolution
from ..relations import B2, Language, Relation, even, odd
from .artifact import A_REDUCTION, ReductionArtifact

EQ = "="
MAX_PP_VARIABLES = 24


@dataclass(frozen=True)
class PpDefinition:
    """R(free) holds iff some values of ``existential`` satisfy every atom.

    Atoms are ``(relation name, arguments)``; the name ``"="`` is an equality
    atom and is only allowed when ``equality_allowed`` is set.
    """

    target: str
    free: tuple
    existential: tuple
    atoms: tuple
    equality_allowed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(self.free))
        object.__setattr__(self, "existential", tuple(self.existential))
        object.__setattr__(self, "atoms", tuple((r, tuple(args)) for r, args in self.atoms))
        names = self.free + self.existential
        if len(set(names)) != len(names):
            raise MalformedInstance("definition variables must be distinct")
        known = set(names)
        for rel, args in self.atoms:
            if any(a not in known for a in args):
                raise MalformedInstance(f"atom {rel}{args} uses an undeclared variable")
            if rel == EQ and not self.equality_allowed:
                raise MalformedInstance("equality atom in an equality-free definition")


def _atom_arity(name, language):
    if name == EQ:
        return 2
    if name not in language:
        raise PreconditionError(f"atom relation {name!r} is not in the language")
    return language[name].arity


def defined_relation(language: Language, d: PpDefinition) -> np.ndarray:
    """Membership table (over the free variables) of the projection of ``d``."""
    for rel, args in d.atoms:
        if len(args) != _atom_arity(rel, language):
            raise PreconditionError(f"atom {rel}{args} has the wrong number of arguments")
    names = d.free + d.existential
    total = len(names)
    if total > MAX_PP_VARIABLES:
        raise PreconditionError(f"definition has {total} variables, cap is {MAX_PP_VARIABLES}")
    pos = {v: i for i, v in enumerate(names)}
    codes = np.arange(1 << total, dtype=np.int64)
    bits = (codes[:, None] >> (total - 1 - np.arange(total))) & 1
    ok = np.ones(codes.size, dtype=bool)
    for rel, args in d.atoms:
        if rel == EQ:
            ok &= bits[:, pos[args[0]]] == bits[:, pos[args[1]]]
            continue
        local = np.zeros(codes.size, dtype=np.int64)
        for a in args:
            local = (local << 1) | bits[:, pos[a]]
        ok &= language[rel].mask[local]
    k = len(d.free)
    # the free variables are the high bits of the code
    free_code = codes >> (total - k)
    table = np.zeros(1 << k, dtype=bool)
    np.logical_or.at(table, free_code[ok], True)
    return table


def check_pp_definition(relation: Relation, language: Language, d: PpDefinition) -> bool:
    if len(d.free) != relation.arity:
        raise PreconditionError(
            f"definition has {len(d.free)} free variables, relation has arity {relation.arity}")
    return bool(np.array_equal(defined_relation(language, d), relation.mask))


# -- shipped definitions over B2 = {even4, x, nx} ----------------------------

def odd2_over_b2() -> PpDefinition:
    """x1 xor x2 = exists z, o: even4(x1, x2, z, o), z = 0, o = 1."""
    return PpDefinition("xor", ("x1", "x2"), ("z", "o"),
                        (("even4", ("x1", "x2", "z", "o")), ("nx", ("z",)), ("x", ("o",))))


def even3_over_b2(args=("a", "b", "c"), w="w"):
    return (("even4", (*args, w)), ("nx", (w,)))


def odd_chain_atoms(args, fresh):
    """Atoms of odd^s(args) over B2 via the chain odd^{s+1} = odd^s + even3.

    ``fresh`` yields new existential names; returns (atoms, existentials).
    """
    args = list(args)
    if len(args) == 1:
        return [("x", (args[0],))], []
    u, w = next(fresh), next(fresh)
    atoms, extra = odd_chain_atoms(args[:-2] + [u], fresh)
    atoms = atoms + list(even3_over_b2((u, args[-2], args[-1]), w))
    return atoms, extra + [u, w]


def odd_definition(s: int) -> PpDefinition:
    """odd^s (named ``odd{s}``) over B2."""
    free = tuple(f"x{i + 1}" for i in range(s))
    fresh = (f"y{i}" for i in itertools.count())
    atoms, ex = odd_chain_atoms(free, fresh)
    return PpDefinition(f"odd{s}", free, tuple(ex), tuple(atoms))


def shipped_definitions(max_s=7):
    """(relation, language, definition) triples the package relies on."""
    base = B2()
    out = [
        (odd(2).renamed("xor"), base, odd2_over_b2()),
        (even(3), base, PpDefinition("even3", ("a", "b", "c"), ("w",), even3_over_b2())),
    ]
    out += [(odd(s), base, odd_definition(s)) for s in range(1, max_s + 1)]
    return out


# -- expansion ---------------------------------------------------------------

def pp_expand(instance: DcspInstance, definitions: dict, base: Language) -> ReductionArtifact:
    """Replace every constraint on a defined relation by the definition's atoms.

    Existential variables are fresh per occurrence.  Constraints on relations
    of ``base`` are copied.  alpha is the largest atom count used.
    """
    for name, d in definitions.items():
        if d.equality_allowed or any(r == EQ for r, _ in d.atoms):
            raise PreconditionError(f"definition of {name!r} uses equality")
        if name not in instance.language:
            continue
        if not check_pp_definition(instance.language[name], base, d):
            raise PreconditionError(f"definition of {name!r} does not define the relation")
    variables = list(instance.variables)
    taken = set(variables)
    constraints = []
    origin = []
    alpha = 1
    for j, c in enumerate(instance.constraints):
        d = definitions.get(c.relation)
        if d is None:
            if c.relation not in base or not base[c.relation].same_tuples(instance.language[c.relation]):
                raise PreconditionError(f"relation {c.relation!r} is neither defined nor in the base")
            constraints.append(Constraint(c.relation, c.scope, c.undeletable))
            origin.append(j)
            continue
        alpha = max(alpha, len(d.atoms))
        sub = dict(zip(d.free, c.scope))
        for y in d.existential:
            name = f"_{j}_{y}"
            while name in taken:
                name = "_" + name
            taken.add(name)
            variables.append(name)
            sub[y] = name
        for rel, args in d.atoms:
            constraints.append(Constraint(rel, tuple(sub[a] for a in args), c.undeletable))
            origin.append(j)
    target = DcspInstance(base, tuple(variables), tuple(constraints))
    source_vars = instance.variables

    def pull_back(sol: DcspSolution) -> DcspSolution:
        deleted = frozenset(origin[i] for i in sol.deleted)
        return DcspSolution(deleted, {v: sol.assignment[v] for v in source_vars})

    return ReductionArtifact(instance, target, A_REDUCTION, pull_back, alpha,
                             "pp-expansion with fresh existential variables per constraint")
