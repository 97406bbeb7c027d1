import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles

from mincsp.errors import MalformedInstance, ParseError
from mincsp.instances import (DcspInstance, DcspSolution, EvenOddSetInstance, NcInstance, OddSetInstance,
                              check_deletion_set, check_parity_solution, deletion_set, evaluate,
                              is_feasible_solution, load, parse_circuit, parse_cnf, parse_dcsp,
                              parse_mkds, parse_nc, parse_oddset, planted_satisfiable_cnf3,
                              random_circuit, random_cnf3, random_colored_graph, random_dcsp, random_nc,
                              random_oddset, serialize, solution_from_assignment, dump)
from mincsp.instances.model import Constraint, complement_assignment, dual_instance
from mincsp.relations import B2, Language, implication, nae, unit

seeds = st.integers(0, 10_000)


def roundtrip(obj, parser):
    text = serialize(obj)
    again = parser(text)
    assert serialize(again) == text
    return again


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_dcsp_roundtrip(seed):
    I = random_dcsp(Language((nae(), implication(), unit(1))), 6, 9, seed, undeletable_fraction=0.3)
    J = roundtrip(I, parse_dcsp)
    assert J.constraints == I.constraints and J.variables == I.variables


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_oddset_roundtrip(seed):
    E = random_oddset(7, 5, 4, seed, even_fraction=0.5)
    assert roundtrip(E, parse_oddset) == E


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_nc_roundtrip(seed):
    nc = random_nc(5, 4, seed)
    assert roundtrip(nc, parse_nc) == nc


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_other_roundtrips(seed):
    roundtrip(random_circuit(7, seed), parse_circuit)
    roundtrip(random_colored_graph(3, 3, 0.5, seed), parse_mkds)
    roundtrip(random_cnf3(5, 6, seed), parse_cnf)


def test_generators_are_pure_functions_of_seed():
    assert serialize(random_dcsp(B2(), 5, 7, 11)) == serialize(random_dcsp(B2(), 5, 7, 11))
    assert random_oddset(6, 4, 3, 5) == random_oddset(6, 4, 3, 5)
    assert random_nc(4, 3, 2) == random_nc(4, 3, 2)
    assert len({serialize(random_nc(4, 3, s)) for s in range(5)}) > 1


def test_planted_cnf_is_satisfiable():
    for s in range(10):
        f = planted_satisfiable_cnf3(5, 6, s)
        assert any(oracles.cnf_satisfied(f, dict(zip(range(1, 6), v)))
                   for v in itertools.product((0, 1), repeat=5))


@pytest.mark.parametrize("parser,text,line", [
    (parse_dcsp, "relation x 1\n1\nend\nvariables a\nconstraint y a\n", 5),
    (parse_dcsp, "relation x 1\n1\nend\nconstraint x a\n", 4),
    (parse_dcsp, "relation x 1\n1\nend\nvariables a\nconstraint x a b\n", 5),
    (parse_oddset, "universe 3\nset odd 0 5\n", 2),
    (parse_oddset, "universe 3\nset maybe 0\n", 2),
    (parse_nc, "matrix 2 2\n10\n1x\ntarget\n00\n", 3),
    (parse_circuit, "input a\nand g a b\noutput g\n", 2),
    (parse_mkds, "classes 2\nvertex a 0\nvertex b 5\n", 3),
    (parse_cnf, "p cnf 2 1\n1 2 3 4 0\n", 2),
])
def test_parse_errors_report_lines(parser, text, line):
    with pytest.raises(ParseError) as info:
        parser(text)
    assert info.value.lineno == line


def test_load_by_suffix(tmp_path):
    nc = random_nc(3, 2, 0)
    path = tmp_path / "a.nc"
    dump(nc, path)
    assert load(path) == nc
    with pytest.raises(ParseError):
        load(tmp_path / "a.unknown")


def test_dcsp_semantics():
    lang = Language((implication(), unit(1), unit(0)))
    I = DcspInstance(lang, ("a", "b"), (Constraint("x", ("a",)), Constraint("imp", ("a", "b")),
                                        Constraint("nx", ("b",), True)))
    phi = {"a": 1, "b": 0}
    assert evaluate(I, phi) == {1}
    assert check_deletion_set(I, {1}, phi)
    sol = solution_from_assignment(I, phi)
    assert sol.cost == 1 and is_feasible_solution(I, sol)
    assert solution_from_assignment(I, {"a": 1, "b": 1}) is None
    with pytest.raises(MalformedInstance):
        deletion_set(I, [2])
    assert not is_feasible_solution(I, DcspSolution({2}, {"a": 0, "b": 0}))


def test_dual_instance_flips_everything():
    I = random_dcsp(Language((implication(), unit(1))), 4, 6, 3)
    D = dual_instance(I)
    phi = {v: i % 2 for i, v in enumerate(I.variables)}
    assert evaluate(I, phi) == evaluate(D, complement_assignment(phi))
    assert dual_instance(D).constraints == I.constraints


def test_model_validation():
    with pytest.raises(MalformedInstance):
        EvenOddSetInstance(2, ((0, 3),), (1,))
    with pytest.raises(MalformedInstance):
        DcspInstance(Language((unit(1),)), ("a",), (Constraint("x", ("a", "a")),))
    with pytest.raises(MalformedInstance):
        DcspInstance(Language((unit(1),)), ("a",), (Constraint("x", ("z",)),))
    E = OddSetInstance(3, [(0, 1), (2,)])
    assert check_parity_solution(E, {0, 2}) and not check_parity_solution(E, {0, 1, 2})


def test_nc_distance():
    nc = random_nc(4, 3, 1)
    x = np.zeros(3, dtype=np.uint8)
    assert nc.distance(x) == int(nc.b.sum())
