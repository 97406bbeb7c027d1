import itertools
import math

import numpy as np
import pytest

import oracles
from mincsp.errors import InfeasibleSource, MalformedInstance, PreconditionError
from mincsp.gf2 import Gf2Matrix
from mincsp.instances import (ColoredGraph, Cnf3, DcspInstance, DcspSolution, EvenOddSetInstance, Gate, Graph,
                              MonotoneCircuit, NcInstance, OddSetInstance, check_parity_solution,
                              planted_satisfiable_cnf3, random_colored_graph, random_dcsp, random_nc,
                              random_oddset)
from mincsp.instances.model import AND, INPUT, OR, Constraint
from mincsp.reductions import (A_REDUCTION, COST_PRESERVING, SELF_IMPROVEMENT, SUITES, PpDefinition,
                               add_constants, chain, check_pp_definition, circuit_language,
                               dcspB2_to_dcspB3, dcspB3_to_nc, dualize, eliminate_undeletable,
                               evenodd_to_odd, experiment_mkds, kds_color_coding, lift_solution,
                               max3sat_to_oddset, mcs_to_dcsp, mkds_guess_to_oddset, nc_to_oddset,
                               odd_definition, oddset_self_improve, oddset_to_dcspB2, parity_cycle,
                               optimum, pp_expand, run_suite, shipped_definitions, verify_reduction)
from mincsp.reductions.core import _replicate_undeletable
from mincsp.reductions.pp import EQ, odd2_over_b2
from mincsp.relations import B2, B3, Language, clause_relation, even, implication, odd, unit
from mincsp.solvers import solve_oddset_exact


def dcsp(lang, variables, *cons):
    return DcspInstance(lang, tuple(variables), tuple(Constraint(*c) for c in cons))


# -- pp-definitions -------------------------------------------------------------

def test_shipped_definitions_check():
    for relation, language, d in shipped_definitions():
        assert check_pp_definition(relation, language, d), d.target


def test_check_is_independent_of_atom_and_variable_order():
    for relation, language, d in shipped_definitions(max_s=4):
        shuffled = PpDefinition(d.target, d.free, tuple(reversed(d.existential)), tuple(reversed(d.atoms)))
        assert check_pp_definition(relation, language, shuffled)


def test_wrong_definition_fails():
    d = odd2_over_b2()
    both_one = PpDefinition(d.target, d.free, d.existential,
                            (d.atoms[0], ("x", ("z",)), ("x", ("o",))))
    assert not check_pp_definition(odd(2), B2(), both_one)
    # swapping which constant is 0 and which is 1 still defines xor
    swapped = PpDefinition(d.target, d.free, d.existential,
                           (d.atoms[0], ("x", ("z",)), ("nx", ("o",))))
    assert check_pp_definition(odd(2), B2(), swapped)


def test_equality_needs_permission():
    with pytest.raises(MalformedInstance):
        PpDefinition("r", ("a", "b"), (), ((EQ, ("a", "b")),))
    d = PpDefinition("r", ("a", "b"), (), ((EQ, ("a", "b")),), equality_allowed=True)
    assert check_pp_definition(even(2), B2(), d)
    I = dcsp(Language((even(2).renamed("r"),)), "ab", ("r", ("a", "b")))
    with pytest.raises(PreconditionError):
        pp_expand(I, {"r": d}, B2())


def test_pp_expand_odd3():
    lang = Language(tuple(B2()) + (odd(3),))
    I = dcsp(lang, "abc", ("odd3", ("a", "b", "c")), ("nx", ("a",)))
    art = pp_expand(I, {"odd3": odd_definition(3)}, B2())
    assert art.kind == A_REDUCTION and art.alpha == len(odd_definition(3).atoms)
    assert set(art.target.variables) >= {"a", "b", "c"}
    # projection of the expanded constraints onto a, b, c is odd3
    sub = dcsp(B2(), art.target.variables, *[(c.relation, c.scope) for c in art.target.constraints[:-1]])
    seen = set()
    for values in itertools.product((0, 1), repeat=len(sub.variables)):
        phi = dict(zip(sub.variables, values))
        if all(sub.satisfies(j, phi) for j in range(len(sub.constraints))):
            seen.add((phi["a"], phi["b"], phi["c"]))
    assert seen == set(odd(3).tuples())


def test_pp_expand_identity_without_defined_relations():
    I = random_dcsp(B2(), 4, 5, 0)
    art = pp_expand(I, {"odd3": odd_definition(3)}, B2())
    assert art.target.constraints == I.constraints and art.target.variables == I.variables


# -- undeletable constraints, constants, complement -------------------------

def test_eliminate_undeletable_counts():
    lang = Language((unit(1), unit(0), implication()))
    I = dcsp(lang, "ab", ("x", ("a",), True), ("nx", ("b",)), ("imp", ("a", "b")))
    art = eliminate_undeletable(I)
    assert len(art.target.constraints) == 3 - 1 + 4
    assert not art.target.has_undeletable
    J = random_dcsp(lang, 3, 4, 1)
    assert eliminate_undeletable(J).target.constraints == J.constraints


def test_eliminate_undeletable_infeasible():
    lang = Language((unit(1), unit(0)))
    I = dcsp(lang, "a", ("x", ("a",), True), ("nx", ("a",), True))
    with pytest.raises(InfeasibleSource):
        eliminate_undeletable(I)


def test_copy_group_fallback_deletes_everything_deletable():
    lang = Language((unit(1), unit(0)))
    I = dcsp(lang, "a", ("x", ("a",), True), ("nx", ("a",)), ("nx", ("a",)))
    art = _replicate_undeletable(I, 1)
    sol = art.pull_back(DcspSolution({0}, {"a": 0}))
    assert sol.deleted == {1, 2} and sol.assignment["a"] == 1


def test_add_constants_shape():
    I = dcsp(B2(), "a", ("nx", ("a",)))
    art = add_constants(I, B3())
    cons = art.target.constraints
    assert cons[0].undeletable and cons[0].relation == "xor"
    assert [c.relation for c in cons[1:]] == ["xor", "xor"]
    u = cons[1].scope[1]
    assert cons[1].scope[0] == "_X0" and cons[2].scope == (u, "a")
    J = dcsp(B2(), "abcd", ("even4", tuple("abcd")))
    assert len(add_constants(J, B3()).target.constraints) == 2


def test_add_constants_preconditions():
    with pytest.raises(PreconditionError):
        add_constants(dcsp(B2(), "a", ("x", ("a",))), Language((even(4),)))
    with pytest.raises(PreconditionError):
        add_constants(dcsp(Language((odd(3), unit(1))), "abc", ("odd3", tuple("abc"))), B3())


def test_add_constants_pulls_back_complemented_witness():
    I = dcsp(B2(), "ab", ("x", ("a",)), ("nx", ("b",)))
    art = add_constants(I, B3())
    phi = {v: 1 for v in art.target.variables}
    phi.update({"_X0": 1, "_X1": 0, "a": 0, "b": 1})
    bad = frozenset(j for j in range(len(art.target.constraints)) if not art.target.satisfies(j, phi))
    back = art.pull_back(DcspSolution(bad, phi))
    assert back.assignment == {"a": 1, "b": 0}


def test_dualize():
    horn = Language((clause_relation((0, 0, 1)), unit(1), unit(0)))
    I = random_dcsp(horn, 5, 8, 4)
    art = dualize(I)
    assert any(r.same_tuples(clause_relation((1, 1, 0))) for r in art.target.language)
    assert dualize(art.target).target.constraints == I.constraints
    assert oracles.dcsp_opt(art.target)[0] == oracles.dcsp_opt(I)[0]


# -- circuits -------------------------------------------------------------------

@pytest.mark.parametrize("kind,weight", [(AND, 2), (OR, 1)])
def test_circuit_gadget(kind, weight):
    C = MonotoneCircuit((Gate("i1", INPUT), Gate("i2", INPUT), Gate("g", kind, ("i1", "i2"))), "g")
    art = mcs_to_dcsp(C)
    assert art.target.language.names == circuit_language().names
    assert oracles.dcsp_opt(art.target)[0] == weight == oracles.circuit_min_weight(C)
    report = verify_reduction(art)
    assert report.passed and report.pulled_cost == weight


# -- the parity cycle ------------------------------------------------------------

def test_evenodd_examples():
    E = EvenOddSetInstance(4, ((1, 2), (2, 3)), (1, 0))
    assert evenodd_to_odd(E).target.sets == ((1, 2), (1, 3))
    all_even = EvenOddSetInstance(3, ((0, 1),), (0,))
    art = evenodd_to_odd(all_even)
    assert art.target.m == 0 and solve_oddset_exact(art.target).cost == 0


def test_nc_to_oddset_examples():
    nc = NcInstance(Gf2Matrix([[1], [1]]), np.array([1, 0], dtype=np.uint8))
    art = nc_to_oddset(nc)
    assert art.target.sets == ((0, 1),) and art.target.is_odd_set
    assert oracles.oddset_opt(art.target) == 1 == oracles.nc_opt(nc)
    inside = NcInstance(Gf2Matrix([[1], [1]]), np.array([1, 1], dtype=np.uint8))
    assert nc_to_oddset(inside).target.m == 0


@pytest.mark.parametrize("sets,opt", [([(0,), (1,)], 2), ([(0, 1, 2)], 1)])
def test_oddset_to_b2_examples(sets, opt):
    E = OddSetInstance(3, sets)
    art = oddset_to_dcspB2(E)
    assert not art.target.has_undeletable
    assert solve_oddset_exact(E).cost == opt
    report = verify_reduction(art)
    assert report.passed and report.target_opt == opt


def test_oddset_to_b2_infeasible():
    with pytest.raises(InfeasibleSource):
        oddset_to_dcspB2(OddSetInstance(2, [(0,), ()]))
    with pytest.raises(InfeasibleSource):
        oddset_to_dcspB2(OddSetInstance(2, [(0, 1), (0,), (1,)]))


def test_b3_to_nc_examples():
    I = dcsp(B3(), "abcd", ("even4", tuple("abcd")))
    art = dcspB3_to_nc(I)
    assert art.target.A.bits.tolist() == [[1, 1, 1, 1]] and art.target.b.tolist() == [0]
    tri = dcsp(B3(), "abc", ("xor", ("a", "b")), ("xor", ("b", "c")), ("xor", ("a", "c")))
    nc = dcspB3_to_nc(tri).target
    assert oracles.nc_opt(nc) == 1 == oracles.dcsp_opt(tri)[0]
    with pytest.raises(PreconditionError):
        dcspB3_to_nc(dcsp(B2(), "a", ("x", ("a",))))


def test_b2_to_b3_requires_b2():
    with pytest.raises(PreconditionError):
        dcspB2_to_dcspB3(dcsp(Language((implication(),)), "ab", ("imp", ("a", "b"))))


def test_parity_cycle_preserves_opt():
    for seed in range(12):
        nc = random_nc(6, 8, seed, density=0.15)
        steps = parity_cycle(nc)
        want = oracles.nc_opt(nc)
        for art in steps:
            assert art.kind == COST_PRESERVING
            assert verify_reduction(art).target_opt == want
        _, x = optimum(steps[-1].target)
        assert nc.distance(chain(*steps).pull_back(x)) == want


# -- squaring --------------------------------------------------------------------

def test_self_improve_examples():
    E = OddSetInstance(1, [(0,)])
    art = oddset_self_improve(E)
    assert art.kind == SELF_IMPROVEMENT
    assert art.target.n == 3 and art.target.sets == ((0,), (0, 1, 2), (2,))
    assert oracles.oddset_opt(art.target) == 3
    empty = oddset_self_improve(OddSetInstance(0, []))
    assert empty.target.n == 1 and oracles.oddset_opt(empty.target) == 1


def test_self_improve_sizes_and_lift():
    E = random_oddset(4, 3, 3, 9)
    art = oddset_self_improve(E)
    assert art.target.n == 1 + 4 + 16 and art.target.m == 1 + 3 + 4 * 3
    T = solve_oddset_exact(E).deleted
    assert check_parity_solution(art.target, lift_solution(E, T))


# -- densest multicolored subgraph ----------------------------------------------

TRIANGLE = ColoredGraph((("a",), ("b",), ("c",)), (("a", "b"), ("b", "c"), ("a", "c")))


def test_mkds_gadget_examples():
    empty = mkds_guess_to_oddset(TRIANGLE, [])
    assert empty.instance.n == 0 and empty.instance.m == 0
    full = mkds_guess_to_oddset(TRIANGLE, [(0, 1), (1, 2), (0, 2)])
    assert full.instance.n == 6 and oracles.oddset_opt(full.instance) == 6
    path = ColoredGraph((("a",), ("b",), ("c",)), (("a", "b"), ("b", "c")))
    g = mkds_guess_to_oddset(path, [(0, 1), (1, 2)])
    assert oracles.oddset_opt(g.instance) == 5
    with pytest.raises(PreconditionError):
        mkds_guess_to_oddset(TRIANGLE, [(0, 0)])


def test_experiment_mkds():
    assert experiment_mkds(TRIANGLE)["edges"] == 3
    edgeless = ColoredGraph((("a",), ("b",), ("c",)), ())
    assert experiment_mkds(edgeless)["edges"] == 0
    for seed in range(5):
        G = random_colored_graph(3, 3, 0.5, seed)
        assert experiment_mkds(G)["edges"] == oracles.densest_multicolored(G)
    with pytest.raises(PreconditionError):
        experiment_mkds(random_colored_graph(5, 1, 0.5, 0))


def test_color_coding():
    G = Graph(tuple("abcdefg"), (("a", "b"), ("b", "c"), ("a", "c"), ("d", "e")))
    runs = kds_color_coding(G, 3, seed=4, repetitions=6)
    assert [r.classes for r in runs] == [r.classes for r in kds_color_coding(G, 3, 4, 6)]
    for r in runs:
        assert sorted(r.vertices) == sorted(G.vertices) and r.k == 3
    reps = math.ceil(5 * 3 ** 3 / math.factorial(3))
    for seed in range(20):
        colored = kds_color_coding(G, 3, seed, reps)
        assert any(len({r.color_of(v) for v in "abc"}) == 3 for r in colored)


# -- Max 3-SAT --------------------------------------------------------------------

def test_max3sat_examples():
    one = max3sat_to_oddset(Cnf3(3, ((1, 2, 3),)), 1)
    assert one.instance.n == 7 and oracles.oddset_opt(one.instance) == 1
    unsat_group = Cnf3(1, ((1, 1, 1), (-1, -1, -1)))
    g = max3sat_to_oddset(unsat_group, 1)
    assert g.instance.sets[0] == () and solve_oddset_exact(g.instance).cost is None


def test_max3sat_satisfiable_opt_is_k():
    for seed in range(6):
        f = planted_satisfiable_cnf3(6, 6, seed)
        g = max3sat_to_oddset(f, 2)
        out = solve_oddset_exact(g.instance)
        assert out.cost == 2
        assignment, certified = g.extract(out.deleted)
        assert certified == (0, 1) and oracles.cnf_satisfied(f, assignment)


# -- verification harness -----------------------------------------------------------

@pytest.mark.parametrize("name", sorted(n for n in SUITES if not n.startswith("mutation")))
def test_suites_pass(name):
    report = run_suite(name, seeds=12)
    assert report.passed, report.text()
    assert report.count("pass") > 0


def test_mutation_is_caught():
    report = run_suite("mutation_eliminate_undeletable", seeds=50)
    assert report.count("fail") > 0
    failed = [r for _, r in report.rows if r.status == "fail"]
    assert failed[0].instance_text.startswith("relation ")
    assert all("note=" in r.line() for r in failed)


def test_infeasible_sources_are_skipped():
    report = run_suite("eliminate_undeletable", seeds=50)
    assert report.count("skip") > 0
    assert all("infeasible" in r.line() for _, r in report.rows if r.status == "skip")
