from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mincsp.errors import PreconditionError
from mincsp.gf2 import Gf2Matrix
from mincsp.instances import (DcspInstance, NcInstance, OddSetInstance, check_parity_solution,
                              is_feasible_solution, random_dcsp, random_nc, random_oddset)
from mincsp.instances.model import Constraint, DcspSolution, EvenOddSetInstance
from mincsp.relations import (B2, B3, Language, clause_relation, even, implication, nae, nand, odd, or_,
                              unit, xor)
from mincsp.solvers import (BUDGET_EXCEEDED, INFEASIBLE, OPTIMAL, WITHIN_RATIO, approx_ihsb,
                            brute_force_dcsp, find_satisfying, flat_outcome, human_outcome, lp_relaxation,
                            nc_outcome, solve_auto, solve_bijunctive, solve_covering_lp, solve_linear_dcsp,
                            solve_nc_exact, solve_oddset_exact, solve_valid)

seeds = st.integers(0, 100_000)

BIJ = Language((or_(2), nand(2), implication(), xor(), unit(1), unit(0)))
IHS2 = Language((or_(2), implication(), unit(1), unit(0)))
IHS3 = Language((or_(3), implication(), unit(1), unit(0)))
IHS3_MINUS = Language((nand(3), implication(), unit(1), unit(0)))
AFFINE = [B2(), B3(), Language((even(3), odd(3), xor()))]


def feasible_with_cost(instance, out):
    sol = DcspSolution(out.deleted, out.assignment)
    assert is_feasible_solution(instance, sol)
    assert sol.cost == out.cost


# -- brute force ----------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_brute_force_matches_naive_enumeration(seed):
    I = random_dcsp(Language((nae(), implication(), unit(1))), 7, 12, seed, undeletable_fraction=0.2)
    want = oracles.dcsp_opt(I)
    got = brute_force_dcsp(I)
    if want is None:
        assert got.status == INFEASIBLE
        return
    assert got.cost == want[0]
    feasible_with_cost(I, got)


def test_brute_force_lexicographic_tie_break():
    # two optimal deletion sets {0} and {1}: the smaller one wins
    lang = Language((unit(1), unit(0)))
    I = DcspInstance(lang, ("a",), (Constraint("x", ("a",)), Constraint("nx", ("a",))))
    assert brute_force_dcsp(I).deleted == {0}


def test_brute_force_budget_and_infeasible():
    lang = Language((unit(1), unit(0)))
    I = DcspInstance(lang, ("a",), (Constraint("x", ("a",)), Constraint("nx", ("a",)), Constraint("nx", ("a",))))
    assert brute_force_dcsp(I, k=0).status == BUDGET_EXCEEDED
    assert brute_force_dcsp(I, k=1).cost == 1
    J = DcspInstance(lang, ("a",), (Constraint("x", ("a",), True), Constraint("nx", ("a",), True)))
    assert brute_force_dcsp(J).status == INFEASIBLE


def test_solve_valid():
    I = random_dcsp(Language((or_(3), implication())), 5, 8, 0)
    out = solve_valid(I)
    assert out.cost == 0 and set(out.assignment.values()) == {1}
    with pytest.raises(PreconditionError):
        solve_valid(random_dcsp(B2(), 4, 4, 0))


# -- bijunctive -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(3, 10))
def test_bijunctive_matches_oracle(seed, n):
    I = random_dcsp(BIJ, n, 2 * n, seed, undeletable_fraction=0.15)
    want = oracles.dcsp_opt(I)
    got = solve_bijunctive(I)
    if want is None:
        assert got.status == INFEASIBLE
        return
    assert got.status == OPTIMAL and got.cost == want[0]
    feasible_with_cost(I, got)


def test_bijunctive_budget():
    I = random_dcsp(BIJ, 8, 20, 7)
    opt = oracles.dcsp_opt(I)[0]
    assert solve_bijunctive(I, k=opt).cost == opt
    if opt:
        assert solve_bijunctive(I, k=opt - 1).status == BUDGET_EXCEEDED


# -- affine ---------------------------------------------------------------------

@pytest.mark.parametrize("lang", AFFINE, ids=["B2", "B3", "even3-odd3-xor"])
def test_linear_matches_oracle(lang):
    for seed in range(25):
        I = random_dcsp(lang, 7, 10, seed, undeletable_fraction=0.2)
        want = oracles.dcsp_opt(I)
        got = solve_linear_dcsp(I)
        if want is None:
            assert got.status == INFEASIBLE
            continue
        assert got.cost == want[0]
        feasible_with_cost(I, got)


def test_linear_has_no_variable_cap():
    I = random_dcsp(B3(), 60, 70, 1)
    out = solve_linear_dcsp(I)
    feasible_with_cost(I, out)


# -- exact LP -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds)
def test_covering_lp_matches_scipy(seed):
    from scipy.optimize import linprog
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 6)), int(rng.integers(1, 7))
    c = [int(v) for v in rng.integers(0, 4, size=n)]
    G = rng.integers(-1, 3, size=(m, n))
    h = [int(v) for v in rng.integers(0, 3, size=m)]
    rows = [{j: int(G[i, j]) for j in range(n) if G[i, j]} for i in range(m)]
    got = solve_covering_lp(c, rows, h)
    ref = linprog(c, A_ub=-G, b_ub=-np.array(h), bounds=[(0, None)] * n, method="highs")
    if ref.status == 2:
        assert got is None
        return
    if ref.status == 3:
        pytest.skip("unbounded cannot happen with c >= 0")
    value, x = got
    assert all(isinstance(v, Fraction) for v in x)
    assert float(value) == pytest.approx(ref.fun, abs=1e-7)


def test_lp_relaxation_is_a_lower_bound():
    for seed in range(30):
        I = random_dcsp(IHS2, 8, 14, seed)
        value, x, z, c = lp_relaxation(I, 2)
        assert value <= oracles.dcsp_opt(I)[0]
        assert c == 1


# -- IHS-B ----------------------------------------------------------------------

@pytest.mark.parametrize("lang,width,polarity", [(IHS2, 2, "plus"), (IHS3, 3, "plus"), (IHS3_MINUS, 3, "minus")])
def test_ihsb_ratio(lang, width, polarity):
    for seed in range(40):
        I = random_dcsp(lang, 8, 14, seed, undeletable_fraction=0.1)
        want = oracles.dcsp_opt(I)
        out = approx_ihsb(I, width, polarity)
        if want is None:
            assert out.status == INFEASIBLE
            continue
        assert out.status == WITHIN_RATIO and out.ratio == width + 1
        feasible_with_cost(I, out)
        assert out.lower_bound <= want[0] <= out.cost <= (width + 1) * want[0]


def test_ihsb_rejects_wrong_language():
    with pytest.raises(PreconditionError):
        approx_ihsb(random_dcsp(Language((nae(),)), 4, 4, 0), 3)
    with pytest.raises(ValueError):
        approx_ihsb(random_dcsp(IHS2, 4, 4, 0), 2, "sideways")


def test_ihsb_budget_uses_lp_bound():
    lang = Language((unit(1), unit(0)))
    I = DcspInstance(lang, ("a", "b"), tuple(Constraint(r, (v,)) for v in "ab" for r in ("x", "nx")))
    assert approx_ihsb(I, 1, k=1).status == BUDGET_EXCEEDED
    assert approx_ihsb(I, 1, k=2).cost == 2


# -- parity problems ------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 10))
def test_oddset_engines_match_oracle(seed, n):
    E = random_oddset(n, 1 + seed % 6, 4, seed, even_fraction=0.3)
    want = oracles.oddset_opt(E)
    for engine in ("gf2", "enumerate", "both"):
        out = solve_oddset_exact(E, engine=engine)
        if want is None:
            assert out.status == INFEASIBLE
            continue
        assert out.cost == want and check_parity_solution(E, out.deleted)


def test_oddset_beyond_64_elements():
    # element indices past 63 once overflowed a fixed-width shift
    n = 90
    sets = [(i, 89) for i in range(60, 89)] + [(89,)]
    E = OddSetInstance(n, sets)
    out = solve_oddset_exact(E, engine="gf2")
    assert out.deleted == {89} and check_parity_solution(E, out.deleted)


def test_oddset_budget():
    E = OddSetInstance(4, [(0,), (1,), (2,)])
    assert solve_oddset_exact(E, k=2, engine="enumerate").status == BUDGET_EXCEEDED
    assert solve_oddset_exact(E, k=3).cost == 3
    empty = EvenOddSetInstance(0, (), ())
    assert solve_oddset_exact(empty).cost == 0


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_nc_engines_match_oracle(seed):
    nc = random_nc(8, 6, seed, density=0.4)
    want = oracles.nc_opt(nc)
    for engine in ("syndrome", "exhaustive", "grouped", "both"):
        x, d = solve_nc_exact(nc, engine)
        assert d == want == nc.distance(x)


def test_nc_outcome_lists_wrong_rows():
    nc = NcInstance(Gf2Matrix([[1], [1]]), np.array([1, 0], dtype=np.uint8))
    out = nc_outcome(nc)
    assert out.cost == 1 and len(out.deleted) == 1
    assert nc_outcome(nc, k=0).status == BUDGET_EXCEEDED


# -- satisfiability and dispatch ------------------------------------------------

@pytest.mark.parametrize("lang", [BIJ, B3(), Language((nae(), unit(1)))], ids=["bij", "B3", "nae"])
def test_find_satisfying(lang):
    for seed in range(20):
        I = random_dcsp(lang, 6, 7, seed)
        phi = find_satisfying(I)
        want = oracles.dcsp_opt(I)
        if want[0] == 0:
            assert phi is not None and is_feasible_solution(I, DcspSolution(frozenset(), phi))
        else:
            assert phi is None


@pytest.mark.parametrize("lang", [IHS3, IHS3_MINUS, BIJ, B2(), B3(), Language((nae(),)),
                                  Language((clause_relation((1, 1, 0)), unit(1), unit(0))),
                                  Language((or_(2),))])
def test_solve_auto(lang):
    for seed in range(15):
        I = random_dcsp(lang, 7, 12, seed, undeletable_fraction=0.1)
        want = oracles.dcsp_opt(I)
        out = solve_auto(I)
        assert out.narrative[0].startswith("class: ")
        if want is None:
            assert out.status == INFEASIBLE
            continue
        feasible_with_cost(I, out)
        if out.status == OPTIMAL:
            assert out.cost == want[0]
        else:
            assert want[0] <= out.cost <= out.ratio * want[0]


def test_solve_auto_budget():
    I = random_dcsp(B3(), 8, 16, 2)
    opt = oracles.dcsp_opt(I)[0]
    assert solve_auto(I, k=opt).cost == opt
    assert solve_auto(I, k=opt - 1).status == BUDGET_EXCEEDED


def test_outcome_formatting():
    I = random_dcsp(BIJ, 4, 6, 3)
    out = solve_bijunctive(I)
    flat = flat_outcome(out, I.variables)
    assert flat.startswith("status=optimal\ncost=")
    assert "assignment=" + " ".join(f"{v}:{out.assignment[v]}" for v in I.variables) in flat
    assert human_outcome(out).startswith("status: optimal\n")
