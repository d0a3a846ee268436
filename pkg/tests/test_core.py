import pytest

from sspforge.core import (
    Budget, BudgetExceeded, InvalidInstance, Solution, SolutionSet, Universe,
    UniverseMismatch, bit_indices, canonical_universe, default_budget, edge, fresh_name,
    lit, popcount, vertex,
)
from sspforge.problems import CNF, GraphK, HamPayload, make_instance


def test_vertex_universe_follows_declaration_order():
    tri = make_instance("MVC", GraphK(("u", "v", "w"), ((0, 1), (0, 2), (1, 2)), 2))
    assert list(canonical_universe(tri)) == [vertex("u"), vertex("v"), vertex("w")]


def test_literal_universe_interleaves_polarities():
    sat = make_instance("SAT", CNF(("x1", "x2"), ((1, -2),)))
    assert [str(e) for e in canonical_universe(sat)] == ["x1", "~x1", "x2", "~x2"]


def test_edge_universe_uses_canonical_endpoints():
    k3 = make_instance("UHC", HamPayload(("u", "v", "w"), ((0, 1), (0, 2), (1, 2))))
    assert list(canonical_universe(k3)) == [edge("u", "v"), edge("u", "w"), edge("v", "w")]
    assert edge("w", "u") == edge("u", "w")


def test_universe_rejects_duplicates():
    with pytest.raises(InvalidInstance):
        Universe([vertex("a"), vertex("a")])


def test_universe_masks_and_members():
    u = Universe([vertex(n) for n in "abcd"])
    m = u.mask([vertex("b"), vertex("d")])
    assert m == 0b1010
    assert u.members(m) == [vertex("b"), vertex("d")]
    with pytest.raises(UniverseMismatch):
        u.members(1 << 4)


def test_solution_rejects_foreign_bits():
    u = Universe([vertex("a")])
    with pytest.raises(UniverseMismatch):
        Solution(u, 0b10)


def test_solution_set_equality_ignores_order():
    from sspforge.core import solution_equal_sets
    u = Universe([vertex("u"), vertex("v")])
    a = SolutionSet(u, frozenset({0b01, 0b10}))
    b = SolutionSet(u, frozenset({0b10, 0b01}))
    assert solution_equal_sets(a, b)
    assert not solution_equal_sets(SolutionSet(u, frozenset({0b01})), a)
    assert solution_equal_sets(SolutionSet(u, frozenset()), SolutionSet(u, frozenset()))
    with pytest.raises(UniverseMismatch):
        solution_equal_sets(a, SolutionSet(Universe([vertex("x")]), frozenset()))


def test_bit_helpers():
    assert list(bit_indices(0b101001)) == [0, 3, 5]
    assert popcount(0b101001) == 3


def test_budget_counts_and_raises():
    b = Budget(3)
    b.tick(3)
    with pytest.raises(BudgetExceeded) as info:
        b.tick()
    assert info.value.nodes == 4 and info.value.limit == 3
    with pytest.raises(ValueError):
        Budget(0)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("SSPFORGE_BUDGET", "1234")
    assert default_budget() == 1234
    assert Budget().limit == 1234
    monkeypatch.setenv("SSPFORGE_BUDGET", "junk")
    assert default_budget() == 50_000_000


def test_fresh_name_primes_and_reserves():
    taken = {"h", "h'"}
    assert fresh_name("h", taken) == "h''"
    assert fresh_name("g", taken) == "g"
    assert "g" in taken and "h''" in taken


def test_element_rendering():
    assert str(lit("x", False)) == "~x"
    assert str(edge("b", "a")) == "{a,b}"
