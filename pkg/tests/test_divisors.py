import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire.burning import modified_dhar, reduce
from chipfire.divisors import (
    apply_script,
    canonical,
    count_effective,
    degree,
    enumerate_effective,
    equivalent,
    fire_subset,
    format_divisor,
    indicator,
    is_effective,
    is_principal,
    level_set_decomposition,
    negative_part,
    normalize_script,
    parse_divisor,
    positive_part,
    principal_witness,
    support,
)
from chipfire.errors import DisconnectedGraphError, DomainError
from chipfire.families import banana, complete, cycle, path
from chipfire.graph import Multigraph, genus

from conftest import FIXTURES, connected_multigraphs, graph_and_divisor


def test_degree_examples():
    assert degree((0, 0, 0)) == 0
    assert degree((-1, 2, 0)) == 1
    for g in FIXTURES.values():
        assert degree(canonical(g)) == 2 * genus(g) - 2


def test_effective_and_support():
    assert is_effective((0, 0)) and support((0, 0)) == frozenset()
    assert not is_effective((-1, 2, 0)) and support((-1, 2, 0)) == {1}
    k = canonical(complete(4))
    assert is_effective(k) and support(k) == {0, 1, 2, 3}


def test_parts():
    d = (-2, 3, 0, -1)
    assert positive_part(d) == (0, 3, 0, 0)
    assert negative_part(d) == (2, 0, 0, 1)


def test_canonical():
    assert canonical(cycle(6)) == (0,) * 6
    assert canonical(complete(4)) == (1, 1, 1, 1)
    assert canonical(banana(5)) == (3, 3)


class TestApplyScript:
    def test_constant_script(self):
        g = complete(4)
        assert apply_script(g, (1, -2, 0, 3), (5, 5, 5, 5)) == (1, -2, 0, 3)

    def test_fire_one_vertex_on_triangle(self):
        assert apply_script(cycle(3), (0, 2, 0), indicator(3, {1})) == (1, 0, 1)

    def test_zero_script(self):
        assert apply_script(cycle(3), (4, -1, 2), (0, 0, 0)) == (4, -1, 2)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            apply_script(cycle(3), (0, 0), (0, 0, 0))

    @settings(max_examples=100, deadline=None)
    @given(graph_and_divisor(), st.data())
    def test_degree_invariant(self, gd, data):
        g, d = gd
        f = data.draw(st.lists(st.integers(-4, 4), min_size=g.n, max_size=g.n))
        assert degree(apply_script(g, d, f)) == degree(d)


class TestFireSubset:
    def test_whole_vertex_set(self):
        g = complete(4)
        assert fire_subset(g, (1, 2, 3, 4), range(4)) == (1, 2, 3, 4)

    def test_banana(self):
        assert fire_subset(banana(2), (2, 0), {0}) == (0, 2)

    def test_cycle_pair(self):
        # C_4 edges 0-1, 1-2, 2-3, 3-0; firing {0, 1} pushes one chip over 1-2 and over 0-3
        assert fire_subset(cycle(4), (1, 1, 1, 1), {0, 1}) == (0, 0, 2, 2)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            fire_subset(cycle(3), (0, 0, 0), [])

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            fire_subset(cycle(3), (0, 0, 0), [5])

    @settings(max_examples=100, deadline=None)
    @given(graph_and_divisor(), st.data())
    def test_matches_indicator_script(self, gd, data):
        g, d = gd
        w = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
        assert fire_subset(g, d, w) == apply_script(g, d, indicator(g.n, w))


class TestEquivalence:
    def test_reflexive_with_zero_script(self):
        g = cycle(3)
        ok, f = equivalent(g, (1, 0, 1), (1, 0, 1), witness=True)
        assert ok and f == (0, 0, 0)

    def test_triangle_pair(self):
        g = cycle(3)
        ok, f = equivalent(g, (1, 0, 1), (0, 2, 0), witness=True)
        assert ok
        assert apply_script(g, (1, 0, 1), f) == (0, 2, 0)
        assert min(f) == 0

    def test_degree_mismatch(self):
        assert not equivalent(cycle(3), (1, 0, 0), (1, 1, 0))

    def test_principal(self):
        g = complete(4)
        lap_image = apply_script(g, (0, 0, 0, 0), (2, 0, 1, 0))
        assert is_principal(g, lap_image)
        assert not is_principal(g, (1, -1, 0, 0))
        assert principal_witness(g, (1, 0, 0, 0)) is None

    def test_disconnected(self):
        g = Multigraph.from_edges(3, [(0, 1, 1)])
        with pytest.raises(DisconnectedGraphError):
            equivalent(g, (0, 0, 0), (0, 0, 0))

    def brute_equivalent(self, g, d1, d2, span=3):
        """Search firing scripts with entries in [0, span] (min 0 suffices)."""
        for f in itertools.product(range(span + 1), repeat=g.n):
            if min(f) == 0 and apply_script(g, d1, f) == tuple(d2):
                return True
        return False

    @settings(max_examples=60, deadline=None)
    @given(connected_multigraphs(max_n=4, max_mult=2), st.data())
    def test_agrees_with_script_search(self, g, data):
        d1 = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.n, max_size=g.n)))
        f = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
        d2 = apply_script(g, d1, f)
        assert equivalent(g, d1, d2)
        assert self.brute_equivalent(g, d1, d2, 2)
        d3 = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.n, max_size=g.n)))
        if self.brute_equivalent(g, d1, d3, 4):
            assert equivalent(g, d1, d3)

    @settings(max_examples=60, deadline=None)
    @given(connected_multigraphs(max_n=6), st.data())
    def test_equivalence_relation(self, g, data):
        def draw_div():
            return tuple(data.draw(st.lists(st.integers(-2, 3), min_size=g.n, max_size=g.n)))

        a = draw_div()
        # bias toward equivalent triples by moving a along random scripts
        b = apply_script(g, a, data.draw(st.lists(st.integers(-2, 2), min_size=g.n, max_size=g.n)))
        c = apply_script(g, b, data.draw(st.lists(st.integers(-2, 2), min_size=g.n, max_size=g.n)))
        other = draw_div()
        assert equivalent(g, a, a)
        assert equivalent(g, a, b) and equivalent(g, b, a)
        assert equivalent(g, b, c) and equivalent(g, a, c)
        assert equivalent(g, a, other) == equivalent(g, other, a)
        if equivalent(g, a, other):
            assert equivalent(g, c, other)
        ok, f = equivalent(g, a, c, witness=True)
        assert ok and apply_script(g, a, f) == c and min(f) == 0


class TestEnumerateEffective:
    def test_two_vertices_degree_one(self):
        assert list(enumerate_effective(2, 1)) == [(1, 0), (0, 1)]

    def test_count_six_two(self):
        assert sum(1 for _ in enumerate_effective(6, 2)) == 21 == comb(7, 2)

    def test_single_vertex(self):
        assert list(enumerate_effective(1, 7)) == [(7,)]

    def test_degree_zero(self):
        assert list(enumerate_effective(4, 0)) == [(0, 0, 0, 0)]

    def test_rejects(self):
        with pytest.raises(DomainError):
            list(enumerate_effective(3, -1))
        with pytest.raises(DomainError):
            list(enumerate_effective(0, 1))

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("k", range(0, 6))
    def test_complete_ordered_and_unique(self, n, k):
        expected = sorted(
            (c for c in itertools.product(range(k + 1), repeat=n) if sum(c) == k),
            reverse=True,
        )
        got = list(enumerate_effective(n, k))
        assert got == expected
        assert len(got) == count_effective(n, k)
        assert list(enumerate_effective(n, k, ascending=True)) == expected[::-1]

    def test_streaming(self):
        stream = enumerate_effective(30, 12)
        assert next(stream) == (12,) + (0,) * 29


class TestLevelSets:
    def test_constant(self):
        sets, seq = level_set_decomposition(cycle(3), (4, 4, 4), (1, 2, 3))
        assert sets == [frozenset({0, 1, 2})]
        assert seq == [(1, 2, 3)]

    def test_triangle_spike(self):
        g = cycle(3)
        sets, seq = level_set_decomposition(g, (2, 0, 0), (0, 0, 0))
        assert sets == [frozenset({0}), frozenset({0}), frozenset({0, 1, 2})]
        assert seq[-1] == apply_script(g, (0, 0, 0), (2, 0, 0))
        assert seq == [(0, 0, 0), (-2, 1, 1), (-4, 2, 2)]

    @settings(max_examples=100, deadline=None)
    @given(graph_and_divisor(), st.data())
    def test_endpoint_and_nesting(self, gd, data):
        g, d = gd
        f = data.draw(st.lists(st.integers(-3, 3), min_size=g.n, max_size=g.n))
        sets, seq = level_set_decomposition(g, f, d)
        assert sets[-1] == frozenset(range(g.n))
        assert all(a <= b for a, b in zip(sets, sets[1:]))
        assert seq[0] == d
        assert seq[-1] == apply_script(g, d, normalize_script(f))

    @settings(max_examples=100, deadline=None)
    @given(graph_and_divisor(lo=-2, hi=3))
    def test_intermediate_divisors_stay_above_common_floor(self, gd):
        g, d = gd
        found = modified_dhar(g, d)
        if found is None:
            return
        start, _ = reduce(g, 0, d)
        target = found[0]
        if not is_effective(start):
            return
        ok, f = equivalent(g, start, target, witness=True)
        assert ok
        _, seq = level_set_decomposition(g, f, start)
        assert seq[-1] == target
        for mid in seq:
            assert all(mid[v] >= min(start[v], target[v]) for v in range(g.n))


class TestText:
    def test_parse(self):
        assert parse_divisor(" -1 2  0 ") == (-1, 2, 0)
        assert parse_divisor("−1 2 0", 3) == (-1, 2, 0)

    def test_parse_errors(self):
        with pytest.raises(DomainError):
            parse_divisor("1 x 0")
        with pytest.raises(DomainError):
            parse_divisor("1 2", 3)

    def test_format(self):
        assert format_divisor((0, -3, 2)) == "0 -3 2"


def test_every_degree_zero_divisor_on_a_tree_is_principal():
    # one spanning tree, so the degree-0 class group is trivial
    g = path(4)
    for d in itertools.product(range(-1, 2), repeat=4):
        assert is_principal(g, d) == (sum(d) == 0)
