import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire.errors import DomainError
from chipfire.families import (
    banana,
    build_family,
    chain,
    complete,
    complete_bipartite,
    cycle,
    desc_banana,
    gen_banana,
    path,
)
from chipfire.gonality import gonality, gonality_sequence
from chipfire.graph import genus
from chipfire.theory import (
    CONDITIONAL_GENERA,
    SEQUENCE_TABLE,
    GonalityFact,
    check_trigonal_conjecture,
    expected_family_gonality,
    expected_sequence,
    genus_from_sequence,
    propagate_bounds,
    trigonal_curve_gonality,
)

from conftest import FIXTURES, connected_multigraphs


class TestExpectedSequence:
    def test_genus_five_gon_four(self):
        assert expected_sequence(5, 4, 6).terms == (4, 6, 7, 8, 10, 11)

    def test_genus_four_gon_three(self):
        assert expected_sequence(4, 3, 6).terms == (3, 5, 6, 8, 9, 10)

    def test_tree(self):
        assert expected_sequence(0, 1, 8).terms == tuple(range(1, 9))

    def test_extends_past_table(self):
        assert expected_sequence(3, 2, 9).terms == (2, 4, 6, 7, 8, 9, 10, 11, 12)

    def test_low_genus_ignores_gon1(self):
        assert expected_sequence(1, None, 3).terms == (2, 3, 4)
        assert expected_sequence(1, 9, 3).terms == (2, 3, 4)

    def test_genus_six_needs_gon2(self):
        with pytest.raises(DomainError):
            expected_sequence(6, 3, 6)
        assert expected_sequence(6, 3, 6, gon2=5).terms == (3, 5, 7, 9, 10, 12)
        assert expected_sequence(6, 4, 6, gon2=6).terms == (4, 6, 8, 9, 10, 12)
        assert expected_sequence(6, 2, 6).terms == (2, 4, 6, 8, 10, 12)
        assert 6 in CONDITIONAL_GENERA

    @pytest.mark.parametrize(
        "args",
        [(3, 4, 5), (7, 3, 5), (-1, 1, 3), (4, 1, 5), (4, None, 5), (2, 2, 0), (5, 3, 4, 6)],
    )
    def test_rejects(self, args):
        with pytest.raises(DomainError):
            expected_sequence(*args)

    def test_rows_are_valid_sequences(self):
        for key, row in SEQUENCE_TABLE.items():
            gen = key[0]
            assert genus_from_sequence(row) == gen
            assert all(b > a for a, b in zip(row, row[1:]))


class TestTableAgainstBoundRules:
    """The tabulated rows follow from the bound rules once gon_1 (and gon_2 in genus 6) is fixed."""

    @pytest.mark.parametrize("key", sorted(SEQUENCE_TABLE))
    def test_row_is_forced(self, key):
        gen = key[0]
        facts = []
        if len(key) > 1:
            facts.append(GonalityFact(1, key[1], key[1]))
        if len(key) > 2:
            facts.append(GonalityFact(2, key[2], key[2]))
        result = propagate_bounds(gen, facts, span=6)
        assert tuple(result.exact(k) for k in range(1, 7)) == SEQUENCE_TABLE[key]


class TestPropagateBounds:
    def test_genus_four_non_hyperelliptic(self):
        result = propagate_bounds(4, [GonalityFact(1, lower=3)])
        assert result.exact(2) == 5

    @pytest.mark.parametrize("g", range(2, 9))
    def test_top_index(self, g):
        assert propagate_bounds(g, []).exact(g - 1) == 2 * g - 2

    def test_genus_zero(self):
        result = propagate_bounds(0, [], span=6)
        assert [result.exact(k) for k in range(1, 7)] == [1, 2, 3, 4, 5, 6]

    def test_dict_facts_and_closed_form(self):
        result = propagate_bounds(3, [{"r": 1, "upper": 2}], span=5)
        assert [result.exact(k) for k in range(1, 6)] == [2, 4, 6, 7, 8]

    def test_contradiction(self):
        with pytest.raises(DomainError):
            propagate_bounds(4, [GonalityFact(1, lower=4, upper=4), GonalityFact(2, upper=4)])
        with pytest.raises(DomainError):
            propagate_bounds(2, [GonalityFact(1, lower=3)])
        with pytest.raises(DomainError):
            propagate_bounds(-1, [])
        with pytest.raises(DomainError):
            propagate_bounds(3, [GonalityFact(0, lower=1)])

    def test_dual_upper_bound_example(self):
        # gon_1 <= 3 on genus 5 puts a rank-2 divisor at degree 5
        result = propagate_bounds(5, [GonalityFact(1, upper=3)])
        assert result.upper[2] <= 5

    def test_dual_lower_bound_example(self):
        # gon_1 >= 4 on genus 5: K - D for D of degree 5 and rank 2 would have
        # degree 3 and rank 1, so gon_2 >= 6
        result = propagate_bounds(5, [GonalityFact(1, lower=4)])
        assert result.lower[2] >= 6

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_sound_on_fixtures(self, name):
        g = FIXTURES[name]
        gen = genus(g)
        truth = gonality_sequence(g, gen + 2, reduced_only=True).terms
        for k in range(1, len(truth) + 1):
            for kind in ("lower", "upper", "both"):
                fact = GonalityFact(
                    k,
                    lower=truth[k - 1] if kind in ("lower", "both") else None,
                    upper=truth[k - 1] if kind in ("upper", "both") else None,
                )
                result = propagate_bounds(gen, [fact], span=len(truth))
                for j, t in enumerate(truth, 1):
                    assert result.lower[j] <= t <= result.upper[j], (name, fact, j)

    @settings(max_examples=40, deadline=None)
    @given(connected_multigraphs(min_n=2, max_n=5, max_mult=3), st.data())
    def test_sound_on_random_graphs(self, g, data):
        gen = genus(g)
        if gen > 6:
            return
        truth = gonality_sequence(g, gen + 1, reduced_only=True).terms
        picks = data.draw(st.lists(st.integers(1, len(truth)), max_size=3))
        facts = [GonalityFact(k, lower=truth[k - 1]) for k in picks]
        facts += [GonalityFact(k, upper=truth[k - 1]) for k in picks[:1]]
        result = propagate_bounds(gen, facts, span=len(truth))
        for j, t in enumerate(truth, 1):
            assert result.lower[j] <= t <= result.upper[j]


class TestGenusFromSequence:
    def test_examples(self):
        assert genus_from_sequence((1, 2, 3, 4)) == 0
        assert genus_from_sequence((2, 3, 4, 5)) == 1
        assert genus_from_sequence((3, 5, 7, 8, 10, 11, 12)) == 5
        assert genus_from_sequence((2, 4, 6, 7, 8)) == 3


class TestTrigonal:
    def test_formula(self):
        assert [trigonal_curve_gonality(6, k) for k in range(1, 8)] == [3, 6, 7, 9, 10, 12, 13]
        assert [trigonal_curve_gonality(3, k) for k in range(1, 4)] == [3, 4, 6]

    def test_counterexample_graph(self):
        report = check_trigonal_conjecture(chain([3, 2, 2, 2, 2]))
        assert report.genus == 6
        row = report.rows[1]
        assert (row.k, row.computed, row.predicted, row.match) == (2, 5, 6, False)
        assert 2 in report.mismatches

    def test_k4(self):
        report = check_trigonal_conjecture(complete(4))
        assert [(r.k, r.computed) for r in report.rows] == [(1, 3), (2, 4)]
        assert report.mismatches == []

    def test_beyond_genus_agrees(self):
        for g in range(1, 10):
            for k in range(g, g + 4):
                assert trigonal_curve_gonality(g, k) == g + k

    def test_requires_gonality_three(self):
        with pytest.raises(DomainError):
            check_trigonal_conjecture(banana(4))


class TestFamilyFormulas:
    def test_examples(self):
        assert expected_family_gonality("genbanana", {"n": 3, "e": 5}, 2) == 6
        assert expected_family_gonality("genbanana", {"n": 4, "e": 4}, 2) == 7
        assert expected_family_gonality("bipartite", {"m": 3, "n": 3}, 2) == 5
        assert expected_family_gonality("descbanana", {"a": 3, "b": 4}, 2) == 5

    @pytest.mark.parametrize(
        "family,params,r",
        [
            ("genbanana", {"n": 3, "e": 2}, 3),
            ("descbanana", {"a": 3, "b": 6}, 2),
            ("complete", {"n": 4}, 1),
            ("bipartite", {"m": 2}, 1),
            ("path", {"n": 3}, 0),
        ],
    )
    def test_uncovered(self, family, params, r):
        with pytest.raises(DomainError):
            expected_family_gonality(family, params, r)


def covered_instances():
    cases = []
    for n in range(2, 8):
        cases += [("path", {"n": n}, r) for r in (1, 2, 3)]
    for n in range(3, 8):
        cases += [("cycle", {"n": n}, r) for r in (1, 2, 3)]
    for n in range(1, 8):
        cases += [("banana", {"n": n}, r) for r in (1, 2, 3)]
    for n in range(2, 6):
        for e in range(1, 6):
            if n * e <= 16:
                cases += [("genbanana", {"n": n, "e": e}, r) for r in (1, 2)]
    for a in range(2, 7):
        for b in range(a, 8):
            cases.append(("descbanana", {"a": a, "b": b}, 1))
            if b <= 2 * a - 1 and a <= 5:
                cases.append(("descbanana", {"a": a, "b": b}, 2))
    for m in range(1, 5):
        for n in range(m, 5):
            if m + n <= 7:
                cases += [("bipartite", {"m": m, "n": n}, r) for r in (1, 2)]
    return cases


@pytest.mark.parametrize("family,params,r", covered_instances())
def test_closed_forms_match_search(family, params, r):
    g = build_family(family, {k: str(v) for k, v in params.items()})
    assert gonality(g, r, reduced_only=True).value == expected_family_gonality(family, params, r)
