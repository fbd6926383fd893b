import math
import random
from fractions import Fraction

import numpy as np
import pytest

import oracles
from centra import measures
from centra.graph import Graph, enumerate_graphs, generate, permute, saturate
from centra.measures import MeasureId, dv_max_terms, evaluate, evaluate_all, value

STAR_ONE = ["ABH", "NBC", "NCC", "NDC", "NHD", "NHT"]
RING_ZERO = ["ABH", "ECD", "NBC", "NCC", "NDC", "NDE", "NDV", "NGC"]
COMPLETE_ZERO = ["ABH", "ECD", "NBC", "NCC", "NDC", "NDE", "NDV", "NGC", "NNC"]


def random_graph(n, p, rng):
    return Graph.from_pairs(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


class TestExamples:
    @pytest.mark.parametrize(
        "measure, want",
        [
            ("ABH", 0.75),
            ("NCC", 5 / 12),
            ("NDC", 1 / 3),
            ("NDE", 0.5),
            ("NDV", 1 / 3),
            ("NGC", 1 / 3),
            ("NHD", 2 / 3),
            ("NHT", 5 / 6),
        ],
    )
    def test_path_four(self, p4, measure, want):
        assert value(measure, p4) == pytest.approx(want, abs=1e-12)

    def test_ecd_three_path(self):
        g = Graph.from_pairs(3, [(0, 1), (1, 2)])
        assert value("ECD", g) == pytest.approx(oracles.ecd(3, [(0, 1), (1, 2)]), abs=1e-12)
        assert value("ECD", g) == pytest.approx(0.207, abs=1e-3)

    def test_nnc_star(self):
        lam_bar = math.log((math.exp(2) + math.exp(-2) + 3) / 5)
        lam_max = math.log((math.exp(4) + 4 * math.exp(-1)) / 5)
        assert value("NNC", generate("star", 5)) == pytest.approx(1 - lam_bar / lam_max, abs=1e-12)
        assert value("NNC", generate("star", 5)) == pytest.approx(0.692, abs=1e-3)

    def test_hub_saturation_example(self, hub_loss_graph):
        after = saturate(hub_loss_graph, 3)
        assert value("NBC", hub_loss_graph) == pytest.approx(0.82, abs=0.005)
        assert value("NBC", after) == pytest.approx(0.36, abs=0.005)
        assert value("NDC", hub_loss_graph) == pytest.approx(0.7, abs=1e-12)
        assert value("NDC", after) == pytest.approx(0.6, abs=1e-12)

    def test_ngc_one_edge_graph(self):
        for n in range(3, 12):
            assert value("NGC", Graph.from_pairs(n, [(0, 1)])) == pytest.approx(1.0, abs=1e-12)

    def test_nht_triangle(self):
        assert value("NHT", generate("complete", 3)) == 1.0

    def test_karate(self, karate):
        got = {r.measure.value: r.value for r in evaluate_all(karate, ["NBC", "NCC", "NDC"])}
        assert got["NBC"] == pytest.approx(0.405, abs=1e-3)
        assert got["NCC"] == pytest.approx(0.298, abs=1e-3)
        assert got["NDC"] == pytest.approx(0.399, abs=1e-3)


class TestDegenerate:
    def test_empty_graph_all_zero_and_flagged(self):
        for r in evaluate_all(Graph(5)):
            assert r.value == 0.0
        flagged = {r.measure.value for r in evaluate_all(Graph(5)) if r.degenerate}
        assert flagged == {"ABH", "NGC", "NHD", "NHT", "NNC"}

    def test_single_node(self):
        assert all(r.value == 0.0 and r.degenerate for r in evaluate_all(Graph(1)) if r.measure != MeasureId.NNC)
        assert value("NNC", Graph(1)) == 0.0

    def test_two_nodes(self):
        g = Graph.from_pairs(2, [(0, 1)])
        small = {r.measure.value for r in evaluate_all(g) if r.degenerate}
        assert small == {"NBC", "NCC", "NDC", "NDV", "NGC"}
        assert value("NHD", g) == 1.0

    def test_range_error_on_large_excursion(self):
        with pytest.raises(measures.MeasureRangeError):
            measures._result(MeasureId.NDC, 1.01)

    def test_small_excursion_clamped(self):
        assert measures._result(MeasureId.NDC, 1 + 1e-12).value == 1.0
        assert measures._result(MeasureId.NDC, -1e-12).value == 0.0


class TestCalibration:
    @pytest.mark.parametrize("n", range(3, 101))
    def test_star_exact_one(self, n):
        g = generate("star", n)
        for m in STAR_ONE:
            assert value(m, g) == 1.0, m
        assert value("NGC", g) == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("n", range(3, 101))
    def test_ring_and_complete_exact_zero(self, n):
        ring, complete = generate("ring", n), generate("complete", n)
        for m in RING_ZERO:
            assert value(m, ring) == 0.0, m
        for m in COMPLETE_ZERO:
            assert value(m, complete) == 0.0, m

    def test_ring_nonzero_for_the_rest(self):
        got = {r.measure.value: r.value for r in evaluate_all(generate("ring", 8))}
        assert all(got[m] == 0.0 for m in RING_ZERO)
        assert all(got[m] > 0 for m in ("NHD", "NHT", "NNC"))

    def test_complete_nhd_one(self):
        assert value("NHD", generate("complete", 12)) == 1.0


class TestOracleEquivalence:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    @pytest.mark.parametrize("measure", [m.value for m in MeasureId])
    def test_connected(self, n, measure):
        oracle = oracles.MEASURES[measure]
        for g in enumerate_graphs(n, connected_only=True):
            edges = sorted(g.edges)
            assert value(measure, g) == pytest.approx(oracle(n, edges), abs=1e-9), edges

    def test_spectrum_on_random_graphs(self):
        rng = random.Random(100)
        from centra.centrality import adjacency_spectrum

        for _ in range(100):
            g = random_graph(rng.randint(1, 200), rng.random() * 0.15, rng)
            lam = adjacency_spectrum(g).eigenvalues
            assert abs(math.fsum(lam)) <= 1e-6
            assert abs(math.fsum(x * x for x in lam) - 2 * g.m) <= 1e-6


class TestRange:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_exhaustive(self, n):
        for g in enumerate_graphs(n):
            for r in evaluate_all(g):
                assert 0.0 <= r.value <= 1.0

    def test_random(self):
        rng = random.Random(7)
        for _ in range(1000):
            g = random_graph(rng.randint(1, 60), rng.random() * 0.5, rng)
            for r in evaluate_all(g):
                assert 0.0 <= r.value <= 1.0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_invariant_under_relabeling(n):
    rng = random.Random(42)
    for g in enumerate_graphs(n):
        base = [r.value for r in evaluate_all(g)]
        for _ in range(20):
            p = list(range(n))
            rng.shuffle(p)
            other = [r.value for r in evaluate_all(permute(g, p))]
            assert np.allclose(base, other, atol=1e-9, rtol=0), (sorted(g.edges), p)


def test_deterministic(karate):
    first = [r.value for r in evaluate_all(karate)]
    from centra import centrality

    centrality._path_stats.cache_clear()
    centrality._eigh.cache_clear()
    assert [r.value for r in evaluate_all(karate)] == first


def test_evaluate_all_matches_individual_calls():
    g = generate("star-perturbed", 9)
    order = ["NNC", "ABH", "NBC"]
    assert [r.measure.value for r in evaluate_all(g, order)] == order
    assert evaluate_all(g, order) == [evaluate(m, g) for m in order]


def test_evaluate_all_star_calibration():
    assert [r.value for r in evaluate_all(generate("star", 5), ["NBC", "NCC", "NDC"])] == [1.0, 1.0, 1.0]


class TestNdvNormalizer:
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_star_term_wins_below_seven(self, n):
        star, two_hub = dv_max_terms(n)
        assert star > two_hub

    @pytest.mark.parametrize("n", range(7, 21))
    def test_two_hub_term_wins_from_seven(self, n):
        star, two_hub = dv_max_terms(n)
        assert two_hub > star

    def test_seven_values(self):
        assert dv_max_terms(7) == (Fraction(150, 49), Fraction(160, 49))

    def test_star_hits_one_below_seven(self):
        for n in (4, 5, 6):
            assert value("NDV", generate("star", n)) == 1.0
        assert value("NDV", generate("star", 7)) < 1.0
