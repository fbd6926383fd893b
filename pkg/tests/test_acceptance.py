"""Acceptance criteria; each test prints one PASS/FAIL line for its criterion."""

import json
import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

import oracles
from centra import assessment, axioms, centrality
from centra.axioms import PUBLISHED_TABLE, TABLE_COLUMNS
from centra.graph import Graph, enumerate_graphs, generate, permute, saturate
from centra.measures import MeasureId, dv_max_terms, evaluate_all, value

PUBLISHED_TOTALS = {
    "NBC": 5.5, "NCC": 5.5, "NDC": 5.5, "NHD": 4.0, "ABH": 3.5, "NDE": 3.5,
    "NDV": 3.5, "NHT": 3.5, "NNC": 3.5, "NGC": 3.0, "ECD": 2.5,
}


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def table1():
    start = time.perf_counter()
    table = axioms.compliance_table(max_n=6, perms=20, seed=42)
    return table, time.perf_counter() - start


@pytest.fixture(scope="module")
def table2():
    start = time.perf_counter()
    verdicts = [assessment.classify_behavior(s) for s in assessment.sweep()]
    table = assessment.numerical_table(verdicts)
    return table, time.perf_counter() - start


def test_1_karate(karate, report):
    # one-time JIT compilation (cached on disk afterwards) is reported separately
    start = time.perf_counter()
    centrality.betweenness_raw(generate("ring", 3))
    compile_time = time.perf_counter() - start
    centrality._path_stats.cache_clear()
    start = time.perf_counter()
    got = {r.measure.value: r.value for r in evaluate_all(karate, ["NBC", "NCC", "NDC"])}
    elapsed = time.perf_counter() - start
    want = {"NBC": 0.405, "NCC": 0.298, "NDC": 0.399}
    ok = (karate.n, karate.m) == (34, 78) and all(abs(got[k] - v) <= 1e-3 for k, v in want.items()) and elapsed < 1
    detail = ", ".join(f"{k}={got[k]:.4f}" for k in want) + f" in {elapsed:.3f}s (kernel warm-up {compile_time:.1f}s)"
    report(1, ok, detail)


def test_2_table1(table1, report):
    table, elapsed = table1
    mismatches = [
        f"{m.value}-{c} (computed {'sat' if table[m][c].satisfied else 'viol'})"
        for m in MeasureId
        for c, published in zip(TABLE_COLUMNS, PUBLISHED_TABLE[m])
        if table[m][c].satisfied != published
    ]
    matched = 66 - len(mismatches)
    p6 = not table[MeasureId.NBC]["P6"].satisfied and not table[MeasureId.NDC]["P6"].satisfied
    ok = not mismatches and p6 and elapsed < 300
    detail = f"{matched}/66 cells match in {elapsed:.1f}s"
    if mismatches:
        detail += "; differing: " + ", ".join(mismatches)
    detail += f"; max ECD without saturated node (n<=6) = {max_ecd_unsaturated(6):.4f}"
    report(2, ok, detail)


def max_ecd_unsaturated(max_n):
    best = 0.0
    for n in range(1, max_n + 1):
        table = axioms.value_table(MeasureId.ECD, n)
        inc = axioms._incidence_masks(n)
        for mask, x in enumerate(table):
            if not any(mask & inc[v] == inc[v] for v in range(n)):
                best = max(best, float(x))
    return best


def test_3_counterexample_values(hub_loss_graph, report):
    after = saturate(hub_loss_graph, 3)
    nbc = (value("NBC", hub_loss_graph), value("NBC", after))
    ndc = (value("NDC", hub_loss_graph), value("NDC", after))
    ok = (
        abs(nbc[0] - 0.82) <= 0.005
        and abs(nbc[1] - 0.36) <= 0.005
        and abs(ndc[0] - 0.7) <= 0.005
        and abs(ndc[1] - 0.6) <= 0.005
    )
    report(3, ok, f"NBC {nbc[0]:.4f} -> {nbc[1]:.4f}, NDC {ndc[0]:.4f} -> {ndc[1]:.4f}")


def test_4_table2(table2, report):
    table, elapsed = table2
    mismatches = [
        f"{m.value}-{t.value}"
        for m in MeasureId
        for t, published in zip(assessment.TOPOLOGY_ORDER, assessment.PUBLISHED_NUMERICAL_TABLE[m])
        if table[m][t].passed != published
    ]
    ok = not mismatches and elapsed < 120
    detail = f"{66 - len(mismatches)}/66 cells match in {elapsed:.1f}s"
    if mismatches:
        detail += "; differing: " + ", ".join(mismatches)
    report(4, ok, detail)


def test_5_scores(table1, table2, report):
    t1, _ = table1
    t2, _ = table2
    s_a = {m: axioms.satisfied_count(row) for m, row in t1.items()}
    s_n = {m: assessment.passed_count(row) for m, row in t2.items()}
    rows = assessment.score_table(s_a, s_n, 0.5, 0.5)
    totals = {r.measure.value: r.total for r in rows}
    off = [f"{k} {totals[k]} vs {v}" for k, v in PUBLISHED_TOTALS.items() if totals[k] != v]
    top = max(totals.values())
    leaders = sorted(k for k, v in totals.items() if v == top)
    ok = not off and leaders == ["NBC", "NCC", "NDC"]
    detail = f"{11 - len(off)}/11 totals match, leaders {','.join(leaders)}"
    if off:
        detail += "; differing: " + ", ".join(off)
    report(5, ok, detail)


def test_6_calibration(report):
    failures = []
    for n in range(3, 101):
        star, ring, complete = generate("star", n), generate("ring", n), generate("complete", n)
        failures += [f"{m}(S{n})" for m in ("ABH", "NBC", "NCC", "NDC", "NHD", "NHT") if value(m, star) != 1.0]
        failures += [
            f"{m}(C{n})" for m in ("ABH", "ECD", "NBC", "NCC", "NDC", "NDE", "NDV", "NGC") if value(m, ring) != 0.0
        ]
        failures += [
            f"{m}(K{n})"
            for m in ("ABH", "ECD", "NBC", "NCC", "NDC", "NDE", "NDV", "NGC", "NNC")
            if value(m, complete) != 0.0
        ]
        if abs(value("NGC", star) - 0.5) > 1e-9:
            failures.append(f"NGC(S{n})")
    if value("NHT", generate("complete", 3)) != 1.0:
        failures.append("NHT(K3)")
    report(6, not failures, "all calibration values exact" if not failures else "off: " + ", ".join(failures[:10]))


def test_7_oracle_equivalence(report):
    worst = 0.0
    where = ""
    for n in range(3, 7):
        for g in enumerate_graphs(n, connected_only=True):
            edges = sorted(g.edges)
            for r in evaluate_all(g):
                err = abs(r.value - oracles.MEASURES[r.measure.value](n, edges))
                if err > worst:
                    worst, where = err, f"{r.measure.value} on {edges}"
    rng = random.Random(7)
    spectral = 0.0
    for _ in range(100):
        n = rng.randint(1, 200)
        p = rng.random() * 0.15
        g = Graph.from_pairs(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        lam = centrality.adjacency_spectrum(g).eigenvalues
        spectral = max(spectral, abs(math.fsum(lam)), abs(math.fsum(x * x for x in lam) - 2 * g.m))
    ok = worst <= 1e-9 and spectral <= 1e-6
    report(7, ok, f"max oracle deviation {worst:.2e}{' (' + where + ')' if worst > 1e-9 else ''}, "
                  f"max spectrum identity error {spectral:.2e}")


def test_8_isomorphism(report):
    rng = random.Random(42)
    worst = 0.0
    checked = 0
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            base = np.array([r.value for r in evaluate_all(g)])
            for _ in range(20):
                p = list(range(n))
                rng.shuffle(p)
                other = np.array([r.value for r in evaluate_all(permute(g, p))])
                worst = max(worst, float(np.abs(base - other).max()))
                checked += 1
    report(8, worst <= 1e-9, f"{checked} relabelings x 11 measures, max deviation {worst:.2e}")


def test_9_ndv_crossover(report):
    star_wins = all(dv_max_terms(n)[0] > dv_max_terms(n)[1] for n in (4, 5, 6))
    hub_wins = all(dv_max_terms(n)[1] > dv_max_terms(n)[0] for n in range(7, 21))
    s7, h7 = dv_max_terms(7)
    report(9, star_wins and hub_wins, f"n=4..6 star term larger: {star_wins}; n=7..20 two-hub larger: {hub_wins}; "
                                      f"n=7 terms {s7} vs {h7}")


@pytest.mark.slow
def test_scalability_smoke(tmp_path, report):
    n, m = 36692, 361622
    rng = np.random.default_rng(2024)
    u = rng.integers(0, n, 2 * m)
    v = rng.integers(0, n, 2 * m)
    keep = u != v
    key = np.unique(np.minimum(u[keep], v[keep]) * n + np.maximum(u[keep], v[keep]))
    key = rng.permutation(key)[:m]
    path = tmp_path / "big.edges"
    path.write_text("\n".join(f"{k // n} {k % n}" for k in key.tolist()) + "\n")
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "centra.cli", "measure", "--input", str(path), "--format", "json", "--no-timestamp"],
        capture_output=True, text=True, timeout=900,
    )
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < 600
    detail = f"{n} nodes / {len(key)} edges in {elapsed:.0f}s"
    if proc.returncode == 0:
        res = json.loads(proc.stdout)["results"]
        detail += " (" + ", ".join(f"{r['measure']}={r['value']:.4g}" for r in res) + ")"
    else:
        detail += f", exit {proc.returncode}: {proc.stderr[-300:]}"
    report("smoke", ok, detail)
