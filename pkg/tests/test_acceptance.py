"""The eight acceptance criteria, each as one test that records a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the summary at the end.
"""

import itertools
import json
import time

import numpy as np
import pytest

from gridctl.cli import main
from gridctl.grid import GridSpec, build_grid_laplacian, build_path_laplacian
from gridctl.oracle import numeric_eigensystem, pbh_batch, pbh_uncontrollable
from gridctl.numtheory import odd_prime_powers
from gridctl.paths import canonical_uncontrollable_set, path_node_uncontrollable, path_uncontrollable_eigenpairs
from gridctl.simple_grid import simple_grid_controllable
from gridctl.spectral import check_witness, grid_spectrum, is_simple, min_control_set_size, path_eigensystem
from gridctl.symmetry import (
    brick_partition,
    component_polynomial,
    nonsimple_grid_controllable,
    predict_brick_subvectors,
    simultaneous_zero_test,
)

pytestmark = pytest.mark.acceptance


def cli_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def oracle_row(values, group_values):
    """Boolean row over oracle groups marking the analytic eigenvalues ``values``."""
    row = np.zeros(len(group_values), dtype=bool)
    gv = np.asarray(group_values)
    for x in values:
        k = int(np.argmin(np.abs(gv - float(x))))
        if abs(gv[k] - float(x)) > 1e-8:
            raise AssertionError(f"analytic eigenvalue {float(x)!r} has no oracle counterpart")
        row[k] = True
    return row


def test_criterion_1_worked_7x15(capsys, record_criterion):
    t0 = time.perf_counter()
    code_a, rep_a = cli_json(capsys, "analyze", "--dims", "7x15", "--nodes", "1,2;4,1")
    code_b, rep_b = cli_json(capsys, "analyze", "--dims", "7x15", "--nodes", "1,2;1,3")
    code_c, rep_c = cli_json(capsys, "analyze", "--dims", "7x15", "--nodes", "1,2;1,8;4,1")
    seconds = time.perf_counter() - t0
    expected = sorted(1 + 2 - 2 * np.cos(s * np.pi / 7) for s in (1, 3, 5))
    got = sorted(float(e["decimal"]) for e in rep_a["uncontrollable_eigenvalues"])
    err = max(abs(a - b) for a, b in zip(got, expected)) if len(got) == 3 else np.inf
    ok = (
        code_a == 3 and rep_a["common_pairs"] == [[7, 3]] and err <= 1e-12
        and code_b == 0 and rep_b["verdict"]["controllable"]
        and code_c == 3 and not rep_c["verdict"]["controllable"]
        and seconds < 1.0
    )
    record_criterion(1, ok, f"7x15 verdicts, max eigenvalue error {err:.1e}, {seconds:.2f}s")
    assert ok


def test_criterion_2_worked_4x6(capsys, record_criterion):
    t0 = time.perf_counter()
    code, rep = cli_json(capsys, "spectrum", "--dims", "4x6")
    _, scan = cli_json(capsys, "scan-conjecture", "--max-dims", "4x6")
    seconds = time.perf_counter() - t0
    multi = [e for e in rep["eigenvalues"] if e["multiplicity"] > 1]
    values = [float(e["decimal"]) for e in multi]
    classes = [set(e["brick"]["profile"]["classes"]) for e in multi]
    rules = [e["brick"]["profile"]["rule"] for e in multi]
    attributed = {float(e["decimal"]): e["attributed"] for e in scan["entries"] if e["dims"] == [4, 6]}
    ok = (
        code == 0
        and values == pytest.approx([2.0, 3.0], abs=1e-12)
        and [e["multiplicity"] for e in multi] == [2, 2]
        and classes == [{"S+-", "S-+"}, {"S++", "S--"}]
        and rules == ["c", "c"]
        and attributed == {2.0: [2, 2], 3.0: [2, 3]}
        and seconds < 1.0
    )
    record_criterion(2, ok, f"4x6 multiple eigenvalues {values}, classes {classes}, bricks {attributed}, {seconds:.2f}s")
    assert ok


def test_criterion_3_path_oracle(record_criterion):
    t0 = time.perf_counter()
    checked = bad = 0
    for n in range(1, 41):
        L = build_path_laplacian(n)
        sp = numeric_eigensystem(L)
        gv = sp.group_values()
        sets = [(i,) for i in range(1, n + 1)] + list(itertools.combinations(range(1, n + 1), 2))
        for m in (1, 2):
            group = [s for s in sets if len(s) == m]
            if not group:
                continue
            rows = pbh_batch(sp, np.array(group) - 1)
            for nodes, row in zip(group, rows):
                v = path_uncontrollable_eigenpairs(n, nodes)
                ours = oracle_row(v.uncontrollable_eigenvalues, gv)
                checked += 1
                if not np.array_equal(ours, row) or v.controllable != (not row.any()):
                    bad += 1
    seconds = time.perf_counter() - t0
    ok = bad == 0 and seconds < 120
    record_criterion(3, ok, f"{checked} path node sets (n <= 40), {bad} disagreements, {seconds:.1f}s")
    assert ok


def test_criterion_4_simple_grid_oracle(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    grids = [GridSpec((a, b)) for a in range(2, 13) for b in range(2, 13) if is_simple(GridSpec((a, b)))]
    checked = bad = 0
    for g in grids:
        sp = numeric_eigensystem(build_grid_laplacian(g))
        gv = sp.group_values()
        singles = np.arange(g.size)[:, None]
        pairs = np.array([rng.choice(g.size, 2, replace=False) for _ in range(500)])
        for sets in (singles, pairs):
            rows = pbh_batch(sp, sets)
            for flat, row in zip(sets, rows):
                nodes = [g.unflatten(int(f)) for f in flat]
                v = simple_grid_controllable(g, nodes, with_witnesses=False)
                checked += 1
                if not np.array_equal(oracle_row(v.uncontrollable_eigenvalues, gv), row):
                    bad += 1
    seconds = time.perf_counter() - t0
    ok = bad == 0 and seconds < 600
    record_criterion(4, ok, f"{len(grids)} simple grids, {checked} node sets, {bad} disagreements, {seconds:.1f}s")
    assert ok


def test_criterion_5_nonsimple_oracle(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    pair_checks = pair_bad = set_checks = set_bad = 0
    grids = 0
    for a, b in itertools.product(range(1, 11), repeat=2):
        g = GridSpec((a, b))
        if is_simple(g):
            continue
        grids += 1
        sp = numeric_eigensystem(build_grid_laplacian(g))
        gv = np.array(sp.group_values())
        nodes = list(g.nodes())
        pairs = np.array(list(itertools.combinations(range(g.size), 2)))
        doubles = [eb for eb in grid_spectrum(g) if eb.multiplicity == 2]
        if doubles:
            rows = pbh_batch(sp, pairs)
            for eb in doubles:
                col = int(np.argmin(np.abs(gv - float(eb.value))))
                for (p, q), expect in zip(pairs, rows[:, col]):
                    pair_checks += 1
                    if simultaneous_zero_test(eb, [nodes[p], nodes[q]]).zero != bool(expect):
                        pair_bad += 1
        mu = min_control_set_size(g)
        for m in (mu, mu + 1):
            if m > g.size:
                continue
            sets = np.array([np.sort(rng.choice(g.size, m, replace=False)) for _ in range(200)])
            rows = pbh_batch(sp, sets)
            for flat, row in zip(sets, rows):
                v = nonsimple_grid_controllable(g, [nodes[f] for f in flat], with_witnesses=False)
                set_checks += 1
                if not np.array_equal(oracle_row(v.uncontrollable_eigenvalues, gv), row):
                    set_bad += 1
    seconds = time.perf_counter() - t0
    ok = pair_bad == 0 and set_bad == 0 and seconds < 900
    record_criterion(
        5,
        ok,
        f"{grids} non-simple grids: {pair_checks} pair tests ({pair_bad} disagreements), "
        f"{set_checks} node sets ({set_bad} disagreements), {seconds:.1f}s",
    )
    assert ok


def test_criterion_6_eigen_identities(record_criterion):
    rng = np.random.default_rng(6)
    poly_err = 0.0
    for n in range(1, 26):
        for p in path_eigensystem(n):
            pred = np.array([float(component_polynomial(r)(p.value)) for r in range(1, n + 1)]) * p.vector[0]
            poly_err = max(poly_err, float(np.max(np.abs(pred - p.vector))))
    brick_res = 0.0
    cases = 0
    for base_dims in itertools.product(range(1, 6), repeat=2):
        base = GridSpec(base_dims)
        spectrum = grid_spectrum(base)
        for counts in itertools.product(range(1, 4), repeat=2):
            g = GridSpec(tuple(n * c for n, c in zip(base_dims, counts)))
            bp = brick_partition(g, base)
            L = build_grid_laplacian(g)
            for eb in spectrum:
                vecs = [b.vector for b in eb.basis] + [eb.matrix() @ rng.standard_normal(eb.multiplicity)]
                for v0 in vecs:
                    w = predict_brick_subvectors(bp, v0, eb.value)
                    scale = max(1.0, float(np.max(np.abs(v0))))
                    brick_res = max(brick_res, float(np.max(np.abs(L @ w - float(eb.value) * w))) / scale)
                    cases += 1
    canon_bad = 0
    for n in range(1, 61):
        for q in odd_prime_powers(n):
            by_node = tuple(i for i in range(1, n + 1) if q in path_node_uncontrollable(n, i))
            canon_bad += canonical_uncontrollable_set(n, q) != by_node
    ok = poly_err <= 1e-9 and brick_res <= 1e-10 and canon_bad == 0
    record_criterion(
        6,
        ok,
        f"polynomial law max error {poly_err:.1e}; brick residual {brick_res:.1e} over {cases} vectors; "
        f"{canon_bad} canonical-set mismatches",
    )
    assert ok


def test_criterion_7_witnesses(capsys, record_criterion):
    rng = np.random.default_rng(7)
    count = 0
    worst_res = worst_zero = 0.0

    def check(g, value, W, zeros):
        nonlocal count, worst_res, worst_zero
        check_witness(g, value, W, zeros)
        L = build_grid_laplacian(g)
        worst_res = max(worst_res, float(np.max(np.abs(L @ W - float(value) * W))))
        if zeros:
            worst_zero = max(worst_zero, max(abs(W[g.flatten(i)]) for i in zeros))
        count += 1

    for n in range(1, 41):
        g = GridSpec((n,))
        for nodes in [(i,) for i in range(1, n + 1)] + [tuple(sorted(rng.choice(n, 2, replace=False) + 1)) for _ in range(5) if n > 1]:
            v = path_uncontrollable_eigenpairs(n, nodes)
            for lam, W in zip(v.uncontrollable_eigenvalues, v.witnesses):
                check(g, lam, W, [(i,) for i in nodes])
    for a, b in itertools.product(range(1, 11), repeat=2):
        g = GridSpec((a, b))
        L = build_grid_laplacian(g)
        sp = numeric_eigensystem(L)
        m = min_control_set_size(g)
        for _ in range(10):
            flat = rng.choice(g.size, min(m, g.size), replace=False)
            nodes = [g.unflatten(int(f)) for f in flat]
            v = simple_grid_controllable(g, nodes) if is_simple(g) else nonsimple_grid_controllable(g, nodes)
            for lam, W in zip(v.uncontrollable_eigenvalues, v.witnesses):
                check(g, lam, W, nodes)
            for lam, W in pbh_uncontrollable(L, flat, sp):
                check(g, lam, W, nodes)
    code, rep = cli_json(capsys, "analyze", "--dims", "7x15", "--nodes", "1,2;4,1", "--witnesses")
    g = GridSpec((7, 15))
    for e in rep["uncontrollable_eigenvalues"]:
        check(g, float(e["decimal"]), np.array(e["witness"]), [(1, 2), (4, 1)])
    ok = worst_res <= 1e-10 and worst_zero <= 1e-10
    record_criterion(7, ok, f"{count} witnesses, max residual {worst_res:.1e}, max claimed-zero component {worst_zero:.1e}")
    assert ok


def test_criterion_8_conjecture_scan(capsys, record_criterion):
    t0 = time.perf_counter()
    code, rep = cli_json(capsys, "scan-conjecture", "--max-dims", "10x10")
    seconds = time.perf_counter() - t0
    ok = code == 0 and rep["violations"] == 0 and rep["grids_scanned"] == 100
    record_criterion(
        8,
        ok,
        f"{rep['grids_scanned']} grids, {rep['multiple_eigenvalues']} repeated eigenvalues, "
        f"{rep['uninherited']} uninherited, {rep['violations']} violations, {seconds:.1f}s",
    )
    assert ok
