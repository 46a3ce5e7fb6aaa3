"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines bypass output
capture) or directly as ``python3 tests/test_acceptance.py``.
The property-suite criterion runs every suite at 10^4 instances and takes a
few minutes.
"""

from __future__ import annotations

import contextlib
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import CORPUS, load, plain  # noqa: E402
from dectree import harness  # noqa: E402
from dectree import invariants as inv  # noqa: E402
from dectree import rooted as rt  # noqa: E402
from dectree import simplify as simp  # noqa: E402
from dectree import split as spl  # noqa: E402
from dectree.textio import parse, serialize  # noqa: E402
from dectree.treecore import canonical_key, edge, isomorphic  # noqa: E402
from naive_oracle import assert_matches  # noqa: E402

SUITE_COUNT = 10_000
SUITE_SEED = 20240601
SUITE_BUDGET = 60.0
ORACLE_TREES = 3_000


class _NoCapture:
    """Stands in for pytest's capsys when the file runs as a script."""

    def disabled(self):
        return contextlib.nullcontext()


def announce(capsys, number: int, title: str, ok: bool, detail: str, extra: list[str] = ()) -> None:
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
        for line in extra:
            print(line)


def mf(tree):
    return inv.multiplicity(tree), inv.gcd_sum(tree)


# criterion 1


def worked_examples() -> list[str]:
    """Every worked example, returned as a list of mismatches."""
    wrong: list[str] = []

    def expect(label, got, want):
        if got != want:
            wrong.append(f"{label}: got {got}, want {want}")

    eight = load("split_eight_arrows")
    expect("eight-arrow M, F", mf(eight), (-9, 5))
    out = spl.split_at_edge(eight, edge("b", "c"))
    expect("eight-arrow degree", out.degree, 3)
    expect("eight-arrow pieces", (mf(out.first), mf(out.second)), ((0, 6), (-9, 5)))

    en = load("ensplit_five_vertices")
    expect("EN M, F", mf(en), (-273, 5))
    out = spl.ensplit_at_edge(en, edge("B", "C"))
    expect("EN degree, type", (out.degree, out.kind), (2, 0))
    by_side = dict(zip(out.endpoints, out.trees))
    expect("EN pieces", (mf(by_side["C"]), mf(by_side["B"])), ((-29, 3), (-244, 6)))

    unit = load("decomposition_unit")
    x1, x2 = ["a2", "a3", "a4", "a5"], ["a1", "a6"]
    t1, t2 = (rt.subtree(unit, x).tree for x in (x1, x2))
    expect("unit chain M, F", mf(unit.tree), (-4, 6))
    expect("unit chain pieces", (mf(t1), mf(t2)), ((-2, 4), (-2, 2)))
    expect("unit chain pairing", inv.pairing(unit.tree, x1, x2), 0)
    expect("unit chain genera", tuple(inv.genus(t) for t in (unit.tree, t1, t2)), (0, 0, 1))

    doubled = load("decomposition_doubled")
    expect("doubled chain M, F", mf(doubled.tree), (-6, 8))
    expect("doubled chain corrections", tuple(rt.correction_genus(doubled, x) for x in (x1, x2)), (0, 0))

    general = load("decomposition_general")
    y1, y2 = ["C1", "D2"], ["A3", "G1"]
    expect("general delta", inv.delta(general.tree), 139)
    expect("general piece deltas", tuple(inv.delta(rt.subtree(general, y).tree) for y in (y1, y2)), (36, 27))
    expect("general pairing", inv.pairing(general.tree, y1, y2), 120)
    expect("general corrections", tuple(rt.correction_delta(general, y) for y in (y1, y2)), (24, 20))
    return wrong


def test_criterion_1_worked_examples(capsys):
    start = time.perf_counter()
    wrong = worked_examples()
    elapsed = time.perf_counter() - start
    ok = not wrong and elapsed < 1.0
    announce(capsys, 1, "worked examples", ok, f"{elapsed:.3f}s" + (f"; {'; '.join(wrong)}" if wrong else ""))
    assert not wrong, wrong
    assert elapsed < 1.0


# criterion 2


def test_criterion_2_property_suites(capsys):
    problems, lines = [], []
    for name in sorted(harness.SUITES):
        start = time.perf_counter()
        report = harness.run_suite(name, harness.GenParams(seed=SUITE_SEED), SUITE_COUNT)
        elapsed = time.perf_counter() - start
        lines.append(f"  {name:<24} {report.count} instances, {report.failures} failures, {elapsed:.1f}s")
        if report.count < SUITE_COUNT or report.failures or elapsed >= SUITE_BUDGET:
            problems.append(f"{name}: {report.failures} failures in {elapsed:.1f}s\n{report.to_text()}")
    ok = not problems
    detail = f"{len(harness.SUITES)} suites at {SUITE_COUNT}, seed {SUITE_SEED}"
    announce(capsys, 2, "property suites", ok, detail, lines)
    assert ok, "\n".join(problems)


# criterion 3


def test_criterion_3_oracle(capsys):
    rng = random.Random(SUITE_SEED)
    params = harness.GenParams(max_nodes=8)
    wide = params.but(decoration_range=30)
    failures = []
    checked = 0
    for i in range(ORACLE_TREES):
        t = plain(harness.generate(rng, wide if i % 2 else params))
        if len(t.nodes) > 8:
            continue
        checked += 1
        try:
            assert_matches(t)
        except AssertionError as exc:
            failures.append(f"{serialize(t)}{exc}")
    for name in sorted(p.stem for p in CORPUS.glob("*.dtree")):
        t = plain(load(name))
        if len(t.nodes) <= 8:
            checked += 1
            try:
                assert_matches(t)
            except AssertionError as exc:
                failures.append(f"{name}: {exc}")
    ok = not failures and checked > ORACLE_TREES // 2
    announce(capsys, 3, "oracle equivalence, at most 8 nodes", ok, f"{checked} trees, {len(failures)} mismatches")
    assert ok, failures[:3]


# criterion 4


def test_criterion_4_round_trips(capsys):
    failures = []
    files = sorted(CORPUS.glob("*.dtree"))
    for path in files:
        obj = parse(path.read_text())
        again = parse(serialize(obj))
        root = getattr(obj, "root", None)
        if again != obj or canonical_key(plain(again), root) != canonical_key(plain(obj), root):
            failures.append(f"parse/serialize {path.stem}")
    samples = [plain(load(p.stem)) for p in files]
    rng = random.Random(SUITE_SEED)
    samples += [plain(harness.generate(rng, harness.GenParams())) for _ in range(500)]
    widened = 0
    for t in samples:
        for v in sorted(t.vertices):
            around = list(t.neighbours(v))
            rng.shuffle(around)
            cut = rng.randint(0, len(around))
            wide, e = spl.insert_zero_edge(t, v, (around[:cut], around[cut:]))
            widened += 1
            if not isomorphic(simp.contract_edge(wide, e), t):
                failures.append(f"contract after zero-edge insertion at {v}:\n{serialize(t)}")
    ok = not failures
    announce(capsys, 4, "round-trips", ok, f"{len(files)} corpus files, {widened} widen/contract pairs, {len(failures)} failures")
    assert ok, failures[:3]


if __name__ == "__main__":
    outcomes = []
    for fn in (test_criterion_1_worked_examples, test_criterion_2_property_suites, test_criterion_3_oracle, test_criterion_4_round_trips):
        try:
            fn(_NoCapture())
            outcomes.append(True)
        except AssertionError:
            outcomes.append(False)
    sys.exit(0 if all(outcomes) else 1)
