"""Acceptance battery: one test per criterion, each with its time budget.

Every criterion function raises on any mismatch, so a parametrized pytest run
prints exactly one pass/fail line per criterion.  Criterion 13 is exercised
the way it is stated: two subprocess runs of `verify --quick` with the same
seed must produce byte-identical reports.
"""

import shutil
import subprocess
import sys
import time

import pytest

from clusterfan import verify

CRITERIA = [
    (1, "rank2-periodicity", verify.criterion_rank2_periodicity, 1.0),
    (2, "laurent-positivity", verify.criterion_laurent_positivity, 1.0),
    (3, "cartan-table", verify.criterion_cartan_table, 1.0),
    (4, "group-data", lambda: verify.criterion_group_data(False), 30.0),
    (5, "reduced-words", verify.criterion_reduced_words, 10.0),
    (6, "polygon-oracle", verify.criterion_polygon_oracle, 30.0),
    (7, "cluster-complexes", lambda: verify.criterion_cluster_complexes(False), 60.0),
    (8, "tau-machinery", verify.criterion_tau_machinery, 10.0),
    (9, "polytopes", verify.criterion_polytopes, 30.0),
    (10, "fan-checks", verify.criterion_fan_checks, 60.0),
    (11, "enumerative", verify.criterion_enumerative, 120.0),
    (12, "wiring", verify.criterion_wiring, 120.0),
]

IDS = [f"{number:02d}-{name}" for number, name, _, _ in CRITERIA]


@pytest.mark.parametrize("number,name,fn,budget", CRITERIA, ids=IDS)
def test_criterion(number, name, fn, budget):
    start = time.perf_counter()
    detail = fn()
    elapsed = time.perf_counter() - start
    print(f"criterion {number:02d} {name:<24} PASS  {detail}")
    assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"


def _verify_command():
    exe = shutil.which("clusterfan")
    if exe:
        return [exe, "verify", "--quick", "--rng-seed", "11"]
    return [sys.executable, "-m", "clusterfan.cli", "verify", "--quick", "--rng-seed", "11"]


def test_criterion_13_determinism():
    command = _verify_command()
    first = subprocess.run(command, capture_output=True, timeout=300)
    second = subprocess.run(command, capture_output=True, timeout=300)
    assert first.returncode == 0, first.stdout.decode()
    assert second.returncode == 0, second.stdout.decode()
    assert first.stdout == second.stdout, "reports differ between runs"
    assert b"13/13 criteria passed" in first.stdout
    print("criterion 13 determinism              PASS  "
          f"{len(first.stdout)} byte report reproduced")


def test_full_quick_battery_green():
    results = verify.run_battery()
    report = verify.render_report(results)
    print(report)
    failing = [r.line() for r in results if not r.passed]
    assert not failing, "\n".join(failing)
    assert len(results) == 13


def test_full_extended_battery_green():
    results = verify.run_battery(extended=True)
    failing = [r.line() for r in results if not r.passed]
    assert not failing, "\n".join(failing)
    by_number = {r.number: r for r in results}
    assert "13 types" in by_number[4].detail
    assert "E6:833" in by_number[7].detail
