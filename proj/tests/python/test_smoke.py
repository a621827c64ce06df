"""Smoke tests for the python bindings and the CLI binary.

The heavyweight correctness suites live in the C++ tests; these only check
that the bindings expose the operations faithfully.
"""

import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "python"))

import ntkit  # noqa: E402


def test_core_number_theory():
    assert ntkit.gcd(12, 18) == 6
    assert ntkit.is_prime(2 ** 127 - 1)
    assert not ntkit.is_prime(561)
    assert ntkit.jacobi(2, 15) == 1
    assert ntkit.is_padic_square(Fraction(17), 2)
    s, t = ntkit.squarefree_part(3600)
    assert (s, t) == (1, 60)
    w = ntkit.four_squares(310)
    assert sum(v * v for v in w) == 310
    f = ntkit.factorize(360)
    assert f.complete and f.value() == 360
    assert f.factors == [(2, 3), (3, 2), (5, 1)]


def test_pell():
    seq = ntkit.pell_sequence(2, 3)
    assert [(s.x, s.y) for s in seq] == [(1, 0), (2, 1), (7, 4), (26, 15)]
    assert ntkit.verify_pell(2, 7, 4)
    assert ntkit.pell_enumerate_below(2, 20) == [(2, 1), (7, 4), (26, 15)]
    rep = ntkit.pell_divisibility(2, 2, 4)
    assert rep.ym_divides_n and not rep.ymsq_divides_yn and not rep.m_ym_divides_n


def test_diophantine():
    assert ntkit.fibonacci(50) == 12586269025
    hit = ntkit.member_search("x1 - y1^2 - y2^2 - y3^2 - y4^2", [7], 3)
    assert hit["member"]
    assert sum(v * v for v in hit["witness"]) == 7
    assert not ntkit.member_search("x1 - y1^2", [-1], 10)["member"]
    assert ntkit.nonneg_witness(-5)["member"] is False


def test_elliptic():
    c = ntkit.Curve(Fraction(-25), Fraction(0))
    p = ntkit.Point(Fraction(-4), Fraction(6))
    assert c.on_curve(p)
    d = c.add(p, p)
    assert (d.x, d.y) == (Fraction(1681, 144), Fraction(-62279, 1728))
    torsion, order = c.is_torsion(ntkit.Point(Fraction(0), Fraction(0)))
    assert torsion and order == 2
    assert not c.is_torsion(p)[0]
    pts = c.search(10)
    assert any(q.x == -4 for q in pts)


def test_descent_and_family():
    curve = ntkit.SplitCurve(0, 5, -5)
    report = ntkit.two_selmer(curve)
    assert report.rank_bound == 1 and report.dim == 3
    assert (1, 1) in report.accepted
    assert ntkit.descent_image(curve, ntkit.Point(Fraction(-4), Fraction(6))) == (-1, -1)
    window = ntkit.rank_window(curve, 10)
    assert window["certificate"] == "rank-certified-1"

    member = ntkit.make_member(ntkit.FamilyParams(0, 1, 2), 3, 1)
    assert member.F == 6 and member.disc_core == 6
    assert (member.taut_point.x, member.taut_point.y) == (18, 36)

    hits = ntkit.four_primes_search(ntkit.FamilyParams(0, 1, 2), 20, 10)
    assert (7, 2) in hits and (5, 2) not in hits

    reports = ntkit.rank_one_pipeline(ntkit.FamilyParams(0, 1, 2), 30, 6)
    assert reports and any(not r.taut_torsion for r in reports)
    for r in reports:
        if r.certified:
            assert r.selmer.rank_bound == 1 and not r.taut_torsion


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("NTKIT_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("NTKIT_CLI not set")
    return path


def test_cli_manifest_and_payload(cli):
    out = subprocess.run(
        [cli, "pell", "--a", "2", "--count", "3", "--timestamp", "T0"],
        capture_output=True, text=True, check=True,
    )
    lines = out.stdout.splitlines()
    manifest = json.loads(lines[0])
    assert manifest["schema"] == "ntkit.manifest/1"
    assert manifest["timestamp"] == "T0"
    payload = json.loads(lines[1])
    assert [s["y"] for s in payload["solutions"]] == ["0", "1", "4", "15"]


def test_cli_exit_codes(cli):
    usage = subprocess.run([cli, "pell", "--a", "1", "--count", "2"], capture_output=True)
    assert usage.returncode == 1
    inconclusive = subprocess.run(
        [cli, "dioph", "--poly", "x1 - y1^2", "--params", "-1", "--bound", "4"],
        capture_output=True,
    )
    assert inconclusive.returncode == 2


def test_cli_jobs_do_not_change_bytes(cli):
    runs = [
        subprocess.run(
            [cli, "descent", "--roots", "0,5,-5", "--jobs", jobs, "--timestamp", "T0"],
            capture_output=True, check=True,
        ).stdout
        for jobs in ("1", "4")
    ]
    assert runs[0] == runs[1]
