import csv
import json

import numpy as np
import pytest

from symconvex import verifier
from symconvex.convex_kernel import Membership, Verdict
from symconvex.lie_core import IwasawaError, exp_g
from symconvex.verifier import (
    CHECKS, EXIT_NUMERICAL, EXIT_OK, EXIT_VIOLATION, SECTIONS, SampleReport, VerificationConfig,
    accumulate, export, load_config_file, load_report, run_verification, sample_phi, strip_timing,
)

from conftest import realization

FAST = dict(samples=200, probes=100, local_probes=40, poisson_points=4, moment_samples=10,
            escape_samples=100, coverage=False)


def small(**kw):
    return VerificationConfig(**{**FAST, **kw})


@pytest.fixture(scope="module")
def supq_report():
    return run_verification(small(preset="supq", n=3, p=2, q=1, base_point=(2.0, 1.0),
                                  record_samples=True))


# ---------------------------------------------------------------- config


def test_defaults():
    cfg = VerificationConfig()
    assert (cfg.preset, cfg.n, cfg.base_point, cfg.samples, cfg.scale, cfg.tol, cfg.seed) == (
        "compact", 3, (2.0, 1.0), 10_000, 0.7, 1e-8, 42)
    assert cfg.checks == CHECKS


@pytest.mark.parametrize("kw", [dict(samples=0), dict(tol=0.0), dict(checks=("bogus",)),
                                dict(format="xml"), dict(seed=-1), dict(seed=2 ** 64)])
def test_invalid_config(kw):
    with pytest.raises(ValueError):
        VerificationConfig(**kw)


def test_wrong_base_point_dimension():
    with pytest.raises(ValueError):
        run_verification(small(base_point=(1.0,), checks=("membership",)))


def test_config_file(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("preset = supq\nn = 3\np = 2\nq = 1\n# comment\n"
                    "base-point = 2, 1\nchecks = membership,vertices ; trailing\n"
                    "window = none\ntol = 1e-9\nrecord_samples = yes\n")
    vals = load_config_file(path)
    assert vals == {"preset": "supq", "n": 3, "p": 2, "q": 1, "base_point": (2.0, 1.0),
                    "checks": ("membership", "vertices"), "window": None, "tol": 1e-9,
                    "record_samples": True}


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config_file(path)


# ---------------------------------------------------------------- sampling


def test_sample_phi_identity_gives_base_point():
    real = realization("supq", 3, 2, 1)
    a = exp_g(real.a_minus_matrix([2.0, 1.0]))
    vals, failed = sample_phi(real, a, 1, 0.7, seed=3, identity_first=True)
    assert failed == []
    assert vals[0] == pytest.approx([2.0, 1.0], abs=1e-12)


def test_sample_phi_deterministic():
    real = realization("compact", 3)
    a = exp_g(real.a_minus_matrix([2.0, 1.0]))
    v1, _ = sample_phi(real, a, 30, 0.7, seed=11)
    v2, _ = sample_phi(real, a, 30, 0.7, seed=11)
    v3, _ = sample_phi(real, a, 30, 0.7, seed=12)
    assert np.array_equal(v1, v2) and not np.array_equal(v1, v3)


def test_single_identity_sample_is_inside():
    rep = run_verification(small(samples=1, scale=0.0, checks=("membership",)))
    assert rep.membership["inside_count"] == 1
    assert rep.exit_code == EXIT_OK


# ---------------------------------------------------------------- report content


def test_report_sections(supq_report):
    d = supq_report.to_dict()
    assert set(d) == set(SECTIONS)
    m = d["membership"]
    assert m["inside_count"] + m["boundary_count"] + m["outside_count"] + \
        m["indeterminate_count"] + m["excluded"] == m["samples"]
    assert len(m["records"]) == m["evaluated"]
    assert d["timing"]["backend"] in ("cython", "python")


def test_supq_small_run_passes(supq_report):
    assert supq_report.exit_code == EXIT_OK
    assert supq_report.membership["inside_rate"] == 1.0
    assert supq_report.membership["cone_part_exercised"]
    assert all(supq_report.__dict__[k]["passed"] for k in SECTIONS[1:-1])


def test_checks_subset_leaves_other_sections_empty():
    rep = run_verification(small(checks=("vertices",)))
    d = rep.to_dict()
    assert d["vertices"]["passed"]
    assert d["membership"] == {} and d["poisson"] == {}


def test_escape_not_applicable_for_compact():
    rep = run_verification(small(checks=("escape",)))
    assert rep.escape["status"] == "not_applicable"


# ---------------------------------------------------------------- exit codes


def test_violation_sets_exit_code(monkeypatch):
    monkeypatch.setattr(verifier, "membership_minkowski",
                        lambda y, model, band=None: Membership(Verdict.OUTSIDE, 1.0))
    rep = run_verification(small(checks=("membership",)))
    assert rep.exit_code == EXIT_VIOLATION
    assert rep.membership["outside_count"] == 200
    assert rep.membership["max_membership_violation"] == 1.0


def test_numerical_failures_set_exit_code(monkeypatch):
    calls = {"n": 0}
    real_phi = verifier.phi

    def flaky(real, g):
        calls["n"] += 1
        if calls["n"] % 10 == 0:
            raise IwasawaError("forced")
        return real_phi(real, g)

    monkeypatch.setattr(verifier, "phi", flaky)
    rep = run_verification(small(checks=("membership",)))
    assert rep.membership["excluded"] == 20
    assert rep.exit_code == EXIT_NUMERICAL


# ---------------------------------------------------------------- determinism / merging


def test_deterministic_json():
    cfg = small(preset="split", n=3, base_point=(0.8,))
    a = json.dumps(strip_timing(run_verification(cfg).to_dict()), sort_keys=True)
    b = json.dumps(strip_timing(run_verification(cfg).to_dict()), sort_keys=True)
    assert a == b


def test_parallel_matches_serial():
    base = small(samples=400, checks=("membership",), record_samples=True)
    serial = run_verification(base).to_dict()
    par = run_verification(small(samples=400, checks=("membership",), record_samples=True,
                                 jobs=2)).to_dict()
    assert strip_timing(par) == strip_timing(serial)


def test_accumulator_merge_is_associative_and_commutative():
    r1 = run_verification(small(seed=1, checks=("membership",))).records
    r2 = run_verification(small(seed=2, checks=("membership",))).records
    r3 = run_verification(small(seed=3, checks=("membership",))).records
    a, b, c = accumulate(r1), accumulate(r2), accumulate(r3)
    assert a.merge(b) == b.merge(a)
    assert a.merge(b).merge(c) == a.merge(b.merge(c)) == accumulate(r1 + r2 + r3)


# ---------------------------------------------------------------- export


def test_json_round_trip(supq_report, tmp_path):
    path = tmp_path / "r.json"
    export(supq_report, path, "json")
    back = load_report(path)
    assert back.to_dict() == supq_report.to_dict()
    assert json.loads(path.read_text()) == supq_report.to_dict()


def test_csv_export(supq_report, tmp_path):
    path = tmp_path / "r.csv"
    written = export(supq_report, path, "csv")
    assert written == [path, tmp_path / "r.model.json"]
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["index", "phi_1", "phi_2", "verdict", "slack"]
    m = supq_report.membership
    assert len(rows) - 1 == m["samples"] - m["excluded"]
    first = supq_report.records[0]
    assert [float(x) for x in rows[1][1:3]] == first["phi"]
    side = json.loads((tmp_path / "r.model.json").read_text())
    assert side["vertices"] == [[2.0, 1.0], [1.0, 2.0]] or len(side["vertices"]) == 2
    assert len(side["cone_generators"]) == 2


def test_csv_empty_report(tmp_path):
    rep = SampleReport(config={"base_point": [1.0, 2.0]}, model={"base_point": [1.0, 2.0]})
    path = tmp_path / "e.csv"
    export(rep, path, "csv")
    assert path.read_text().splitlines() == ["index,phi_1,phi_2,verdict,slack"]


def test_export_rejects_unknown_format(supq_report, tmp_path):
    with pytest.raises(ValueError):
        export(supq_report, tmp_path / "x", "xml")


def test_coverage_statistic_reported():
    rep = run_verification(small(samples=500, checks=("membership",), coverage=True))
    cov = rep.membership["coverage"]
    assert cov["grid_points"] > 0
    assert 0.0 < cov["covered_fraction"] <= 1.0
    assert cov["spacing"] == cov["reach"] == 0.05
