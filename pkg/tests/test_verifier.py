import pytest

from doublekit import verifier
from doublekit.instances import InstanceSpec
from doublekit.session import load_session
from doublekit.verifier import CATALOG, PROPERTIES, Property, run_property


def test_unknown_id():
    with pytest.raises(KeyError):
        run_property("P9.99")


def test_report_line_format():
    rep = run_property("P3.4-a", InstanceSpec(seed=7), trials=5)
    assert rep.lines()[0] == "PROP P3.4-a trials=5 failures=0"
    assert rep.passed


def test_deterministic_under_fixed_spec():
    spec = InstanceSpec(seed=42)
    a = run_property("P3.8", spec, trials=12)
    b = run_property("P3.8", spec, trials=12)
    assert a.lines() == b.lines()
    assert a.tallies == b.tallies


def test_parallel_run_matches_serial():
    spec = InstanceSpec(seed=3)
    serial = run_property("P3.1-c", spec, trials=10, workers=1)
    parallel = run_property("P3.1-c", spec, trials=10, workers=2)
    assert serial.lines() == parallel.lines()
    assert serial.tallies == parallel.tallies


def test_thread_cap_from_environment(monkeypatch):
    monkeypatch.setenv("DOUBLEKIT_THREADS", "1")
    assert verifier._worker_count() == 1
    monkeypatch.setenv("DOUBLEKIT_THREADS", "not a number")
    assert verifier._worker_count() >= 1


def test_catalog_is_complete():
    listed = set()
    for key, target in CATALOG.items():
        if isinstance(target, str):
            assert target.startswith("out of scope")
            continue
        assert target, key
        for pid in target:
            assert pid in PROPERTIES, (key, pid)
            listed.add(pid)
    assert listed == set(PROPERTIES)
    for anchor in ["P3.1", "C3.2", "T3.3", "P3.4", "C3.5", "P3.6", "D3.7", "P3.8", "P3.9", "P3.10",
                   "C3.11", "L3.12", "P3.13", "C3.14", "C3.15", "T3.16", "C3.18", "L3.19", "P3.20",
                   "T3.21", "C3.22", "L3.23", "T3.24", "P3.25", "P3.1.13"]:
        assert anchor in CATALOG


def test_failures_produce_replay_files(monkeypatch, tmp_path):
    def always_fails(t):
        M = t.record("M", verifier.gen.gen_submodule(t.spec, t.rng.getrandbits(64)))
        t.check(False, f"injected failure on a rank {M.rank} module")

    monkeypatch.setitem(PROPERTIES, "BROKEN", Property("BROKEN", always_fails, 3, "test only"))
    rep = run_property("BROKEN", InstanceSpec(seed=1), replay_dir=tmp_path, workers=1)
    assert not rep.passed
    assert len(rep.failures) == 3
    assert rep.lines()[0] == "PROP BROKEN trials=3 failures=3"
    assert any(line.startswith("FAIL BROKEN seed=") for line in rep.lines())
    assert len(rep.replays) == 3
    session = load_session(rep.replays[0])
    assert "M" in session and session.kind_of("M") == "module"


def test_errors_inside_a_trial_are_failures(monkeypatch):
    def explodes(t):
        raise ValueError("boom")

    monkeypatch.setitem(PROPERTIES, "EXPLODES", Property("EXPLODES", explodes, 2, "test only"))
    rep = run_property("EXPLODES", workers=1)
    assert [m for _, m in rep.failures] == ["error: ValueError: boom"] * 2


@pytest.mark.parametrize("pid", ["P3.1-b", "T3.16-faithful", "RANK-EVEN"])
def test_spec_examples_pass_at_full_count(pid):
    rep = run_property(pid)
    assert rep.trials == 200
    assert rep.failures == []


@pytest.mark.parametrize("pid", sorted(PROPERTIES))
def test_every_suite_runs_briefly(pid):
    rep = run_property(pid, InstanceSpec(seed=99), trials=4)
    assert rep.passed, rep.lines()
