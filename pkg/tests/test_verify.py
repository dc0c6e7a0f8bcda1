import numpy as np
import pytest

from subdivnet.graph import build_network, generate
from subdivnet.verify import Check, VerificationReport, detect_wheel, verify_network


def test_detect_wheel_relabelled():
    w = generate("wheel", 6, 0.7, 1.9)
    names = {x: f"v{7 - i}" for i, x in enumerate(w.vertices)}
    net = build_network([names[x] for x in w.vertices],
                        [(names[e.u], names[e.v], e.c) for e in w.edges])
    spec, hub, rim = detect_wheel(net)
    assert (spec.n, spec.a, spec.c) == (6, 0.7, 1.9)
    assert hub == "v7"
    assert len(rim) == 6 and set(rim) == set(net.vertices) - {"v7"}
    for i in range(6):
        assert net.has_edge(rim[i], rim[(i + 1) % 6])


@pytest.mark.parametrize(
    "net",
    [generate("cycle", 5), generate("complete", 5), generate("path", 4)],
    ids=["C5", "K5", "P4"],
)
def test_detect_wheel_rejects(net):
    assert detect_wheel(net) is None


def test_detect_wheel_mixed_rim_conductance():
    w = generate("wheel", 4)
    edges = [(e.u, e.v, 2.0 if (e.u, e.v) == ("x_1", "x_2") else e.c) for e in w.edges]
    assert detect_wheel(build_network(w.vertices, edges)) is None


def test_report_pass_flag():
    report = VerificationReport()
    report.add(Check("a", 1e-12, 1e-9))
    report.add(Check("b", None, 1e-9, skipped="hypotheses not met: x"))
    assert report.passed
    report.add(Check("c", 1e-3, 1e-9))
    assert not report.passed
    report2 = VerificationReport([Check("nan", float("nan"), 1.0)])
    assert not report2.passed


def test_wheel_with_nonstandard_splits_skips_subdivided_checks():
    w = generate("wheel", 5, 1.0, 2.0)
    report = verify_network(w, {("x_0", "x_1"): 0.3})
    checks = {c.name: c for c in report.checks}
    assert checks["wheel-green"].status == "PASS"
    assert checks["wheel-subdivision-green"].status == "SKIP"
    assert report.passed


@pytest.mark.parametrize("n, a, c", [(3, 1, 1), (6, 0.5, 2), (9, 2, 0.5)])
def test_wheels_pass_everything(n, a, c):
    report = verify_network(generate("wheel", n, a, c))
    statuses = {c.name: c.status for c in report.checks}
    assert report.passed
    assert statuses["wheel-subdivision-kirchhoff"] == "PASS"


def test_verify_is_deterministic():
    net = generate("complete", 5)
    a = verify_network(net, {("x_0", "x_1"): 0.2})
    b = verify_network(net, {("x_0", "x_1"): 0.2})
    assert [c.as_dict() for c in a.checks] == [c.as_dict() for c in b.checks]
    assert np.isfinite([c.max_deviation for c in a.checks if c.max_deviation is not None]).all()
