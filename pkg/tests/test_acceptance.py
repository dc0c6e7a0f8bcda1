"""Exit criteria. Each test prints one PASS/FAIL line, repeated in the summary.

The corpus is 100 random connected networks (n <= 30, conductances
log-uniform in [0.1, 10], per-edge splits uniform in [0.05, 0.95]) built
from a fixed seed in conftest.
"""
import json
import time

import numpy as np
import pytest

from conftest import make_corpus
from subdivnet.cli import main
from subdivnet.graph import build_network, generate
from subdivnet.io import parse_network, write_network
from subdivnet.potential import (
    KernelMatrix,
    VertexFunction,
    green_kernel,
    kirchhoff_index,
    kirchhoff_index_from_resistances,
    resistance_matrix,
    solve_poisson,
)
from subdivnet.subdivision import (
    green_context,
    green_subdivision,
    kirchhoff_subdivision,
    kirchhoff_subdivision_standard,
    kirchhoff_subdivision_standard_regular,
    resistance_subdivision,
    solve_poisson_on_subdivision,
    subdivide,
)
from subdivnet.wheel import (
    WheelSpec,
    generic_label_map,
    wheel_green,
    wheel_subdivision_green,
    wheel_subdivision_kirchhoff,
)


@pytest.fixture(scope="module")
def prepared(corpus):
    """Per network: base kernel, subdivision, closed-form and oracle kernels."""
    out = []
    for net, splits in corpus:
        sub = subdivide(net, splits)
        G = green_kernel(net)
        G_sub = green_kernel(sub.derived)
        out.append((net, sub, G, G_sub))
    return out


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def test_criterion_1_resistance_invariance(corpus, acceptance_record):
    start = time.perf_counter()
    worst = 0.0
    for net, splits in make_corpus():
        sub = subdivide(net, splits)
        R = resistance_matrix(green_kernel(net))
        RS_oracle = resistance_matrix(green_kernel(sub.derived)).matrix[: net.n, : net.n]
        RS_closed = resistance_subdivision(sub, R).matrix[: net.n, : net.n]
        worst = max(worst, np.max(np.abs(RS_oracle - R.matrix)), np.max(np.abs(RS_closed - R.matrix)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 10.0
    acceptance_record(1, "resistance invariance", ok,
                      f"max dev {worst:.2e} < 1e-9, {elapsed:.2f}s < 10s")
    assert worst < 1e-9
    assert elapsed < 10.0


def test_criterion_2_green_kernel_closed_form(prepared, acceptance_record):
    worst = 0.0
    for net, sub, G, G_sub in prepared:
        GS = green_subdivision(sub, G, green_context(sub, G))
        worst = max(worst, GS.max_abs_diff(G_sub))
    ok = worst < 1e-9
    acceptance_record(2, "subdivided Green kernel vs group inverse", ok, f"max dev {worst:.2e} < 1e-9")
    assert ok


def test_criterion_3_kirchhoff_triple(prepared, acceptance_record):
    worst = 0.0
    for net, sub, G, G_sub in prepared:
        formula = kirchhoff_subdivision(sub, G)
        trace = sub.order * G_sub.trace()
        pairs = kirchhoff_index_from_resistances(resistance_matrix(G_sub))
        worst = max(worst, rel(formula, trace), rel(formula, pairs), rel(trace, pairs))
    ok = worst < 1e-8
    acceptance_record(3, "Kirchhoff index, three routes", ok, f"max rel dev {worst:.2e} < 1e-8")
    assert ok


def test_criterion_4_regular_golden_values(acceptance_record):
    start = time.perf_counter()
    k2 = build_network(["x", "y"], [("x", "y", 1.0)])
    cases = [(k2, 2.0), (generate("cycle", 3), 8.75), (generate("complete", 4), 24.75)]
    worst = 0.0
    for net, expected in cases:
        G = green_kernel(net)
        for value in (kirchhoff_subdivision_standard_regular(net, G),
                      kirchhoff_subdivision_standard(net, G),
                      kirchhoff_subdivision(subdivide(net), G)):
            worst = max(worst, rel(value, expected))
    # C_3 independently: C_6 with conductance 2
    c6 = kirchhoff_index(green_kernel(generate("cycle", 6, 2.0)))
    worst = max(worst, rel(c6, 35 / 4))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 1.0
    acceptance_record(4, "regular golden values 2, 8.75, 24.75", ok,
                      f"max rel dev {worst:.2e} < 1e-10, {elapsed:.3f}s < 1s")
    assert worst < 1e-10
    assert elapsed < 1.0


def test_criterion_5_wheel_web(acceptance_record):
    start = time.perf_counter()
    kern_dev = 0.0
    kirch_dev = 0.0
    for n in range(3, 11):
        mapping = generic_label_map(n)
        for a in (0.5, 1.0, 2.0):
            for c in (0.5, 1.0, 2.0):
                spec = WheelSpec(n, a, c)
                net = generate("wheel", n, a, c)
                G = green_kernel(net)
                kern_dev = max(kern_dev, wheel_green(spec).max_abs_diff(G))
                sub = subdivide(net)
                oracle = green_kernel(sub.derived)
                generic = green_subdivision(sub, G)
                W = wheel_subdivision_green(spec)
                W = KernelMatrix([mapping[x] for x in W.labels], W.matrix)
                kern_dev = max(kern_dev, W.max_abs_diff(generic), W.max_abs_diff(oracle),
                               generic.max_abs_diff(oracle))
                kirch_dev = max(kirch_dev, rel(wheel_subdivision_kirchhoff(spec),
                                               kirchhoff_subdivision(sub, G)))
    k4 = generate("complete", 4)
    at_3 = wheel_subdivision_kirchhoff(WheelSpec(3, 1.0, 1.0))
    golden = max(rel(at_3, 99 / 4),
                 rel(at_3, kirchhoff_subdivision_standard_regular(k4, green_kernel(k4))))
    elapsed = time.perf_counter() - start
    ok = kern_dev < 1e-9 and kirch_dev < 1e-8 and golden < 1e-10 and elapsed < 5.0
    acceptance_record(5, "wheel consistency web", ok,
                      f"kernel dev {kern_dev:.2e} < 1e-9, Kirchhoff rel dev {kirch_dev:.2e} < 1e-8, "
                      f"W_3 value {at_3:.12g}, {elapsed:.2f}s < 5s")
    assert kern_dev < 1e-9
    assert kirch_dev < 1e-8
    assert golden < 1e-10
    assert elapsed < 5.0


def test_criterion_6_green_defining_properties(prepared, acceptance_record):
    worst_eq = worst_sym = worst_rows = 0.0
    for net, sub, G, _ in prepared:
        M = G.matrix
        n = net.n
        worst_eq = max(worst_eq, np.max(np.abs(net.laplacian @ M - (np.eye(n) - 1.0 / n))))
        worst_sym = max(worst_sym, np.max(np.abs(M - M.T)) / max(1.0, np.max(np.abs(M))))
        worst_rows = max(worst_rows, np.max(np.abs(M.sum(axis=1))))
    W3 = green_kernel(generate("wheel", 3, 1.0, 1.0))
    w3_dev = max(abs(W3["x_0", "x_0"] - 3 / 16), abs(W3["x_0", "x_1"] + 1 / 16))
    ok = worst_eq < 1e-9 and worst_sym <= 1e-12 and worst_rows < 1e-9 and w3_dev < 1e-12
    acceptance_record(6, "Green kernel defining properties", ok,
                      f"|LG-(I-J/n)| {worst_eq:.2e}, asym {worst_sym:.2e}, row sums {worst_rows:.2e}, "
                      f"W_3 dev {w3_dev:.2e}")
    assert ok


def test_criterion_7_poisson_reduction(prepared, acceptance_record):
    rng = np.random.default_rng(77)
    worst = 0.0
    for k in range(50):
        net, sub, _, _ = prepared[k % len(prepared)]
        raw = rng.standard_normal(sub.derived.n)
        h = VertexFunction(sub.derived.vertices, raw - raw.mean())
        ours = solve_poisson_on_subdivision(sub, h)
        direct = solve_poisson(sub.derived, h)
        worst = max(worst, float(np.max(np.abs(ours.values - direct.values))))
    ok = worst < 1e-9
    acceptance_record(7, "Poisson reduction vs direct solve (50 rhs)", ok, f"max dev {worst:.2e} < 1e-9")
    assert ok


def _metric_slack(R: np.ndarray) -> tuple[float, float, float, float]:
    """Asymmetry, smallest off-diagonal entry, largest |diagonal|, worst triangle slack."""
    n = len(R)
    asym = float(np.max(np.abs(R - R.T)))
    off = R[~np.eye(n, dtype=bool)]
    min_off = float(off.min()) if off.size else np.inf
    diag = float(np.max(np.abs(np.diag(R))))
    tri = float((R[:, None, :] + R[None, :, :] - R[:, :, None]).min())
    return asym, min_off, diag, tri


def test_criterion_8_metric(prepared, acceptance_record):
    worst_asym = worst_diag = 0.0
    min_off = np.inf
    min_tri = np.inf
    for net, sub, G, _ in prepared:
        for R in (resistance_matrix(G).matrix, resistance_subdivision(sub, resistance_matrix(G)).matrix):
            asym, off, diag, tri = _metric_slack(R)
            worst_asym = max(worst_asym, asym)
            worst_diag = max(worst_diag, diag)
            min_off = min(min_off, off)
            min_tri = min(min_tri, tri)
    ok = worst_asym == 0.0 and worst_diag == 0.0 and min_off > 0 and min_tri >= -1e-9
    acceptance_record(8, "R and R^S are metrics", ok,
                      f"asym {worst_asym:.1e}, min off-diagonal {min_off:.2e}, "
                      f"triangle slack {min_tri:.2e} >= -1e-9")
    assert ok


def test_criterion_9_cli_round_trip(corpus, tmp_path, capsys, acceptance_record):
    problems = []
    for k, (net, splits) in enumerate(corpus[:10]):
        src = tmp_path / f"net{k}.json"
        src.write_text(write_network(net, splits))
        reparsed, resplits = parse_network(src.read_text())
        if reparsed != net or resplits != splits:
            problems.append(f"net{k}: document round trip")
        out = tmp_path / f"sub{k}.json"
        if main(["subdivide", str(src), "--out", str(out)]) != 0:
            problems.append(f"net{k}: subdivide exit code")
        derived, _ = parse_network(out.read_text())
        if derived != subdivide(net, splits).derived:
            problems.append(f"net{k}: derived network differs after write/parse")
        first = out.read_bytes()
        main(["subdivide", str(src), "--out", str(out)])
        if out.read_bytes() != first:
            problems.append(f"net{k}: subdivide output not byte-identical")
        capsys.readouterr()
        for argv in (["green", str(src)], ["verify", str(src)]):
            code1 = main(argv)
            a = capsys.readouterr().out
            code2 = main(argv)
            b = capsys.readouterr().out
            if a != b or code1 != code2:
                problems.append(f"net{k}: {argv[0]} output not deterministic")
        main(["verify", str(src), "--format", "json"])
        report = json.loads(capsys.readouterr().out)
        if (main(["verify", str(src)]) == 0) != report["passed"]:
            problems.append(f"net{k}: verify exit code disagrees with report")
        capsys.readouterr()
    code = main(["verify", str(tmp_path / "net0.json"), "--tol", "-1"])
    text = capsys.readouterr().out
    if code != 1 or not text.rstrip().endswith("overall: FAIL"):
        problems.append("failing report did not exit 1")
    ok = not problems
    acceptance_record(9, "CLI round trip and determinism", ok,
                      "10 networks" if ok else "; ".join(problems[:3]))
    assert ok, problems
