import numpy as np
import pytest

from subdivnet.graph import Network, random_network

CORPUS_SEED = 20261015
CORPUS_SIZE = 100


def pinv_green(net: Network) -> np.ndarray:
    """Group inverse via the Moore-Penrose pseudoinverse (SVD).

    Independent of the shifted Cholesky route used by the library; for a
    symmetric Laplacian the two inverses coincide.
    """
    L = np.zeros((net.n, net.n))
    idx = {x: i for i, x in enumerate(net.vertices)}
    for u, v, c in net.edges:
        i, j = idx[u], idx[v]
        L[i, i] += c
        L[j, j] += c
        L[i, j] -= c
        L[j, i] -= c
    return np.linalg.pinv(L, hermitian=True)


def random_splits(rng: np.random.Generator, net: Network, lo=0.05, hi=0.95):
    return {(e.u, e.v): float(rng.uniform(lo, hi)) for e in net.edges}


def make_corpus(size=CORPUS_SIZE, max_n=30, seed=CORPUS_SEED):
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(size):
        n = int(rng.integers(2, max_n + 1))
        net = random_network(rng, n)
        corpus.append((net, random_splits(rng, net)))
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(size=15, max_n=12, seed=7)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_record():
    def record(number: int, title: str, passed: bool, detail: str) -> None:
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title} ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
