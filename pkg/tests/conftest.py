import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
BUNDLES = REPO / "bundles"

ACCEPTANCE_TITLES = {
    "test_acceptance_01": "1  regulators of Q(sqrt2)/Q(sqrt5) vs Pell-unit logs @ 2^-100",
    "test_acceptance_02": "2  septic pair: equal regs >= 200 bits, distinct minima, not isometric/similar, Gassmann",
    "test_acceptance_03": "3  Gassmann suite (random conjugates S4-S6, Fano stabilizers)",
    "test_acceptance_04": "4  sign-orbit elimination suite (oracle + 100 random forms)",
    "test_acceptance_05": "5  nu*bar(nu) factorization & Gram preimages @ 2^-64 / 2^-192",
    "test_acceptance_06": "6  exact algebra: idempotents (all orders <= 24), Sym^G dims, cross-block mass",
    "test_acceptance_07": "7  rational change-of-basis certificates @ 2^-100",
    "test_acceptance_08": "8  sublattice scaling [N:K]=2 and similarity lambda = 1/2",
    "test_acceptance_09": "9  relation probes (logs, regulators, genericity)",
    "test_acceptance_10": "10 psi-map degree law (exact)",
}


@pytest.fixture(scope="session")
def bundles_dir():
    return BUNDLES


def bundle_path(name: str) -> str:
    return str(BUNDLES / name)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance" not in name:
                continue
            for key, title in ACCEPTANCE_TITLES.items():
                if key in name:
                    ok = results.get(key, True) and outcome == "passed"
                    results[key] = ok
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE_TITLES):
        if key in results:
            status = "PASS" if results[key] else "FAIL"
            terminalreporter.write_line(
                f"  [{status}] criterion {ACCEPTANCE_TITLES[key]}")
