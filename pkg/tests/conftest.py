import dataclasses
from pathlib import Path

import pytest

from effectkit.enumeration import enumerate_all
from effectkit.zoo import zoo

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# the fixture zoo: chains to length 6, Booleans to 2^4, MO2, MO3, products, odds and ends
ZOO_SPECS = (
    [f"chain({m})" for m in range(1, 7)]
    + [f"boolean({k})" for k in range(1, 5)]
    + ["mo(2)", "mo(3)",
       "product(chain(2),chain(2))", "product(chain(2),boolean(1))",
       "product(chain(2),chain(3))", "product(boolean(1),mo(2))",
       "hsum(chain(2),chain(2))", "hsum(chain(2),boolean(2))",
       "zmod(6)", "zmod(30)", "matring(2,2)"]
)


def zoo_tables():
    return [zoo(s) for s in ZOO_SPECS]


def enumerated(n_max=6):
    return list(enumerate_all(n_max))


def corpus():
    """Zoo plus every enumerated algebra up to six elements."""
    return zoo_tables() + enumerated(6)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def named(spec, name):
    return dataclasses.replace(zoo(spec), name=name)


# acceptance criteria report lines, collected by tests/test_acceptance.py
CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
