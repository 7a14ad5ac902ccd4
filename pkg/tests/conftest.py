from __future__ import annotations

import pytest

from pmaxclass.catalogue import census, construct, family, product
from pmaxclass.core import direct_product, permutation_group

ACCEPTANCE = pytest.StashKey[list]()

# C3 wr C3 on 9 points: a 3-cycle on the first block and the block shift
WREATH_PERMS = [[1, 2, 0, 3, 4, 5, 6, 7, 8], [3, 4, 5, 6, 7, 8, 0, 1, 2]]


def D(m):
    return construct(family("dihedral", m=m))


def Q(m):
    return construct(family("quaternion", m=m))


def C(p, m):
    return construct(family("cyclic", p=p, m=m))


def E(p, k):
    return construct(family("elementary_abelian", p=p, k=k))


def small_groups():
    """Every group of order <= 24 available to the tests."""
    groups = [G for p in (2, 3, 5, 7, 11, 13, 17, 19, 23) for G in census(p, 24)]
    S3 = permutation_group([[1, 2, 0], [1, 0, 2]], 3, name="S3")
    groups += [
        S3,
        permutation_group([[1, 2, 3, 0], [1, 0, 2, 3]], 4, name="S4"),
        permutation_group([[1, 2, 0, 3], [0, 2, 3, 1]], 4, name="A4"),
        permutation_group([[1, 2, 3, 4, 5, 0], [5, 4, 3, 2, 1, 0]], 6, name="D12"),
        permutation_group([[1, 2, 3, 4, 0], [4, 3, 2, 1, 0]], 5, name="D10"),
        permutation_group([[1, 2, 3, 4, 5, 6, 0], [0, 2, 4, 6, 1, 3, 5]], 7, name="C7:C3"),
        direct_product(C(2, 1), C(3, 1), name="C6"),
        direct_product(S3, C(2, 1), name="S3xC2"),
        direct_product(S3, C(3, 1), name="S3xC3"),
        direct_product(C(2, 2), C(3, 1), name="C12"),
        direct_product(E(2, 2), C(3, 1), name="C2xC6"),
    ]
    return [G for G in groups if G.order <= 24]


@pytest.fixture(scope="session")
def named():
    """Small groups used throughout the tests, keyed by a short name."""
    return {
        "C2": C(2, 1),
        "C4": C(2, 2),
        "C2xC2": E(2, 2),
        "C4xC2": construct(product(family("cyclic", p=2, m=2), family("cyclic", p=2, m=1))),
        "E8": E(2, 3),
        "D8": D(3),
        "Q8": Q(3),
        "D16": D(4),
        "Q16": Q(4),
        "SD16": construct(family("semidihedral", m=4)),
        "M16": construct(family("modular_pgroup", p=2, m=4)),
        "E9": E(3, 2),
        "Heis3": construct(family("heisenberg", p=3)),
        "X27": construct(family("extraspecial_exp_p2", p=3)),
        "W3perm": permutation_group(WREATH_PERMS, 9, name="C3wrC3"),
        "W3": construct(family("wreath_cpcp", p=3)),
        "S3": permutation_group([[1, 2, 0], [1, 0, 2]], 3, name="S3"),
        "S4": permutation_group([[1, 2, 3, 0], [1, 0, 2, 3]], 4, name="S4"),
    }


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


class CriterionRecorder:
    def __init__(self, config):
        self.config = config
        self.recorded = False

    def __call__(self, number: int, passed: bool, text: str) -> None:
        self.recorded = True
        self.config.stash[ACCEPTANCE].append((number, f"{'PASS' if passed else 'FAIL'}  criterion {number}: {text}"))


@pytest.fixture
def criterion(request):
    """Records one PASS/FAIL line per acceptance criterion for the terminal summary."""
    rec = CriterionRecorder(request.config)
    yield rec
    if not rec.recorded:
        rec(int(request.node.name.split("_")[1]), False, f"{request.node.name} raised before reaching a verdict")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
