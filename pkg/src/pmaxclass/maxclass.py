"""Maximal-class predicate, fundamental subgroup and two-step centralizers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from pmaxclass.core import Group, GroupError, PreconditionError, Subgroup
from pmaxclass.invariants import (
    _memo,
    lower_central_series,
    lower_central_term,
    maximal_subgroups,
    nilpotency_class,
    relative_centralizer,
)

FUNDAMENTAL = "fundamental"
MAXIMAL_CLASS_MEMBER = "maximal_class_member"
OTHER_MEMBER = "not_maximal_class"


def _pm(G: Group) -> tuple[int, int]:
    if G.prime_power is None:
        raise GroupError(f"{G.name} (order {G.order}) is not a p-group")
    return G.prime_power


def is_maximal_class(G: Group, include_p2: bool = False) -> bool:
    """Order ``p^m`` with ``m >= 3`` and class ``m - 1`` (``m = 2`` too with ``include_p2``)."""
    if G.order == 1:
        return False
    _, m = _pm(G)
    if m == 2:
        return include_p2
    return m >= 3 and nilpotency_class(G) == m - 1


def _require_maximal_class(G: Group, min_m: int) -> tuple[int, int]:
    p, m = _pm(G)
    if m < min_m or not is_maximal_class(G):
        raise PreconditionError(f"{G.name} is not of maximal class with order >= p^{min_m}")
    return p, m


def _two_step(G: Group, i: int) -> Subgroup:
    """Preimage of the centralizer of ``K_i/K_{i+2}`` in ``G/K_{i+2}``."""
    M = relative_centralizer(G, lower_central_term(G, i), lower_central_term(G, i + 2))
    M.normal_cached = True
    return M


def fundamental_subgroup(G: Group) -> Subgroup:
    """``G_1 = {x : [x, K_2] <= K_4}`` for a maximal-class group of order at least ``p^4``."""
    _require_maximal_class(G, 4)
    return _memo(G, "fundamental", lambda: _two_step(G, 2))


def two_step_centralizers(G: Group) -> list[Subgroup]:
    """``[M_2, ..., M_{m-2}]``; each is a maximal subgroup."""
    p, m = _require_maximal_class(G, 4)

    def compute():
        out = [_two_step(G, i) for i in range(2, m - 1)]
        for i, M in enumerate(out, start=2):
            if M.index != p:
                raise GroupError(f"M_{i} of {G.name} has index {M.index}, expected {p}")
        return out

    return _memo(G, "two_step", compute)


@dataclass
class MaxClassReport:
    group: str
    p: int | None
    m: int | None
    nilpotency_class: int | None
    is_maximal_class: bool
    sections: list[int]
    fundamental: Subgroup | None = None
    gamma1: list[tuple[Subgroup, str]] | None = None
    two_step: list[Subgroup] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "p": self.p,
            "m": self.m,
            "class": self.nilpotency_class,
            "is_maximal_class": self.is_maximal_class,
            "sections": self.sections,
            "fundamental": subgroup_json(self.fundamental) if self.fundamental is not None else None,
            "gamma1": None if self.gamma1 is None else [
                dict(subgroup_json(M), role=role) for M, role in self.gamma1
            ],
            "two_step": [subgroup_json(M) for M in self.two_step],
        }


def subgroup_json(H: Subgroup) -> dict[str, Any]:
    G = H.parent
    return {"order": H.size, "generators": [G.label(g) for g in H.gens]}


def _sections(G: Group) -> list[int]:
    sizes = lower_central_series(G).sizes
    return [a // b for a, b in zip(sizes, sizes[1:])]


def max_class_report(G: Group, include_p2: bool = False) -> MaxClassReport:
    """Everything known about ``G`` from the maximal-class point of view.

    The fundamental subgroup and two-step centralizers are filled in for
    maximal-class groups of order at least ``p^4``; ``gamma1`` additionally
    needs ``p > 2`` and ``m > p + 1``.
    """
    p, m = G.prime_power if G.prime_power else (None, None)
    mc = p is not None and is_maximal_class(G, include_p2)
    try:
        cls = nilpotency_class(G)
    except PreconditionError:
        cls = None
    report = MaxClassReport(G.name, p, m, cls, mc, _sections(G))
    if mc and m >= 4:
        report.fundamental = fundamental_subgroup(G)
        report.two_step = two_step_centralizers(G)
        if p > 2 and m > p + 1:
            report.gamma1 = _gamma1(G)
    return report


def _gamma1(G: Group) -> list[tuple[Subgroup, str]]:
    G1 = fundamental_subgroup(G)
    out = []
    for M in maximal_subgroups(G):
        if M == G1:
            role = FUNDAMENTAL
        elif is_maximal_class(M.as_group()):
            role = MAXIMAL_CLASS_MEMBER
        else:
            role = OTHER_MEMBER
        out.append((M, role))
    return out


def classify_gamma1(G: Group) -> MaxClassReport:
    """Tag each maximal subgroup as the fundamental one or by its maximal-class status.

    Requires ``G`` of maximal class, ``p > 2`` and order ``p^m`` with ``m > p + 1``.
    """
    p, m = _require_maximal_class(G, 4)
    if p == 2 or m <= p + 1:
        raise PreconditionError(f"{G.name}: needs p > 2 and m > p + 1 (have p={p}, m={m})")
    return max_class_report(G)
