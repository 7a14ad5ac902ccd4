"""Automorphism enumeration, characteristic subgroups and conjugation actions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from pmaxclass import kernels
from pmaxclass.core import BudgetExceeded, Group, Homomorphism, Subgroup
from pmaxclass.invariants import (
    _memo,
    centralizer,
    frattini_quotient_data,
    normalizer,
    relative_centralizer,
)

AUTOMORPHISM_ORDER_BUDGET = 256
AUTOMORPHISM_RANK_BUDGET = 3
BRUTE_FORCE_LIMIT = 24


@dataclass(frozen=True)
class AutomorphismSet:
    """All automorphisms found for ``group`` (rows of ``maps`` are element maps)."""

    group: Group
    maps: np.ndarray
    complete: bool

    def __len__(self) -> int:
        return self.maps.shape[0]

    @cached_property
    def autos(self) -> list[Homomorphism]:
        return [Homomorphism(self.group, self.group, m) for m in self.maps]

    @cached_property
    def keys(self) -> frozenset[bytes]:
        return frozenset(m.tobytes() for m in self.maps)

    def __contains__(self, m) -> bool:
        return np.asarray(m, dtype=np.int64).tobytes() in self.keys


def _search_generators(G: Group) -> tuple[list[int], np.ndarray | None]:
    """Generating sequence for the search, and the Frattini mask for p-groups."""
    if G.prime_power is not None:
        Phi, basis, _ = frattini_quotient_data(G)
        gens, phi_mask = list(basis), Phi.mask
    else:
        gens, phi_mask = list(G.whole.gens), None
    orders = G.element_orders
    gens.sort(key=lambda g: -orders[g])
    return gens, phi_mask


def automorphism_set(G: Group) -> AutomorphismSet:
    """Every automorphism of ``G``, found by backtracking over generator images.

    Images of the i-th generator are restricted to elements of the same order
    (outside ``Phi(G)`` and the span of earlier images, for p-groups); each
    complete assignment is extended by word closure and kept if bijective.
    """
    if G.order > AUTOMORPHISM_ORDER_BUDGET:
        raise BudgetExceeded(f"automorphism search limited to order {AUTOMORPHISM_ORDER_BUDGET}")
    gens, phi_mask = _search_generators(G)
    if len(gens) > AUTOMORPHISM_RANK_BUDGET:
        raise BudgetExceeded(f"automorphism search limited to {AUTOMORPHISM_RANK_BUDGET} generators")
    return _memo(G, "automorphisms", lambda: _search(G, gens, phi_mask))


def _search(G: Group, gens: list[int], phi_mask: np.ndarray | None) -> AutomorphismSet:
    table = G.table
    orders = G.element_orders
    buckets = {o: np.flatnonzero(orders == o) for o in set(orders[gens].tolist())}
    found: list[np.ndarray] = []

    def extend(level: int, imgs: list[int], span: np.ndarray | None):
        if level == len(gens):
            m = kernels.extend_hom(table, table, gens, imgs)
            if m is not None and np.unique(m).size == G.order:
                found.append(m)
            return
        cands = buckets[int(orders[gens[level]])]
        if span is not None:
            cands = cands[~span[cands]]
        for c in cands:
            nxt = None if span is None else G.closure(np.flatnonzero(span), [int(c)])
            extend(level + 1, imgs + [int(c)], nxt)

    extend(0, [], phi_mask)
    maps = np.array(found, dtype=np.int64).reshape(len(found), G.order)
    maps.setflags(write=False)
    return AutomorphismSet(G, maps, True)


def automorphisms_bruteforce(G: Group) -> np.ndarray:
    """Reference enumeration: bijections built one element at a time, in index order,
    keeping only those that preserve every product among assigned elements."""
    n = G.order
    if n > BRUTE_FORCE_LIMIT:
        raise BudgetExceeded(f"brute-force automorphism scan limited to order {BRUTE_FORCE_LIMIT}")
    T = G.table.astype(np.int64)
    orders = G.element_orders
    f = np.full(n, -1, dtype=np.int64)
    f[0] = 0
    used = np.zeros(n, dtype=bool)
    used[0] = True
    out: list[np.ndarray] = []

    def consistent(x: int) -> bool:
        a = np.arange(x + 1)
        prod = T[a[:, None], a[None, :]]
        ok = f[prod] >= 0
        expected = T[f[a][:, None], f[a][None, :]]
        return bool(np.all(f[prod][ok] == expected[ok]))

    def assign(x: int):
        if x == n:
            out.append(f.copy())
            return
        for y in range(1, n):
            if used[y] or orders[y] != orders[x]:
                continue
            f[x], used[y] = y, True
            if consistent(x):
                assign(x + 1)
            f[x], used[y] = -1, False

    assign(1)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def is_characteristic(G: Group, H: Subgroup) -> bool:
    gens = np.asarray(H.gens, dtype=np.int64)
    return all(bool(np.all(H.mask[m[gens]])) for m in automorphism_set(G).maps)


def conjugation_action(G: Group, H: Subgroup, g: int) -> np.ndarray:
    """The automorphism ``h -> g^-1 h g`` of ``H``, in the indexing of ``H.as_group()``."""
    els = H.elements
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[els] = np.arange(els.size)
    return pos[np.asarray(G.conj(els, g), dtype=np.int64)]


def nc_embedding_check(G: Group, H: Subgroup) -> bool:
    """Check that conjugation gives ``N_G(H) -> Aut(H)`` with kernel ``C_G(H)``.

    The image must be a subgroup of the enumerated ``Aut(H)``, so its order
    ``|N_G(H) : C_G(H)|`` divides ``|Aut(H)|``.
    """
    Hg = H.as_group()
    auts = automorphism_set(Hg)
    N, C = normalizer(G, H), centralizer(G, H)
    ident = np.arange(H.size)
    images: dict[bytes, np.ndarray] = {}
    kernel = np.zeros(G.order, dtype=bool)
    for g in N.elements:
        m = conjugation_action(G, H, int(g))
        if m not in auts:
            return False
        kernel[g] = np.array_equal(m, ident)
        images.setdefault(m.tobytes(), m)
    if not np.array_equal(kernel, C.mask):
        return False
    maps = list(images.values())
    for a in maps:
        for b in maps:
            if a[b].tobytes() not in images:
                return False
    return len(images) * C.size == N.size and len(auts) % len(images) == 0


def section_action_order(G: Group, upper: Subgroup, lower: Subgroup) -> int:
    """Order of the conjugation action of ``G`` on ``upper/lower`` (both normal)."""
    return G.order // relative_centralizer(G, upper, lower).size
