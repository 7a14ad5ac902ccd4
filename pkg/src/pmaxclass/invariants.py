"""Centralizers, central and derived series, and subgroup enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from pmaxclass import kernels
from pmaxclass.core import (
    BudgetExceeded,
    Group,
    GroupError,
    PreconditionError,
    Subgroup,
    commutator_subgroup,
)

ALL_SUBGROUPS_BUDGET = 512
NORMAL_SUBGROUPS_BUDGET = 4096
SMALL_SUBGROUPS_BUDGET = 4096


def _memo(G: Group, key, fn: Callable):
    try:
        return G.cache[key]
    except KeyError:
        value = G.cache[key] = fn()
        return value


def _require_pgroup(G: Group) -> int:
    if G.prime_power is None:
        if G.order == 1:
            return 0
        raise GroupError(f"{G.name} (order {G.order}) is not a p-group")
    return G.prime_power[0]


def _sorted(subs) -> list[Subgroup]:
    return sorted(subs, key=lambda H: H.sort_key)


# ---------------------------------------------------------------- centralizers


def centralizer(G: Group, H: Subgroup) -> Subgroup:
    """Elements commuting with a generating set of ``H``."""
    ar = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for h in H.gens:
        mask &= G.mul(ar, h) == G.mul(h, ar)
    return Subgroup(G, mask)


def centralizer_exhaustive(G: Group, H: Subgroup) -> Subgroup:
    """Elements commuting with every element of ``H`` (slow reference version)."""
    ar = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for h in H.elements:
        mask &= G.mul(ar, h) == G.mul(h, ar)
    return Subgroup(G, mask)


def center(G: Group) -> Subgroup:
    def compute():
        Z = centralizer(G, G.whole)
        Z.normal_cached = True
        return Z

    return _memo(G, "center", compute)


def relative_centralizer(G: Group, H: Subgroup, N: Subgroup) -> Subgroup:
    """Preimage of ``C_{G/N}(HN/N)``: all ``x`` with ``[x, h]`` in ``N`` for ``h`` generating ``H``.

    ``N`` must be normal in ``G``.
    """
    ar = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for h in H.gens:
        mask &= N.mask[G.comm(ar, h)]
    return Subgroup(G, mask)


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    ar = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for h in H.gens:
        mask &= H.mask[G.conj(h, ar)]
    return Subgroup(G, mask)


# ---------------------------------------------------------------- series


@dataclass(frozen=True)
class Series:
    """A chain of subgroups.

    ``stabilized`` is True when the chain stopped on a repeated term before
    reaching its natural end (the trivial group for descending series, ``G``
    for the upper central series), i.e. for non-nilpotent or non-solvable input.
    """

    kind: str
    terms: tuple[Subgroup, ...]
    stabilized: bool

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> Subgroup:
        return self.terms[i]

    def __iter__(self) -> Iterator[Subgroup]:
        return iter(self.terms)

    @property
    def sizes(self) -> list[int]:
        return [t.size for t in self.terms]


def _descending(G: Group, kind: str, step: Callable[[Subgroup], Subgroup]) -> Series:
    terms = [G.whole]
    while not terms[-1].is_trivial:
        nxt = step(terms[-1])
        nxt.normal_cached = True
        if nxt == terms[-1]:
            return Series(kind, tuple(terms), True)
        terms.append(nxt)
    return Series(kind, tuple(terms), False)


def lower_central_series(G: Group) -> Series:
    """``K_1 = G``, ``K_{i+1} = [K_i, G]`` until the trivial group (or a fixpoint)."""
    return _memo(G, "lower_central", lambda: _descending(G, "lower_central", lambda K: commutator_subgroup(G, K, G.whole)))


def derived_series(G: Group) -> Series:
    return _memo(G, "derived", lambda: _descending(G, "derived", lambda D: commutator_subgroup(G, D, D)))


def upper_central_series(G: Group) -> Series:
    """``Z_0 = 1``, ``Z_{i+1}`` the preimage of ``Z(G/Z_i)``."""

    def compute():
        terms = [G.trivial]
        while not terms[-1].is_whole:
            nxt = relative_centralizer(G, G.whole, terms[-1])
            nxt.normal_cached = True
            if nxt == terms[-1]:
                return Series("upper_central", tuple(terms), True)
            terms.append(nxt)
        return Series("upper_central", tuple(terms), False)

    return _memo(G, "upper_central", compute)


def lower_central_term(G: Group, i: int) -> Subgroup:
    """``K_i(G)`` with ``K_1 = G``; the trivial group past the end of the series."""
    if i < 1:
        raise ValueError("lower central terms are indexed from 1")
    terms = lower_central_series(G).terms
    return terms[i - 1] if i <= len(terms) else G.trivial


def upper_central_term(G: Group, i: int) -> Subgroup:
    """``Z_i(G)`` with ``Z_0 = 1``; ``G`` past the end of the series."""
    terms = upper_central_series(G).terms
    return terms[i] if i < len(terms) else G.whole


def nilpotency_class(G: Group) -> int:
    series = upper_central_series(G)
    if series.stabilized:
        raise PreconditionError(f"{G.name} is not nilpotent")
    return len(series) - 1


def nilpotency_class_lower(G: Group) -> int:
    """Class read off the lower central series (length minus one)."""
    series = lower_central_series(G)
    if series.stabilized:
        raise PreconditionError(f"{G.name} is not nilpotent")
    return len(series) - 1


def exponent(G: Group) -> int:
    return int(np.lcm.reduce(G.element_orders))


# ---------------------------------------------------------------- conjugacy and normal subgroups


def conjugacy_classes(G: Group) -> list[np.ndarray]:
    """Conjugacy classes in order of their least element."""
    if G.table is None:
        raise BudgetExceeded(f"conjugacy classes need a table (order <= {NORMAL_SUBGROUPS_BUDGET})")

    def compute():
        ids = kernels.conjugacy_class_ids(G.table, G.inv)
        order = np.argsort(ids, kind="stable")
        reps, starts = np.unique(ids[order], return_index=True)
        return [c for c in np.split(order, starts[1:])]

    return _memo(G, "classes", compute)


def centralizer_orders(G: Group) -> np.ndarray:
    """``|C_G(x)|`` for every element, from class sizes."""
    out = np.empty(G.order, dtype=np.int64)
    for cls in conjugacy_classes(G):
        out[cls] = G.order // cls.size
    return out


def normal_subgroups(G: Group) -> list[Subgroup]:
    """All normal subgroups, by joining normal closures of conjugacy classes to a fixpoint."""
    if G.order > NORMAL_SUBGROUPS_BUDGET:
        raise BudgetExceeded(f"normal subgroup enumeration limited to order {NORMAL_SUBGROUPS_BUDGET}")
    return _memo(G, "normal_subgroups", lambda: _sorted(_normal_lattice(G)))


def _normal_lattice(G: Group) -> list[Subgroup]:
    atoms: dict[bytes, Subgroup] = {}
    for cls in conjugacy_classes(G)[1:]:
        A = Subgroup(G, G.closure((), cls), cls)
        atoms.setdefault(A.key, A)
    atom_list = list(atoms.values())
    atom_masks = np.array([A.mask for A in atom_list]).reshape(len(atom_list), G.order)
    atom_gens = [A.gens for A in atom_list]
    found = {G.trivial.key: G.trivial}
    queue = [G.trivial]
    for N in queue:
        outside = np.flatnonzero(np.any(atom_masks & ~N.mask, axis=1))
        for k in outside:
            J = Subgroup(G, G.closure(N.elements, atom_gens[k]))
            if J.key not in found:
                found[J.key] = J
                queue.append(J)
    for N in found.values():
        N.normal_cached = True
    return list(found.values())


# ---------------------------------------------------------------- p-group structure


def frattini_quotient_data(G: Group) -> tuple[Subgroup, list[int], np.ndarray]:
    """``(Phi, basis, coords)``: ``Phi = G'G^p``, lifts of a basis of ``G/Phi``, and
    the coordinates of every element in that basis over ``F_p``."""

    def compute():
        p = _require_pgroup(G)
        if G.order == 1:
            return G.trivial, [], np.zeros((1, 0), dtype=np.int64)
        Dg = commutator_subgroup(G, G.whole, G.whole)
        powers = [G.power(g, p) for g in G.generators]
        Phi = Subgroup(G, G.closure(Dg.elements, list(Dg.gens) + powers), list(Dg.gens) + powers)
        Phi.normal_cached = True
        basis: list[int] = []
        cur = Phi.mask
        for g in G.generators:
            if not cur[g]:
                basis.append(g)
                cur = G.closure(np.flatnonzero(cur), [g])
        coords = np.zeros((G.order, len(basis)), dtype=np.int64)
        assigned = Phi.mask.copy()
        frontier = Phi.elements
        while frontier.size:
            reached = []
            for i, b in enumerate(basis):
                ys = np.asarray(G.mul(frontier, b), dtype=np.int64)
                fresh = ~assigned[ys]
                ys, first = np.unique(ys[fresh], return_index=True)
                c = coords[frontier[fresh][first]]
                c[:, i] = (c[:, i] + 1) % p
                coords[ys] = c
                assigned[ys] = True
                reached.append(ys)
            frontier = np.concatenate(reached)
        return Phi, basis, coords

    return _memo(G, "frattini_data", compute)


def _hyperplane_functionals(p: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for v in itertools.product(range(p), repeat=d):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            out.append(v)
    return out


def maximal_subgroups(G: Group) -> list[Subgroup]:
    """Index-p subgroups of a p-group (preimages of hyperplanes of ``G/Phi``)."""

    def compute():
        p = _require_pgroup(G)
        if G.order == 1:
            return []
        Phi, basis, coords = frattini_quotient_data(G)
        subs = []
        for f in _hyperplane_functionals(p, len(basis)):
            mask = (coords @ np.asarray(f, dtype=np.int64)) % p == 0
            M = Subgroup(G, mask)
            M.normal_cached = True
            subs.append(M)
        return _sorted(subs)

    return _memo(G, "maximal_subgroups", compute)


def frattini_subgroup(G: Group) -> Subgroup:
    """Intersection of all maximal subgroups."""
    _require_pgroup(G)
    maxes = maximal_subgroups(G)
    if not maxes:
        return G.trivial
    mask = np.logical_and.reduce([M.mask for M in maxes])
    Phi = Subgroup(G, mask)
    Phi.normal_cached = True
    return Phi


def generator_rank(G: Group) -> int:
    """``d(G) = log_p |G : Phi(G)|``."""
    p = _require_pgroup(G)
    if G.order == 1:
        return 0
    index = G.order // frattini_subgroup(G).size
    d = 0
    while index > 1:
        index //= p
        d += 1
    return d


# ---------------------------------------------------------------- subgroup lattice


def _pth_powers(G: Group, p: int) -> np.ndarray:
    def compute():
        ar = np.arange(G.order)
        pw = ar.copy()
        for _ in range(p - 1):
            pw = np.asarray(G.mul(pw, ar), dtype=np.int64)
        return pw

    return _memo(G, ("pth_powers", p), compute)


def _pgroup_lattice(G: Group, max_size: int) -> list[Subgroup]:
    """Subgroups of a p-group of order at most ``max_size``, layer by layer.

    Every ``K > H`` with ``|K : H| = p`` is ``<H, x>`` for some ``x`` normalizing
    ``H`` with ``x^p`` in ``H``; every subgroup is reached from one of its maximal
    subgroups.
    """
    p = G.prime_power[0]
    pw = _pth_powers(G, p)
    found = {G.trivial.key: G.trivial}
    layer = [G.trivial]
    while layer:
        nxt = []
        for H in layer:
            if H.size * p > max_size:
                continue
            cand = normalizer(G, H).mask & ~H.mask
            xs = np.flatnonzero(cand)
            xs = xs[H.mask[pw[xs]]]
            done = np.zeros(G.order, dtype=bool)
            for x in xs:
                if done[x]:
                    continue
                K = G.closure(H.elements, [x])
                done |= K
                key = np.packbits(K).tobytes()
                if key not in found:
                    S = Subgroup(G, K, H.gens + (int(x),))
                    found[key] = S
                    nxt.append(S)
        layer = nxt
    return list(found.values())


def _generic_lattice(G: Group, max_size: int) -> list[Subgroup]:
    found = {G.trivial.key: G.trivial}
    queue = [G.trivial]
    for H in queue:
        for x in np.flatnonzero(~H.mask):
            gens = H.gens + (int(x),)
            K = Subgroup(G, G.closure(H.elements, gens), gens)
            if K.size <= max_size and K.key not in found:
                found[K.key] = K
                queue.append(K)
    return list(found.values())


def all_subgroups(G: Group) -> list[Subgroup]:
    if G.order > ALL_SUBGROUPS_BUDGET:
        raise BudgetExceeded(f"subgroup lattice enumeration limited to order {ALL_SUBGROUPS_BUDGET}")
    return _memo(G, "all_subgroups", lambda: _sorted(_lattice(G, G.order)))


def small_subgroups(G: Group, max_size: int) -> list[Subgroup]:
    """All subgroups of order at most ``max_size``."""
    if G.order > SMALL_SUBGROUPS_BUDGET:
        raise BudgetExceeded(f"small subgroup enumeration limited to order {SMALL_SUBGROUPS_BUDGET}")
    if G.order <= ALL_SUBGROUPS_BUDGET and "all_subgroups" in G.cache:
        return [H for H in G.cache["all_subgroups"] if H.size <= max_size]
    return _memo(G, ("small_subgroups", max_size), lambda: _sorted(_lattice(G, max_size)))


def _lattice(G: Group, max_size: int) -> list[Subgroup]:
    if G.prime_power is not None:
        return _pgroup_lattice(G, max_size)
    return _generic_lattice(G, max_size)


def is_minimal_nonabelian(G: Group, H: Subgroup) -> bool:
    """True iff ``H`` is nonabelian and all its proper subgroups are abelian."""
    if H.is_abelian:
        return False
    if H.size > ALL_SUBGROUPS_BUDGET:
        raise BudgetExceeded(f"minimal-nonabelian test limited to order {ALL_SUBGROUPS_BUDGET}")
    Hg = H.as_group()
    if Hg.prime_power is not None:
        proper = maximal_subgroups(Hg)
    else:
        proper = [K for K in all_subgroups(Hg) if not K.is_whole]
    return all(K.is_abelian for K in proper)
