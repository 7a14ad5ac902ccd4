"""Executable registry of structural claims about p-groups of maximal class.

Each claim is a function of one group. It returns ``vacuous`` when the
hypotheses do not apply, ``holds`` when the conclusion was verified over every
quantified object, and ``refuted`` with a witness otherwise. Claims that need
an enumeration beyond its budget raise :class:`BudgetExceeded`; the suite
runner records those cells as ``skipped``.

``include_p2`` only affects the maximal-class test applied to subgroups and
quotients; the subject group itself is always held to ``m >= 3``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from pmaxclass.autos import automorphism_set, is_characteristic
from pmaxclass.core import (
    BudgetExceeded,
    Group,
    PreconditionError,
    SpecError,
    Subgroup,
    is_normal,
    quotient_group,
)
from pmaxclass.invariants import (
    ALL_SUBGROUPS_BUDGET,
    all_subgroups,
    center,
    centralizer,
    centralizer_orders,
    exponent,
    frattini_subgroup,
    generator_rank,
    lower_central_series,
    lower_central_term,
    maximal_subgroups,
    nilpotency_class,
    normal_subgroups,
    normalizer,
    relative_centralizer,
    small_subgroups,
    upper_central_series,
    upper_central_term,
)
from pmaxclass.maxclass import (
    FUNDAMENTAL,
    MAXIMAL_CLASS_MEMBER,
    classify_gamma1,
    fundamental_subgroup,
    is_maximal_class,
    subgroup_json,
)

HOLDS, VACUOUS, REFUTED, SKIPPED = "holds", "vacuous", "refuted", "skipped"
STATUSES = (HOLDS, VACUOUS, REFUTED, SKIPPED)


@dataclass
class ClaimReport:
    claim_id: str
    group: str
    status: str
    witness: dict[str, Any] | None = None
    elapsed: float = 0.0
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        """Deterministic payload (timing is reported separately)."""
        return {
            "claim": self.claim_id,
            "group": self.group,
            "status": self.status,
            "detail": self.detail,
            "witness": self.witness,
        }


class _Refuted(Exception):
    def __init__(self, detail: str, witness: dict[str, Any]):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness


class _Vacuous(Exception):
    pass


def _json(value: Any) -> Any:
    if isinstance(value, Subgroup):
        return subgroup_json(value)
    if isinstance(value, Group):
        return value.name
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_json(v) for v in value]
    if isinstance(value, dict):
        return {k: _json(v) for k, v in value.items()}
    return value


def require(cond: bool, detail: str, **witness) -> None:
    if not cond:
        raise _Refuted(detail, {k: _json(v) for k, v in witness.items()})


def vacuous_unless(cond: bool, reason: str) -> None:
    if not cond:
        raise _Vacuous(reason)


class Context:
    """The subject group plus the predicate used on derived groups."""

    def __init__(self, G: Group, include_p2: bool):
        self.G = G
        self.include_p2 = include_p2
        self.p, self.m = G.prime_power

    @property
    def mc(self) -> bool:
        return is_maximal_class(self.G)

    def mc_group(self, X: Group) -> bool:
        return is_maximal_class(X, self.include_p2)

    def mc_sub(self, H: Subgroup) -> bool:
        if H.is_abelian:
            return self.include_p2 and H.size == self.p**2
        if H.is_whole:
            return self.mc_group(self.G) if self.include_p2 else self.mc
        return self.mc_group(H.as_group())

    def require_mc(self, min_m: int = 3) -> None:
        vacuous_unless(self.m >= min_m and self.mc, f"not of maximal class with order >= p^{min_m}")


def _by_size(subs: Iterable[Subgroup]) -> dict[int, list[Subgroup]]:
    out: dict[int, list[Subgroup]] = {}
    for H in subs:
        out.setdefault(H.size, []).append(H)
    return out


def _is_cyclic(G: Group) -> bool:
    return bool(np.any(G.element_orders == G.order))


# ---------------------------------------------------------------- preliminaries


def _t24(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m >= 2, "order below p^2")
    cls = nilpotency_class(G)
    require(cls <= m - 1, "class exceeds m-1", nilpotency_class=cls, m=m)
    Zc1 = upper_central_term(G, cls - 1)
    require(G.order // Zc1.size >= p * p, "|G : Z_{c-1}| < p^2", Z=Zc1)
    maxes = maximal_subgroups(G)
    for M in maxes:
        require(M.index == p and normalizer(G, M).is_whole, "maximal subgroup not normal of index p", M=M)
    if G.order <= ALL_SUBGROUPS_BUDGET:
        subs = [H for H in all_subgroups(G) if not H.is_whole]
        masks = np.array([H.mask for H in subs])
        sizes = np.array([H.size for H in subs])
        lattice_max = {H.key for H in subs
                       if not np.any(masks[:, H.elements].all(axis=1) & (sizes > H.size))}
        require(lattice_max == {M.key for M in maxes}, "maximal subgroups differ from the lattice maxima")
    derived = lower_central_term(G, 2)
    require(derived.index >= p * p, "|G : G'| < p^2", derived=derived)
    return f"class {cls} <= {m - 1}"


def _c25(c: Context) -> str:
    G, p = c.G, c.p
    checked = 0
    for N in normal_subgroups(G):
        i = _log(N.index, p)
        if i >= 2:
            K = lower_central_term(G, i)
            require(K <= N, "K_i not contained in N", N=N, i=i, K_i=K)
            checked += 1
    vacuous_unless(checked > 0, "no normal subgroup of index >= p^2")
    return f"{checked} normal subgroups"


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------- maximal class basics


def _series_coincide(c: Context) -> str:
    c.require_mc()
    G, m = c.G, c.m
    lower, upper = lower_central_series(G), upper_central_series(G)
    require(len(lower) == m and len(upper) == m, "series lengths differ from m",
            lower=lower.sizes, upper=upper.sizes)
    for i in range(2, m + 1):
        K, Z = lower_central_term(G, i), upper_central_term(G, m - i)
        require(K == Z, "K_i != Z_{m-i}", i=i, K_i=K, Z=Z)
    return f"K_i = Z_(m-i) for i = 2..{m}"


def _p32(c: Context) -> str:
    c.require_mc()
    G, p, m = c.G, c.p, c.m
    K2 = lower_central_term(G, 2)
    require(K2.index == p * p, "|G : G'| != p^2", derived=K2)
    Z = center(G)
    require(Z.size == p, "|Z(G)| != p", center=Z)
    for i in range(2, m):
        a, b = lower_central_term(G, i), lower_central_term(G, i + 1)
        require(a.size == b.size * p, "lower central section not of order p", i=i, K_i=a, K_next=b)
    normals = normal_subgroups(G)
    sizes = _by_size(normals)
    for i in range(1, m - 1):
        found = sizes.get(p**i, [])
        require(len(found) == 1, "not exactly one normal subgroup of this order", order=p**i, found=found)
    for N in normals:
        i = _log(N.index, p)
        if i >= 2:
            require(N == lower_central_term(G, i), "normal subgroup of index p^i is not K_i", N=N, i=i)
    maxes = maximal_subgroups(G)
    index_p = [N for N in normals if N.index == p]
    require(len(maxes) == p + 1 and len(index_p) == p + 1, "number of maximal subgroups != p+1",
            count=len(maxes), normal_index_p=len(index_p))
    return "all parts verified"


def _r331(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m > 2 and not _is_cyclic(G), "cyclic or order <= p^2")
    sizes = _by_size(normal_subgroups(G))
    unique = all(len(sizes.get(p**i, [])) == 1 for i in range(1, m - 1))
    vacuous_unless(unique, "some order p^i (1 <= i < m-1) has several normal subgroups")
    require(c.mc, "unique normal subgroups of each order but not of maximal class")
    return "maximal class"


def _r332(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m >= 3, "order below p^3")
    count = len(normal_subgroups(G)) - 2
    expected = m + p - 1
    require((count == expected) == c.mc, "normal subgroup count does not match maximal class",
            proper_nontrivial_normal=count, expected=expected, maximal_class=c.mc)
    if c.mc:
        return f"maximal class with {count} = n+p-1 proper nontrivial normal subgroups"
    return f"not maximal class and {count} != {expected}"


def _quot_mc(c: Context) -> str:
    c.require_mc()
    G, p, m = c.G, c.p, c.m
    checked = 0
    for N in normal_subgroups(G):
        if N.index >= p * p:
            Q, _ = quotient_group(G, N)
            require(is_maximal_class(Q, include_p2=True), "quotient not of maximal class", N=N)
            checked += 1
    for i in range(2, m + 1):
        Q, _ = quotient_group(G, lower_central_term(G, i))
        cls = nilpotency_class(Q)
        require(cls == i - 1, "class of G/K_i is not i-1", i=i, nilpotency_class=cls)
    return f"{checked} quotients"


def _p34(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(not G.is_abelian and m > p, "abelian or order <= p^p")
    normals = normal_subgroups(G)
    for k in range(2, p + 2):
        count = sum(1 for N in normals if N.index == p**k)
        vacuous_unless(count == 1, f"{count} normal subgroups of index p^{k}")
    require(c.mc, "unique normal subgroups of index p^2..p^(p+1) but not of maximal class")
    return "maximal class"


def _p35(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(not G.is_abelian, "abelian")
    witnesses = [A for A in small_subgroups(G, p * p)
                 if A.size == p * p and not A.is_whole and centralizer(G, A) == A]
    vacuous_unless(bool(witnesses), "no self-centralizing subgroup of order p^2")
    require(c.mc, "self-centralizing subgroup of order p^2 in a group not of maximal class", A=witnesses[0])
    return f"{len(witnesses)} self-centralizing subgroups of order p^2"


def _c36(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m >= 3, "order below p^3")
    orders = centralizer_orders(G)
    hits = np.flatnonzero(orders == p * p)
    has = hits.size > 0
    witness = {"element": G.label(int(hits[0]))} if has else {}
    require(has == c.mc, "centralizer-of-order-p^2 criterion disagrees with maximal class",
            maximal_class=c.mc, has_element=has, **witness)
    return "both directions agree"


def _p37(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(c.m >= 3, "order below p^3")
    hits = []
    for B in small_subgroups(G, p**3):
        if B.size == p**3 and not B.is_abelian:
            C = centralizer(G, B)
            if C < B:
                hits.append(B)
    vacuous_unless(bool(hits), "no nonabelian B of order p^3 with C_G(B) < B")
    require(c.mc, "C_G(B) < B for nonabelian B of order p^3, but not of maximal class", B=hits[0])
    return f"{len(hits)} qualifying subgroups"


def _p38(c: Context) -> str:
    G = c.G
    seen: dict[bytes, bool] = {}
    hit = None
    for H in all_subgroups(G):
        N = normalizer(G, H)
        if N.key not in seen:
            seen[N.key] = c.mc_sub(N)
        if seen[N.key]:
            hit = (H, N)
            break
    vacuous_unless(hit is not None, "no subgroup with a maximal-class normalizer")
    require(c.mc, "normalizer of maximal class inside a group not of maximal class", H=hit[0], normalizer=hit[1])
    return "maximal class"


def _l39(c: Context) -> str:
    G, p = c.G, c.p
    normals = normal_subgroups(G)
    checked = 0
    for N in normals:
        if N.size <= p or N.index <= p:
            continue
        ZN = relative_centralizer(G, G.whole, N)
        if not _cyclic_mod(G, ZN, N):
            continue
        for R in normals:
            if R.size == N.size * p and N <= R:
                require(not c.mc_sub(R), "R of maximal class", N=N, R=R)
                checked += 1
    vacuous_unless(checked > 0, "no normal N with |N| > p and G/N of order > p with cyclic centre")
    return f"{checked} configurations"


def _cyclic_mod(G: Group, Z: Subgroup, N: Subgroup) -> bool:
    """Whether ``Z/N`` is cyclic."""
    target = Z.size // N.size
    els = Z.elements
    power = els.copy()
    order = np.ones(els.size, dtype=np.int64)
    pending = ~N.mask[power]
    while pending.any():
        power = np.where(pending, G.mul(power, els), power)
        order += pending
        pending &= ~N.mask[power]
    return bool(np.any(order == target))


def _p310(c: Context) -> str:
    G, p = c.G, c.p
    subs = all_subgroups(G)
    layers = {size: (group, np.array([B.mask for B in group])) for size, group in _by_size(subs).items()}
    mc_cache: dict[bytes, bool] = {}

    def all_overgroups_mc(H: Subgroup, size: int) -> bool | None:
        """None when ``H`` has no overgroup of that order."""
        if size not in layers:
            return None
        group, masks = layers[size]
        idx = np.flatnonzero(masks[:, H.elements].all(axis=1))
        if idx.size == 0:
            return None
        for j in idx:
            B = group[j]
            if B.key not in mc_cache:
                mc_cache[B.key] = c.mc_sub(B)
            if not mc_cache[B.key]:
                return False
        return True

    applicable = 0
    for A in subs:
        if A.size > p and not A.is_whole and all_overgroups_mc(A, A.size * p):
            applicable += 1
            require(c.mc, "every overgroup of index p is of maximal class, but G is not", A=A)
    # Corollary form: H < G of index > p^k, k > 1, all overgroups of order p^k|H| of maximal class.
    for H in subs:
        k = 2
        while H.size * p**k < G.order:
            if all_overgroups_mc(H, H.size * p**k):
                applicable += 1
                require(c.mc, "every overgroup of order p^k|H| is of maximal class, but G is not", H=H, k=k)
            k += 1
    vacuous_unless(applicable > 0, "no subgroup satisfies the overgroup hypothesis")
    return f"{applicable} applicable subgroups"


def _p311(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(p > 2 and m > 3 and c.mc, "needs p > 2, m > 3 and maximal class")
    checked = 0
    for N in normal_subgroups(G):
        if N.index == p**3:
            Q, _ = quotient_group(G, N)
            e = exponent(Q)
            require(e == p, "exp(G/N) != p", N=N, exponent=e)
            checked += 1
    return f"{checked} normal subgroups of index p^3"


def _abelian_maximal(G: Group) -> Subgroup | None:
    return next((M for M in maximal_subgroups(G) if M.is_abelian), None)


def _l11(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(not G.is_abelian, "abelian")
    A = _abelian_maximal(G)
    vacuous_unless(A is not None, "no abelian maximal subgroup")
    derived, Z = lower_central_term(G, 2), center(G)
    require(G.order == p * derived.size * Z.size, "|G| != p |G'| |Z(G)|", A=A, derived=derived, center=Z)
    return f"{G.order} = {p}*{derived.size}*{Z.size}"


def _p313(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(not G.is_abelian, "abelian")
    A = _abelian_maximal(G)
    vacuous_unless(A is not None, "no abelian maximal subgroup")
    vacuous_unless(lower_central_term(G, 2).index == p * p, "|G : G'| != p^2")
    require(c.mc, "abelian maximal subgroup and |G:G'| = p^2, but not of maximal class", A=A)
    return "maximal class"


def _e314(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(c.m == 4, "order is not p^4")
    small = lower_central_term(G, 2).index == p * p
    require(small == c.mc, "|G:G'| = p^2 test disagrees with maximal class",
            derived_index=lower_central_term(G, 2).index, maximal_class=c.mc)
    return "both directions agree"


def direct_decomposition(G: Group) -> tuple[Subgroup, Subgroup] | None:
    """A pair of nontrivial normal subgroups with trivial meet and full join, if any."""
    normals = [N for N in normal_subgroups(G) if not N.is_trivial and not N.is_whole]
    for i, A in enumerate(normals):
        for B in normals[i:]:
            if A.size * B.size == G.order and (A & B).is_trivial:
                join = G.closure(A.elements, B.gens)
                if join.all():
                    return A, B
    return None


def _e315(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(c.m == 4 and exponent(G) == p, "needs order p^4 and exponent p")
    split = direct_decomposition(G)
    vacuous_unless(split is None, "has a nontrivial direct factor")
    require(c.mc, "no direct factor, exponent p and order p^4, but not of maximal class")
    return "maximal class"


def _e316(c: Context) -> str:
    G, p = c.G, c.p
    vacuous_unless(c.m == 4 and exponent(G) == p, "needs order p^4 and exponent p")
    d = generator_rank(G)
    vacuous_unless(d == 2, f"d(G) = {d}")
    require(c.mc, "d(G) = 2, exponent p and order p^4, but not of maximal class")
    return "maximal class"


# ---------------------------------------------------------------- fundamental subgroup


def _p4props(c: Context) -> str:
    c.require_mc(4)
    G, p, m = c.G, c.p, c.m
    G1 = fundamental_subgroup(G)
    K2 = lower_central_term(G, 2)
    require(K2.index == p * p and exponent(quotient_group(G, K2)[0]) == p, "G/G_2 not elementary of order p^2")
    chain = [G.whole, G1] + [lower_central_term(G, i) for i in range(2, m + 1)]
    for i, H in enumerate(chain):
        require(H.index == p**i, "|G : G_i| != p^i", i=i, G_i=H)
        if i:
            require(H <= chain[i - 1], "chain not descending", i=i)
    normals = normal_subgroups(G)
    for i in range(2, m + 1):
        same = [N for N in normals if N.index == p**i]
        require(same == [chain[i]], "G_i is not the unique normal subgroup of its index", i=i, found=same)
    return f"chain of {m + 1} terms"


def _l42(c: Context) -> str:
    c.require_mc(4)
    G = c.G
    G1 = fundamental_subgroup(G)
    if not is_characteristic(G, G1):
        gens = np.asarray(G1.gens)
        bad = next(m for m in automorphism_set(G).maps if not np.all(G1.mask[m[gens]]))
        require(False, "an automorphism moves G_1", G1=G1,
                images={G.label(g): G.label(bad[g]) for g in G.generators})
    return f"invariant under {len(automorphism_set(G))} automorphisms"


def _r431(c: Context) -> str:
    c.require_mc(4)
    G, p = c.G, c.p
    G1 = fundamental_subgroup(G)
    checked = 0
    for N in normal_subgroups(G):
        if N.index < p**4:
            continue
        Q, proj = quotient_group(G, N)
        expected = np.zeros(Q.order, dtype=bool)
        expected[proj.map[G1.elements]] = True
        try:
            Q1 = fundamental_subgroup(Q)
        except PreconditionError:
            require(False, "G/N is not of maximal class", N=N)
        require(np.array_equal(Q1.mask, expected), "(G/N)_1 != G_1/N", N=N)
        checked += 1
    return f"{checked} quotients"


def _r432(c: Context) -> str:
    c.require_mc(5)
    G, p = c.G, c.p
    G1 = fundamental_subgroup(G)
    Phi = frattini_subgroup(G)
    checked = 0
    for M in maximal_subgroups(G):
        Mg = M.as_group()
        if not is_maximal_class(Mg):
            continue
        emb = Mg.info["embedding"]
        mask = np.zeros(G.order, dtype=bool)
        mask[emb[fundamental_subgroup(Mg).elements]] = True
        M1 = Subgroup(G, mask)
        require(M1.index == p * p, "|G : M_1| != p^2", M=M, M1=M1)
        require(is_normal(G, M1), "M_1 not normal in G", M=M, M1=M1)
        require(M1 == Phi, "M_1 != Phi(G)", M=M, M1=M1)
        require(M1 < G1, "M_1 not properly inside G_1", M=M, M1=M1)
        require(M1 == (G1 & M), "M_1 != G_1 meet M", M=M, M1=M1)
        checked += 1
    vacuous_unless(checked > 0, "no maximal subgroup of maximal class")
    return f"{checked} maximal subgroups of maximal class"


def _l44(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(p > 2 and m > p + 1 and c.mc, "needs p > 2, m > p+1 and maximal class")
    report = classify_gamma1(G)
    roles = [role for _, role in report.gamma1]
    require(len(roles) == p + 1, "number of maximal subgroups != p+1", count=len(roles))
    require(roles.count(FUNDAMENTAL) == 1, "G_1 is not a maximal subgroup")
    bad = [M for M, role in report.gamma1 if role not in (FUNDAMENTAL, MAXIMAL_CLASS_MEMBER)]
    require(not bad, "maximal subgroup other than G_1 not of maximal class", M=bad[:1])
    return f"{p} maximal-class members plus G_1"


def _p45(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m > p + 1 and c.mc, "needs maximal class of order > p^(p+1)")
    G1 = fundamental_subgroup(G)
    checked = 0
    for H in all_subgroups(G):
        if H.size > p**p and not H.is_whole and not H <= G1:
            require(c.mc_sub(H), "H not in G_1 of order > p^p, not of maximal class", H=H)
            checked += 1
    return f"{checked} subgroups"


def _p46(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m > p + 1 and c.mc, "needs maximal class of order > p^(p+1)")
    G1 = fundamental_subgroup(G)
    checked = 0
    for H in all_subgroups(G):
        if H.size > p * p and not H.is_whole:
            require(H <= G1 or c.mc_sub(H), "H neither inside G_1 nor of maximal class", H=H)
            checked += 1
    return f"{checked} subgroups"


def _e47(c: Context) -> str:
    G, p, m = c.G, c.p, c.m
    vacuous_unless(m > p + 1 and c.mc, "needs maximal class of order > p^(p+1)")
    G1 = fundamental_subgroup(G)
    orders = G.element_orders
    eG, eG1 = exponent(G), int(np.lcm.reduce(orders[G1.elements]))
    require(eG == eG1, "exp(G_1) != exp(G)", exp_G=eG, exp_G1=eG1)
    big = np.flatnonzero(orders >= p**3)
    outside = big[~G1.mask[big]]
    require(outside.size == 0, "element of order >= p^3 outside G_1",
            element=G.label(int(outside[0])) if outside.size else None)
    return f"exponent {eG}; {big.size} elements of order >= p^3"


def _family(c: Context) -> str:
    G = c.G
    facts = G.info.get("facts")
    vacuous_unless(facts is not None, "no declared family facts")
    observed = {"order": G.order, "class": nilpotency_class(G)}
    if "exponent" in facts:
        observed["exponent"] = exponent(G)
    for key, value in observed.items():
        require(facts[key] == value, f"declared {key} differs from computed", declared=facts[key], computed=value)
    return ", ".join(f"{k}={v}" for k, v in observed.items())


@dataclass(frozen=True)
class Claim:
    claim_id: str
    summary: str
    check: Callable[[Context], str]


REGISTRY: dict[str, Claim] = {
    c.claim_id: c
    for c in [
        Claim("T2.4", "class <= m-1, |G:Z_(c-1)| >= p^2, maximal subgroups normal of index p, |G:G'| >= p^2", _t24),
        Claim("C2.5", "K_i(G) <= N for every normal N of index p^i >= p^2", _c25),
        Claim("SERIES-COINCIDE", "maximal class: K_i = Z_(m-i) for i = 2..m", _series_coincide),
        Claim("P3.2", "maximal class: |G:G'| = p^2, |Z| = p, sections p, unique normal per index, p+1 maximal", _p32),
        Claim("R3.3.1", "noncyclic, unique normal subgroup of each order p^i (i < m-1) => maximal class", _r331),
        Claim("R3.3.2", "maximal class <=> exactly n+p-1 proper nontrivial normal subgroups", _r332),
        Claim("QUOT-MC", "maximal class => G/N of maximal class for |G:N| >= p^2; cl(G/K_i) = i-1", _quot_mc),
        Claim("P3.4", "unique normal subgroup of index p^k for k = 2..p+1 => maximal class", _p34),
        Claim("P3.5", "self-centralizing subgroup of order p^2 => maximal class", _p35),
        Claim("C3.6", "maximal class <=> some element has centralizer of order p^2", _c36),
        Claim("P3.7", "nonabelian B of order p^3 with C_G(B) < B => maximal class", _p37),
        Claim("P3.8", "some N_G(H) of maximal class => maximal class", _p38),
        Claim("L3.9", "cyclic Z(G/N), |R/N| = p normal => R not of maximal class", _l39),
        Claim("P3.10", "all index-p overgroups of A (|A| > p) of maximal class => maximal class", _p310),
        Claim("P3.11", "p > 2, maximal class, |G:N| = p^3 => exp(G/N) = p", _p311),
        Claim("L1.1", "abelian maximal subgroup in nonabelian G => |G| = p|G'||Z(G)|", _l11),
        Claim("P3.13", "abelian maximal subgroup and |G:G'| = p^2 => maximal class", _p313),
        Claim("E3.14", "order p^4: maximal class <=> |G:G'| = p^2", _e314),
        Claim("E3.15", "order p^4, exponent p, no direct factor => maximal class", _e315),
        Claim("E3.16", "order p^4, exponent p, d(G) = 2 => maximal class", _e316),
        Claim("P4.PROPS", "|G:G_i| = p^i along G > G_1 > K_2 > ...; K_i unique normal of index p^i", _p4props),
        Claim("L4.2", "the fundamental subgroup is characteristic", _l42),
        Claim("R4.3.1", "(G/N)_1 = G_1/N when |G/N| >= p^4", _r431),
        Claim("R4.3.2", "M_1 = Phi(G) = G_1 meet M for maximal M of maximal class", _r432),
        Claim("L4.4", "p > 2, m > p+1: maximal subgroups are G_1 and p of maximal class", _l44),
        Claim("P4.5", "H not in G_1 with |H| > p^p is of maximal class", _p45),
        Claim("P4.6", "H with |H| > p^2 lies in G_1 or is of maximal class", _p46),
        Claim("E4.7", "exp(G_1) = exp(G); elements of order >= p^3 lie in G_1", _e47),
        Claim("FAMILY", "declared family order, class and exponent match the engine", _family),
    ]
}

CLAIM_IDS = tuple(REGISTRY)


def resolve_claims(selector: str | Iterable[str]) -> list[str]:
    """``"all"`` or a comma list of ids, in registry order."""
    if isinstance(selector, str):
        selector = [s.strip() for s in selector.split(",") if s.strip()]
    ids = list(selector)
    if ids == ["all"]:
        return list(CLAIM_IDS)
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown or not ids:
        raise SpecError(f"unknown claim id(s): {', '.join(unknown) or '(none given)'}")
    return [i for i in CLAIM_IDS if i in ids]


def run_claim(claim_id: str, G: Group, include_p2: bool = False) -> ClaimReport:
    """Evaluate one claim on one group.

    Raises :class:`SpecError` for an unknown id and :class:`BudgetExceeded`
    when the claim needs an enumeration beyond its budget.
    """
    if claim_id not in REGISTRY:
        raise SpecError(f"unknown claim id {claim_id!r}")
    start = time.perf_counter()
    if G.prime_power is None:
        status, witness, detail = VACUOUS, None, "not a nontrivial p-group"
    else:
        try:
            detail = REGISTRY[claim_id].check(Context(G, include_p2))
            status, witness = HOLDS, None
        except _Vacuous as exc:
            status, witness, detail = VACUOUS, None, str(exc)
        except _Refuted as exc:
            status, witness, detail = REFUTED, exc.witness, exc.detail
    return ClaimReport(claim_id, G.name, status, witness, time.perf_counter() - start, detail)


@dataclass
class VerifyRun:
    claims: list[str]
    groups: list[str]
    results: list[ClaimReport] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self) -> dict[str, int]:
        counts = dict.fromkeys(STATUSES, 0)
        for r in self.results:
            counts[r.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary[REFUTED] == 0

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "claims": self.claims,
            "groups": self.groups,
            "results": [r.to_json() for r in self.results],
            "summary": self.summary,
        }


def run_suite(claim_ids: list[str], groups: list[Group], include_p2: bool = False,
              progress: Callable[[ClaimReport], None] | None = None) -> VerifyRun:
    """Evaluate every claim on every group; cells over budget are ``skipped``.

    Results are ordered by claim (registry order), then by group (input order).
    """
    start = time.perf_counter()
    run = VerifyRun(list(claim_ids), [G.name for G in groups])
    cells: dict[tuple[int, int], ClaimReport] = {}
    for gi, G in enumerate(groups):
        for ci, cid in enumerate(claim_ids):
            t0 = time.perf_counter()
            try:
                report = run_claim(cid, G, include_p2)
            except BudgetExceeded as exc:
                report = ClaimReport(cid, G.name, SKIPPED, None, time.perf_counter() - t0, str(exc))
            cells[ci, gi] = report
            if progress:
                progress(report)
    run.results = [cells[ci, gi] for ci in range(len(claim_ids)) for gi in range(len(groups))]
    run.wall_time = time.perf_counter() - start
    return run
