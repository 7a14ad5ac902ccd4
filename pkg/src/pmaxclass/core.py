"""Finite groups on dense element indices, with subgroups as membership masks.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
Multiplication is a materialized ``uint16`` Cayley table when the order is at
most :data:`TABLE_LIMIT`; larger groups keep the vectorized composition rule
they were built with.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from pmaxclass import kernels
from pmaxclass._pykernels import closure_with

ORDER_CAP = 80_000
TABLE_LIMIT = 4096
EXHAUSTIVE_CHECK_LIMIT = 512
RANDOM_TRIPLES = 10_000

Rule = Callable[[np.ndarray, np.ndarray], np.ndarray]


class GroupError(ValueError):
    """Invalid group data or a violated operation precondition."""


class SpecError(GroupError):
    """A group description that does not parse or validate."""


class CapExceeded(GroupError):
    pass


class BudgetExceeded(GroupError):
    pass


class PreconditionError(GroupError):
    pass


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``n == p**m`` and ``m >= 1``, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return (p, m) if n == 1 else None


def _build_table(rule: Rule, order: int) -> np.ndarray:
    table = np.empty((order, order), dtype=np.uint16)
    cols = np.arange(order)[None, :]
    step = max(1, (1 << 20) // order)
    for start in range(0, order, step):
        rows = np.arange(start, min(order, start + step))[:, None]
        table[start:start + rows.shape[0]] = rule(rows, cols)
    return table


class Group:
    """A finite group with indexed elements.

    Either ``table`` or ``rule`` must be given. ``rule(a, b)`` multiplies two
    broadcastable index arrays. With ``verify`` the group axioms are checked
    (exhaustively up to 512 elements, on random triples above).
    """

    def __init__(
        self,
        order: int,
        *,
        table: np.ndarray | None = None,
        rule: Rule | None = None,
        generators: Iterable[int] = (),
        labels: Sequence[str] | Callable[[int], str] | None = None,
        name: str = "G",
        verify: bool = True,
        info: dict[str, Any] | None = None,
    ):
        if order < 1:
            raise GroupError("group order must be positive")
        if order > ORDER_CAP:
            raise CapExceeded(f"order {order} exceeds cap {ORDER_CAP}")
        if table is None and rule is None:
            raise GroupError("need a multiplication table or rule")
        self.order = int(order)
        self.name = name
        self.info = dict(info or {})
        if table is None and order <= TABLE_LIMIT:
            table = _build_table(rule, order)
        if table is not None:
            table = np.ascontiguousarray(table, dtype=np.uint16)
            if table.shape != (order, order):
                raise GroupError(f"table shape {table.shape} does not match order {order}")
            table.setflags(write=False)
        self.table = table
        self._rule = rule
        self.prime_power = prime_power(self.order)
        self.generators = tuple(dict.fromkeys(int(g) for g in generators if int(g) != 0))
        self._labels = labels
        self.cache: dict[Any, Any] = {}
        self.inv = self._inverses()
        if verify:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"<Group {self.name} order={self.order}>"

    # arithmetic

    def mul(self, a, b) -> np.ndarray:
        if self.table is not None:
            return self.table[a, b]
        return self._rule(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def product(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.mul(out, x))
        return out

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        out = 0
        for _ in range(k):
            out = int(self.mul(out, x))
        return out

    def conj(self, x, g) -> np.ndarray:
        """``g^-1 x g`` (broadcasting)."""
        return self.mul(self.mul(self.inv[g], x), g)

    def comm(self, x, y) -> np.ndarray:
        """``x^-1 y^-1 x y`` (broadcasting)."""
        return self.mul(self.mul(self.inv[x], self.inv[y]), self.mul(x, y))

    def label(self, x: int) -> str:
        if self._labels is None:
            return str(int(x))
        if callable(self._labels):
            return self._labels(int(x))
        return self._labels[int(x)]

    @property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.order)]

    def _inverses(self) -> np.ndarray:
        if self.table is not None:
            inv = np.argmax(self.table == 0, axis=1).astype(np.int64)
        else:
            inv, orders = _powers(self.mul, self.order)
            self.cache["orders"] = orders
        inv.setflags(write=False)
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        if "orders" in self.cache:
            orders = self.cache.pop("orders")
        elif self.table is not None:
            orders = kernels.element_orders(self.table)
        else:
            orders = _powers(self.mul, self.order)[1]
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        if self.table is not None:
            return bool(np.array_equal(self.table, self.table.T))
        g = np.asarray(self.generators, dtype=np.int64)
        return bool(np.all(self.mul(g[:, None], g[None, :]) == self.mul(g[None, :], g[:, None])))

    def check_axioms(self) -> None:
        n = self.order
        ar = np.arange(n)
        rng = np.random.default_rng(0)
        if self.table is not None:
            t = self.table
            if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
                raise GroupError(f"{self.name}: element 0 is not a two-sided identity")
            if not (np.all(t[ar, self.inv] == 0) and np.all(t[self.inv, ar] == 0)):
                raise GroupError(f"{self.name}: some element has no two-sided inverse")
            if n <= EXHAUSTIVE_CHECK_LIMIT:
                bad = kernels.find_nonassociative(t)
            else:
                a, b, c = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
                miss = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
                bad = None if not miss.size else (a[miss[0]], b[miss[0]], c[miss[0]])
        else:
            a, b, c = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
            if not (np.all(self.mul(a, 0) == a) and np.all(self.mul(0, a) == a)):
                raise GroupError(f"{self.name}: element 0 is not a two-sided identity")
            if not (np.all(self.mul(a, self.inv[a]) == 0) and np.all(self.mul(self.inv[a], a) == 0)):
                raise GroupError(f"{self.name}: some element has no two-sided inverse")
            miss = np.flatnonzero(self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)))
            bad = None if not miss.size else (a[miss[0]], b[miss[0]], c[miss[0]])
        if bad is not None:
            x, y, z = (int(v) for v in bad)
            raise GroupError(f"{self.name}: multiplication not associative at ({x}, {y}, {z})")
        if int(np.count_nonzero(self.closure((), self.generators))) != n:
            raise GroupError(f"{self.name}: generators do not generate the group")

    # subgroups

    def closure(self, seed, gens) -> np.ndarray:
        """Mask of ``<seed, gens>`` when ``seed`` is a subset of it (BFS from ``seed``)."""
        if self.table is not None:
            return kernels.closure(self.table, seed, gens)
        return closure_with(self.mul, self.order, seed, gens)

    def subgroup(self, mask, gens=None) -> "Subgroup":
        return Subgroup(self, mask, gens)

    def generated(self, elements: Iterable[int]) -> "Subgroup":
        elements = [int(x) for x in np.asarray(list(elements), dtype=np.int64).ravel() if x != 0]
        return Subgroup(self, self.closure((), elements), elements)

    @cached_property
    def trivial(self) -> "Subgroup":
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        return Subgroup(self, mask, ())

    @cached_property
    def whole(self) -> "Subgroup":
        sub = Subgroup(self, np.ones(self.order, dtype=bool), self.generators)
        sub.normal_cached = True
        return sub


def _powers(mul, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverses and element orders by repeated multiplication."""
    pp = prime_power(n)
    if pp is not None:
        return _powers_pgroup(mul, n, *pp)
    ar = np.arange(n, dtype=np.int64)
    inv = np.zeros(n, dtype=np.int64)
    orders = np.ones(n, dtype=np.int64)
    prev = ar.copy()
    todo = ar[1:]
    k = 1
    while todo.size:
        k += 1
        nxt = np.asarray(mul(prev[todo], todo), dtype=np.int64)
        done = nxt == 0
        inv[todo[done]] = prev[todo[done]]
        orders[todo[done]] = k
        prev[todo] = nxt
        todo = todo[~done]
        if k > n:
            raise GroupError("element of infinite order: multiplication is not a group law")
    return inv, orders


def _pth_power(mul, x: np.ndarray, p: int) -> np.ndarray:
    y = x
    for _ in range(p - 1):
        y = np.asarray(mul(y, x), dtype=np.int64)
    return y


def _powers_pgroup(mul, n: int, p: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    # orders are powers of p: iterate x -> x^p; inverse is x^(order-1)
    ar = np.arange(n, dtype=np.int64)
    orders = np.ones(n, dtype=np.int64)
    y = ar.copy()
    for _ in range(m):
        live = y != 0
        if not live.any():
            break
        orders[live] *= p
        y[live] = _pth_power(mul, y[live], p)
    if np.any(y != 0):
        raise GroupError("element order exceeds the group order: multiplication is not a group law")
    inv = np.zeros(n, dtype=np.int64)
    base, e = ar.copy(), orders - 1
    while np.any(e):
        odd = (e & 1).astype(bool)
        inv[odd] = mul(inv[odd], base[odd])
        e >>= 1
        more = e > 0
        base[more] = mul(base[more], base[more])
    return inv, orders


class Subgroup:
    """A subgroup of ``parent`` stored as a boolean membership mask."""

    def __init__(self, parent: Group, mask, gens: Iterable[int] | None = None):
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        self.parent = parent
        self.mask = mask
        self.size = int(np.count_nonzero(mask))
        self._gens = None if gens is None else tuple(int(g) for g in gens if int(g) != 0)
        self.normal_cached: bool | None = None

    def __repr__(self) -> str:
        return f"<Subgroup of {self.parent.name} size={self.size}>"

    def __len__(self) -> int:
        return self.size

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.size == other.size and self.key == other.key

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __le__(self, other: "Subgroup") -> bool:
        return self.size <= other.size and not np.any(self.mask & ~other.mask)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.size < other.size and self <= other

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    @cached_property
    def elements(self) -> np.ndarray:
        out = np.flatnonzero(self.mask)
        out.setflags(write=False)
        return out

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    @property
    def sort_key(self) -> tuple:
        return (self.size, tuple(self.elements.tolist()))

    @property
    def index(self) -> int:
        return self.parent.order // self.size

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @property
    def is_whole(self) -> bool:
        return self.size == self.parent.order

    @property
    def gens(self) -> tuple[int, ...]:
        """A small generating set (greedy, highest element order first)."""
        limit = max(2, self.size.bit_length())
        if self._gens is None:
            els = self.elements
            orders = self.parent.element_orders[els]
            self._gens = self._greedy(els[np.lexsort((els, -orders))])
        elif len(self._gens) > limit:
            self._gens = self._greedy(self._gens)
        return self._gens

    def _greedy(self, candidates) -> tuple[int, ...]:
        chosen: list[int] = []
        cur = self.parent.trivial.mask
        count = 1
        for c in candidates:
            if count == self.size:
                break
            if not cur[c]:
                chosen.append(int(c))
                cur = self.parent.closure(np.flatnonzero(cur), chosen)
                count = int(np.count_nonzero(cur))
        return tuple(chosen)

    @property
    def is_abelian(self) -> bool:
        g = np.asarray(self.gens, dtype=np.int64)
        G = self.parent
        return bool(np.all(G.mul(g[:, None], g[None, :]) == G.mul(g[None, :], g[:, None])))

    def describe(self, limit: int = 20) -> str:
        names = [self.parent.label(x) for x in self.elements[:limit]]
        more = f", ... ({self.size} total)" if self.size > limit else ""
        return "{" + ", ".join(names) + more + "}"

    def as_group(self, name: str | None = None) -> Group:
        """This subgroup as a standalone group (elements relabelled in index order)."""
        cached = self.parent.cache.get(("as_group", self.key))
        if cached is not None:
            return cached
        G = self.parent
        els = self.elements
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[els] = np.arange(els.size)
        kwargs: dict[str, Any] = {}
        if G.table is not None:
            kwargs["table"] = pos[G.table[np.ix_(els, els)]]
        else:
            kwargs["rule"] = lambda a, b: pos[G.mul(els[a], els[b])]
        H = Group(
            self.size,
            generators=pos[list(self.gens)],
            labels=lambda i: G.label(els[i]),
            name=name or f"{G.name}[{self.size}]",
            verify=False,
            **kwargs,
        )
        H.info["embedding"] = els
        G.cache[("as_group", self.key)] = H
        return H


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: Group
    target: Group
    map: np.ndarray

    def __call__(self, x):
        return self.map[x]

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, self.map == 0)

    def image(self) -> Subgroup:
        mask = np.zeros(self.target.order, dtype=bool)
        mask[self.map] = True
        return Subgroup(self.target, mask)

    def preimage(self, sub: Subgroup) -> Subgroup:
        return Subgroup(self.source, sub.mask[self.map])

    def is_homomorphism(self) -> bool:
        S, f = self.source, self.map
        if f[0] != 0:
            return False
        if S.order <= EXHAUSTIVE_CHECK_LIMIT and S.table is not None:
            return bool(np.all(self.target.mul(f[:, None], f[None, :]) == f[S.table]))
        a, b = np.random.default_rng(0).integers(0, S.order, size=(2, RANDOM_TRIPLES))
        return bool(np.all(self.target.mul(f[a], f[b]) == f[S.mul(a, b)]))


# ---------------------------------------------------------------- group specs


@dataclass
class GroupSpec:
    """External description of a group (see ``GroupSpec.from_json``)."""

    kind: str
    degree: int | None = None
    generators: list[list[int]] | None = None
    table: list[list[int]] | None = None
    name: str | None = None
    params: dict[str, Any] | None = None

    @classmethod
    def from_json(cls, obj: Any) -> "GroupSpec":
        if not isinstance(obj, dict):
            raise SpecError("$: expected a JSON object")
        kind = obj.get("kind")
        if kind == "permutations":
            degree = obj.get("degree")
            if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
                raise SpecError("$.degree: expected a positive integer")
            gens = obj.get("generators")
            if not isinstance(gens, list):
                raise SpecError("$.generators: expected a list of image arrays")
            for i, g in enumerate(gens):
                if not isinstance(g, list) or len(g) != degree:
                    raise SpecError(f"$.generators[{i}]: expected a list of {degree} integers")
                if sorted(g) != list(range(degree)) or not all(type(v) is int for v in g):
                    raise SpecError(f"$.generators[{i}]: not a bijection of 0..{degree - 1}")
            return cls("permutations", degree=degree, generators=[list(g) for g in gens])
        if kind == "table":
            table = obj.get("table")
            if not isinstance(table, list) or not table:
                raise SpecError("$.table: expected a non-empty list of rows")
            n = len(table)
            for i, row in enumerate(table):
                if not isinstance(row, list) or len(row) != n or not all(type(v) is int for v in row):
                    raise SpecError(f"$.table[{i}]: expected {n} integers")
                if sorted(row) != list(range(n)):
                    raise SpecError(f"$.table[{i}]: row is not a permutation of 0..{n - 1} (not a Latin square)")
            for j in range(n):
                if sorted(row[j] for row in table) != list(range(n)):
                    raise SpecError(f"$.table[*][{j}]: column is not a permutation of 0..{n - 1} (not a Latin square)")
            return cls("table", table=[list(r) for r in table])
        if kind == "family":
            name = obj.get("name")
            if not isinstance(name, str):
                raise SpecError("$.name: expected a family name")
            params = obj.get("params", {})
            if not isinstance(params, dict):
                raise SpecError("$.params: expected an object")
            return cls("family", name=name, params=params)
        raise SpecError(f"$.kind: expected 'permutations', 'table' or 'family', got {kind!r}")

    def to_json(self) -> dict[str, Any]:
        if self.kind == "permutations":
            return {"kind": "permutations", "degree": self.degree, "generators": self.generators}
        if self.kind == "table":
            return {"kind": "table", "table": self.table}
        return {"kind": "family", "name": self.name, "params": self.params or {}}


def build_group(spec: GroupSpec) -> Group:
    if spec.kind == "permutations":
        return permutation_group(spec.generators or [], spec.degree)
    if spec.kind == "table":
        return table_group(spec.table)
    if spec.kind == "family":
        from pmaxclass.catalogue import FamilyDescriptor, construct

        return construct(FamilyDescriptor.from_json({"name": spec.name, "params": spec.params or {}}))
    raise SpecError(f"unknown spec kind {spec.kind!r}")


def _cycle_label(perm: np.ndarray) -> str:
    seen = np.zeros(perm.size, dtype=bool)
    cycles = []
    for start in range(perm.size):
        if seen[start] or perm[start] == start:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x))
            x = int(perm[x])
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


def permutation_group(generators: Sequence[Sequence[int]], degree: int, *, name: str | None = None) -> Group:
    """Close permutation generators breadth-first; ``x*y`` applies ``x`` first."""
    gens = []
    for g in generators:
        arr = np.asarray(g, dtype=np.int64)
        if arr.shape != (degree,) or not np.array_equal(np.sort(arr), np.arange(degree)):
            raise SpecError(f"generator {list(g)} is not a bijection of 0..{degree - 1}")
        gens.append(arr)
    P = _bfs_order(gens, degree)
    codes, order_idx = _perm_codes(P)

    def rule(a, b):
        A, B = np.broadcast_arrays(P[a], P[b])
        prod = np.take_along_axis(B, A, axis=-1)
        return order_idx[np.searchsorted(codes, _encode(prod))]

    lookup = {p.tobytes(): k for k, p in enumerate(P)}
    return Group(
        len(P),
        rule=rule,
        generators=[lookup[g.tobytes()] for g in gens],
        labels=[_cycle_label(p) for p in P] if len(P) <= TABLE_LIMIT else (lambda k: _cycle_label(P[k])),
        name=name or f"perm[{degree}]",
        info={"degree": degree, "permutations": P},
    )


def _bfs_order(gens: list[np.ndarray], degree: int) -> np.ndarray:
    ident = np.arange(degree, dtype=np.int64)
    perms = [ident]
    index = {ident.tobytes(): 0}
    i = 0
    while i < len(perms):
        x = perms[i]
        i += 1
        for g in gens:
            y = g[x]
            key = y.tobytes()
            if key not in index:
                if len(perms) >= ORDER_CAP:
                    raise CapExceeded(f"permutation closure exceeds cap {ORDER_CAP}")
                index[key] = len(perms)
                perms.append(y)
    return np.array(perms, dtype=np.int64)


_WEIGHTS: dict[int, np.ndarray] = {}


def _encode(perms: np.ndarray) -> np.ndarray:
    degree = perms.shape[-1]
    w = _WEIGHTS.get(degree)
    if w is None:
        w = np.random.default_rng(12345).integers(1, 2**62, size=degree, dtype=np.uint64)
        _WEIGHTS[degree] = w
    with np.errstate(over="ignore"):
        return (perms.astype(np.uint64) * w).sum(axis=-1, dtype=np.uint64)


def _perm_codes(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    codes = _encode(P)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    if np.any(sorted_codes[1:] == sorted_codes[:-1]):
        raise GroupError("permutation hash collision; cannot index group")
    return sorted_codes, order


def table_group(table: Sequence[Sequence[int]], *, name: str = "table") -> Group:
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    if t.ndim != 2 or t.shape != (n, n):
        raise SpecError("table must be square")
    if n > TABLE_LIMIT:
        raise CapExceeded(f"explicit tables are limited to order {TABLE_LIMIT}")
    ar = np.arange(n)
    if not (np.all(np.sort(t, axis=1) == ar) and np.all(np.sort(t, axis=0) == ar[:, None])):
        raise SpecError("table is not a Latin square")
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        raise SpecError("table has no two-sided identity")
    e = ids[0]
    relabel = np.array([e] + [x for x in range(n) if x != e])
    pos = np.empty(n, dtype=np.int64)
    pos[relabel] = ar
    new = pos[t[np.ix_(relabel, relabel)]]
    G = Group(n, table=new, generators=range(1, n), labels=[str(int(x)) for x in relabel], name=name, verify=False)
    G.generators = G.whole.gens
    G.check_axioms()
    return G


# ---------------------------------------------------------------- operations


def element_order(G: Group, x: int) -> int:
    return int(G.element_orders[x])


def commutator(G: Group, x: int, y: int) -> int:
    return int(G.comm(x, y))


def subgroup_generated(G: Group, S: Iterable[int]) -> Subgroup:
    return G.generated(S)


def normal_closure(G: Group, elements: Iterable[int], conj_gens: Iterable[int] | None = None) -> Subgroup:
    """Smallest subgroup containing ``elements`` normalized by ``conj_gens`` (default: G)."""
    cg = np.asarray(list(G.generators if conj_gens is None else conj_gens), dtype=np.int64)
    H = G.generated(elements)
    while H.size < G.order and cg.size and H.gens:
        g = np.asarray(H.gens, dtype=np.int64)
        c = np.asarray(G.conj(g[:, None], cg[None, :]), dtype=np.int64).ravel()
        new = np.unique(c[~H.mask[c]])
        if not new.size:
            break
        gens = list(H.gens) + new.tolist()
        H = Subgroup(G, G.closure(H.elements, gens), gens)
    return H


def commutator_subgroup(G: Group, X: Subgroup, Y: Subgroup) -> Subgroup:
    """``[X, Y]``: normal closure in ``<X, Y>`` of the commutators of generators."""
    xs = np.asarray(X.gens, dtype=np.int64)
    ys = np.asarray(Y.gens, dtype=np.int64)
    if not xs.size or not ys.size:
        return G.trivial
    comms = np.asarray(G.comm(xs[:, None], ys[None, :]), dtype=np.int64).ravel()
    return normal_closure(G, np.unique(comms), list(X.gens) + list(Y.gens))


def is_normal(G: Group, H: Subgroup) -> bool:
    if H.normal_cached is None:
        g = np.asarray(H.gens, dtype=np.int64)
        cg = np.asarray(G.generators, dtype=np.int64)
        if not g.size or not cg.size:
            H.normal_cached = True
        else:
            H.normal_cached = bool(np.all(H.mask[G.conj(g[:, None], cg[None, :])]))
    return H.normal_cached


def coset_ids(G: Group, N: Subgroup) -> np.ndarray:
    """Map each element to the least index of its coset ``xN``."""
    ids = np.full(G.order, -1, dtype=np.int64)
    nel = N.elements
    for x in range(G.order):
        if ids[x] < 0:
            ids[np.asarray(G.mul(x, nel), dtype=np.int64)] = x
    return ids


def quotient_group(G: Group, N: Subgroup, *, name: str | None = None) -> tuple[Group, Homomorphism]:
    """``G/N`` with cosets ordered by least representative, plus the projection."""
    if not is_normal(G, N):
        raise GroupError("quotient by a subgroup that is not normal")
    ids = coset_ids(G, N)
    reps = np.unique(ids)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[ids]
    k = reps.size
    if k <= TABLE_LIMIT:
        table = proj[np.asarray(G.mul(reps[:, None], reps[None, :]), dtype=np.int64)]
        kwargs: dict[str, Any] = {"table": table}
    else:
        kwargs = {"rule": lambda a, b: proj[G.mul(reps[a], reps[b])]}
    Q = Group(
        k,
        generators=proj[list(G.generators)],
        labels=lambda i: G.label(reps[i]) + "N",
        name=name or f"{G.name}/N{N.size}",
        verify=False,
        **kwargs,
    )
    proj.setflags(write=False)
    return Q, Homomorphism(G, Q, proj)


def direct_product(G: Group, H: Group, *, name: str | None = None) -> Group:
    nG, nH = G.order, H.order
    n = nG * nH
    if n > ORDER_CAP:
        raise CapExceeded(f"direct product order {n} exceeds cap {ORDER_CAP}")
    if n <= TABLE_LIMIT and G.table is not None and H.table is not None:
        t = G.table.astype(np.int64)[:, None, :, None] * nH + H.table.astype(np.int64)[None, :, None, :]
        kwargs: dict[str, Any] = {"table": t.reshape(n, n)}
    else:
        def rule(a, b):
            return np.asarray(G.mul(a // nH, b // nH), dtype=np.int64) * nH + H.mul(a % nH, b % nH)
        kwargs = {"rule": rule}
    gens = [g * nH for g in G.generators] + list(H.generators)
    return Group(
        n,
        generators=gens,
        labels=lambda i: f"({G.label(i // nH)}, {H.label(i % nH)})",
        name=name or f"{G.name} x {H.name}",
        verify=False,
        **kwargs,
    )
