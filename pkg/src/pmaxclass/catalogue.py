"""Named p-group families with closed-form normal forms.

Each family maps element indices to mixed-radix coordinate vectors (index 0 is
the identity) and multiplies coordinates with a vectorized rule. Every
constructed group also records the facts the family is expected to satisfy
(``group.info["facts"]``); the engine checks those rather than trusting them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from pmaxclass import snf
from pmaxclass.core import ORDER_CAP, TABLE_LIMIT, Group, SpecError, direct_product, quotient_group

FAMILY_NAMES = (
    "cyclic",
    "elementary_abelian",
    "dihedral",
    "quaternion",
    "semidihedral",
    "modular_pgroup",
    "heisenberg",
    "extraspecial_exp_p2",
    "wreath_cpcp",
    "wreath_quotient",
    "cyclotomic_maxclass",
    "direct_product",
)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass
class FamilyDescriptor:
    name: str
    params: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_json(cls, obj: Any) -> "FamilyDescriptor":
        if not isinstance(obj, dict) or not isinstance(obj.get("name"), str):
            raise SpecError("family descriptor needs a string 'name'")
        name = obj["name"]
        if name not in FAMILY_NAMES:
            raise SpecError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
        raw = obj.get("params", {}) or {}
        if not isinstance(raw, dict):
            raise SpecError(f"{name}: params must be an object")
        params: dict[str, Any] = {}
        for key, value in raw.items():
            if key == "factors" and name == "direct_product":
                if not isinstance(value, list) or not value:
                    raise SpecError("direct_product: 'factors' must be a non-empty list")
                params[key] = [v if isinstance(v, FamilyDescriptor) else cls.from_json(v) for v in value]
            elif isinstance(value, int) and not isinstance(value, bool):
                params[key] = value
            else:
                raise SpecError(f"{name}: parameter {key!r} must be an integer")
        desc = cls(name, params)
        _validate(desc)
        return desc

    def to_json(self) -> dict[str, Any]:
        params = {
            k: [f.to_json() for f in v] if k == "factors" else v for k, v in sorted(self.params.items())
        }
        return {"name": self.name, "params": params}

    @property
    def ident(self) -> str:
        if self.name == "direct_product":
            return " x ".join(f.ident for f in self.params["factors"])
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"


def family(name: str, **params) -> FamilyDescriptor:
    if name == "direct_product":
        params["factors"] = [f.to_json() if isinstance(f, FamilyDescriptor) else f for f in params["factors"]]
    return FamilyDescriptor.from_json({"name": name, "params": params})


def product(*factors: FamilyDescriptor) -> FamilyDescriptor:
    return family("direct_product", factors=list(factors))


# ---------------------------------------------------------------- parameter checks

_PARAMS = {
    "cyclic": ("p", "m"),
    "elementary_abelian": ("p", "k"),
    "dihedral": ("p", "m"),
    "quaternion": ("p", "m"),
    "semidihedral": ("p", "m"),
    "modular_pgroup": ("p", "m"),
    "heisenberg": ("p",),
    "extraspecial_exp_p2": ("p",),
    "wreath_cpcp": ("p",),
    "wreath_quotient": ("p", "k"),
    "cyclotomic_maxclass": ("p", "n"),
    "direct_product": ("factors",),
}


def _validate(desc: FamilyDescriptor) -> None:
    name, params = desc.name, desc.params
    if name in ("dihedral", "quaternion", "semidihedral"):
        params.setdefault("p", 2)
    allowed = _PARAMS[name]
    unknown = set(params) - set(allowed)
    missing = set(allowed) - set(params)
    if unknown or missing:
        raise SpecError(f"{name}: expected parameters {', '.join(allowed)}")
    if name == "direct_product":
        order = math.prod(family_order(f) for f in params["factors"])
    else:
        p = params["p"]
        if not _is_prime(p):
            raise SpecError(f"{name}: p={p} is not prime")
        rules: dict[str, Callable[[], bool]] = {
            "cyclic": lambda: params["m"] >= 0,
            "elementary_abelian": lambda: params["k"] >= 0,
            "dihedral": lambda: p == 2 and params["m"] >= 3,
            "quaternion": lambda: p == 2 and params["m"] >= 3,
            "semidihedral": lambda: p == 2 and params["m"] >= 4,
            "modular_pgroup": lambda: params["m"] >= (4 if p == 2 else 3),
            "heisenberg": lambda: True,
            "extraspecial_exp_p2": lambda: p > 2,
            "wreath_cpcp": lambda: True,
            "wreath_quotient": lambda: 2 <= params["k"] <= p + 1,
            "cyclotomic_maxclass": lambda: params["n"] >= 2,
        }
        if not rules[name]():
            raise SpecError(f"{desc.ident}: parameters out of range")
        order = family_order(desc)
    if order > ORDER_CAP:
        raise SpecError(f"{desc.ident}: order {order} exceeds cap {ORDER_CAP}")


def family_order(desc: FamilyDescriptor) -> int:
    pr = desc.params
    if desc.name == "direct_product":
        return math.prod(family_order(f) for f in pr["factors"])
    p = pr["p"]
    exp = {
        "cyclic": lambda: pr["m"],
        "elementary_abelian": lambda: pr["k"],
        "dihedral": lambda: pr["m"],
        "quaternion": lambda: pr["m"],
        "semidihedral": lambda: pr["m"],
        "modular_pgroup": lambda: pr["m"],
        "heisenberg": lambda: 3,
        "extraspecial_exp_p2": lambda: 3,
        "wreath_cpcp": lambda: p + 1,
        "wreath_quotient": lambda: pr["k"],
        "cyclotomic_maxclass": lambda: pr["n"],
    }[desc.name]()
    return p**exp


def family_facts(desc: FamilyDescriptor) -> dict[str, int]:
    """Order, nilpotency class and (where the family fixes it) exponent."""
    pr = desc.params
    order = family_order(desc)
    if desc.name == "direct_product":
        subs = [family_facts(f) for f in pr["factors"]]
        facts = {"order": order, "class": max(s["class"] for s in subs)}
        if all("exponent" in s for s in subs):
            facts["exponent"] = math.lcm(*(s["exponent"] for s in subs))
        return facts
    p = pr["p"]
    name = desc.name
    if name == "cyclic":
        return {"order": order, "class": int(order > 1), "exponent": order}
    if name == "elementary_abelian":
        return {"order": order, "class": int(order > 1), "exponent": p if order > 1 else 1}
    if name in ("dihedral", "quaternion", "semidihedral"):
        return {"order": order, "class": pr["m"] - 1, "exponent": 2 ** (pr["m"] - 1)}
    if name == "modular_pgroup":
        return {"order": order, "class": 2, "exponent": p ** (pr["m"] - 1)}
    if name == "heisenberg":
        return {"order": order, "class": 2, "exponent": p if p > 2 else 4}
    if name == "extraspecial_exp_p2":
        return {"order": order, "class": 2, "exponent": p * p}
    if name == "wreath_cpcp":
        return {"order": order, "class": p, "exponent": p * p}
    if name == "wreath_quotient":
        return {"order": order, "class": pr["k"] - 1}
    if name == "cyclotomic_maxclass":
        return {"order": order, "class": pr["n"] - 1}
    raise AssertionError(name)


# ---------------------------------------------------------------- coordinate groups


def _coordinate_group(dims, mul, gens, fmt, name, info) -> Group:
    dims = np.asarray(dims, dtype=np.int64)
    strides = np.concatenate([[1], np.cumprod(dims[:-1])]).astype(np.int64)
    order = int(np.prod(dims))

    def decode(idx):
        return (np.asarray(idx, dtype=np.int64)[..., None] // strides) % dims

    def encode(coords):
        return (coords * strides).sum(axis=-1)

    def rule(a, b):
        return encode(mul(decode(a), decode(b)))

    def label(i: int) -> str:
        return fmt(decode(i).tolist())

    labels = [label(i) for i in range(order)] if order <= TABLE_LIMIT else label
    info = dict(info, decode=decode, encode=encode)
    return Group(order, rule=rule, generators=[int(encode(np.asarray(g))) for g in gens],
                 labels=labels, name=name, info=info)


def _unit(k: int, i: int) -> list[int]:
    return [int(j == i) for j in range(k)]


def _power_label(sym: str, e: int) -> str:
    return "" if e == 0 else sym if e == 1 else f"{sym}^{e}"


def _word(*parts: str) -> str:
    return " ".join(x for x in parts if x) or "1"


def _cyclic(desc):
    n = desc.params["p"] ** desc.params["m"]
    return _coordinate_group([n], lambda A, B: (A + B) % n, [[1]] if n > 1 else [],
                             lambda c: _power_label("a", c[0]) or "1", desc.ident, {})


def _elementary(desc):
    p, k = desc.params["p"], desc.params["k"]
    if k == 0:
        return _coordinate_group([1], lambda A, B: A, [], lambda c: "1", desc.ident, {})
    return _coordinate_group([p] * k, lambda A, B: (A + B) % p, [_unit(k, i) for i in range(k)],
                             lambda c: "(" + ",".join(map(str, c)) + ")", desc.ident, {})


def _two_generator_metacyclic(desc, n, twist, square, sym=("r", "s")):
    """Elements ``r^i s^j`` (j in {0, 1}) with ``s r s^-1 = r^twist`` and ``s^2 = r^square``."""

    def mul(A, B):
        i, j = A[..., 0], A[..., 1]
        i2, j2 = B[..., 0], B[..., 1]
        ii = (i + np.where(j == 0, 1, twist) * i2 + (j & j2) * square) % n
        return np.stack(np.broadcast_arrays(ii, (j + j2) % 2), axis=-1)

    fmt = lambda c: _word(_power_label(sym[0], c[0]), _power_label(sym[1], c[1]))
    return _coordinate_group([n, 2], mul, [[1, 0], [0, 1]], fmt, desc.ident, {})


def _dihedral(desc):
    n = 2 ** (desc.params["m"] - 1)
    return _two_generator_metacyclic(desc, n, -1, 0)


def _quaternion(desc):
    n = 2 ** (desc.params["m"] - 1)
    return _two_generator_metacyclic(desc, n, -1, n // 2)


def _semidihedral(desc):
    n = 2 ** (desc.params["m"] - 1)
    return _two_generator_metacyclic(desc, n, n // 2 - 1, 0)


def _metacyclic_split(desc, p, m):
    """``<a, b | a^(p^(m-1)), b^p, b a b^-1 = a^(1 + p^(m-2))>`` as ``a^i b^j``."""
    q = p ** (m - 1)
    e = 1 + p ** (m - 2)
    epow = np.array([pow(e, j, q) for j in range(p)], dtype=np.int64)

    def mul(A, B):
        i, j = A[..., 0], A[..., 1]
        ii = (i + epow[j] * B[..., 0]) % q
        return np.stack(np.broadcast_arrays(ii, (j + B[..., 1]) % p), axis=-1)

    fmt = lambda c: _word(_power_label("a", c[0]), _power_label("b", c[1]))
    return _coordinate_group([q, p], mul, [[1, 0], [0, 1]], fmt, desc.ident, {})


def _modular(desc):
    return _metacyclic_split(desc, desc.params["p"], desc.params["m"])


def _extraspecial_exp_p2(desc):
    return _metacyclic_split(desc, desc.params["p"], 3)


def _heisenberg(desc):
    p = desc.params["p"]

    def mul(A, B):
        a, b, c = A[..., 0], A[..., 1], A[..., 2]
        a2, b2, c2 = B[..., 0], B[..., 1], B[..., 2]
        return np.stack(np.broadcast_arrays((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p), axis=-1)

    fmt = lambda c: f"[{c[0]},{c[1]};{c[2]}]"
    return _coordinate_group([p, p, p], mul, [[1, 0, 0], [0, 1, 0]], fmt, desc.ident, {})


def _wreath(desc):
    p = desc.params["p"]
    ar = np.arange(p)

    def mul(A, B):
        A, B = np.broadcast_arrays(A, B)
        v, s = A[..., :p], A[..., p]
        w, t = B[..., :p], B[..., p]
        shifted = np.take_along_axis(w, (ar - s[..., None]) % p, axis=-1)
        return np.concatenate([(v + shifted) % p, ((s + t) % p)[..., None]], axis=-1)

    def fmt(c):
        return "(" + ",".join(map(str, c[:p])) + "|" + (_power_label("σ", c[p]) or "1") + ")"

    return _coordinate_group([p] * (p + 1), mul, [_unit(p + 1, 0), _unit(p + 1, p)], fmt, desc.ident, {})


def _wreath_quotient(desc):
    from pmaxclass.invariants import lower_central_term

    p, k = desc.params["p"], desc.params["k"]
    if p ** (p + 1) > ORDER_CAP:
        return truncated_wreath(p, k, desc.ident)
    W = construct(family("wreath_cpcp", p=p))
    Q, _ = quotient_group(W, lower_central_term(W, k), name=desc.ident)
    Q.check_axioms()
    return Q


def truncated_wreath(p: int, k: int, name: str) -> Group:
    """``F_p[t]/(t^(k-1))`` extended by sigma acting as multiplication by ``1 + t``.

    Isomorphic to ``(C_p wr C_p)/K_k``; used when the wreath product itself is over the cap.
    """
    r = k - 1
    powers = np.array([[[math.comb(s, i - j) % p if i >= j else 0 for j in range(r)] for i in range(r)]
                       for s in range(p)], dtype=np.int64)

    def mul(A, B):
        a, s = A[..., :r], A[..., r]
        b, t = B[..., :r], B[..., r]
        aa = (a + np.einsum("...ij,...j->...i", powers[s], b)) % p
        ss = np.broadcast_to(((s + t) % p)[..., None], aa.shape[:-1] + (1,))
        return np.concatenate([aa, ss], axis=-1)

    def fmt(c):
        return "(" + ",".join(map(str, c[:r])) + "|" + (_power_label("σ", c[r]) or "1") + ")"

    return _coordinate_group([p] * k, mul, [_unit(k, 0), _unit(k, r)], fmt, name, {})


def cyclotomic_module(p: int, n: int) -> tuple[list[int], list[np.ndarray], list[int]]:
    """``Z[zeta_p]/(zeta - 1)^(n-1)`` as ``(moduli, zeta_powers, one)``.

    ``moduli`` are the nontrivial invariant factors, ``zeta_powers[s]`` is the
    matrix of multiplication by ``zeta^s`` in those coordinates (row ``i``
    reduced mod ``moduli[i]``), and ``one`` is the coordinate vector of 1.
    """
    r = p - 1
    zeta = [[0] * r for _ in range(r)]
    for j in range(r):
        if j + 1 < r:
            zeta[j + 1][j] = 1
        else:
            for i in range(r):
                zeta[i][j] = -1
    lam = [[zeta[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    M = snf.identity(r)
    for _ in range(n - 1):
        M = snf.matmul(lam, M)
    diag, U, Ui, _ = snf.smith_normal_form(M)
    keep = [i for i, d in enumerate(diag) if d != 1]
    moduli = [diag[i] for i in keep]
    B = snf.matmul(snf.matmul(U, zeta), Ui)
    B = [[B[i][j] % moduli[a] for j in keep] for a, i in enumerate(keep)]
    powers = [snf.identity(len(keep))]
    for _ in range(p - 1):
        nxt = snf.matmul(B, powers[-1])
        powers.append([[x % moduli[a] for x in row] for a, row in enumerate(nxt)])
    one = [U[i][0] % moduli[a] for a, i in enumerate(keep)]
    return moduli, [np.array(P, dtype=np.int64) for P in powers], one


def _cyclotomic(desc):
    p, n = desc.params["p"], desc.params["n"]
    moduli, powers, one = cyclotomic_module(p, n)
    if math.prod(moduli) != p ** (n - 1):
        raise AssertionError(f"cyclotomic module has order {math.prod(moduli)}, expected {p ** (n - 1)}")
    r = len(moduli)
    mods = np.array(moduli, dtype=np.int64)
    stack = np.stack(powers)

    def mul(A, B):
        a, s = A[..., :r], A[..., r]
        b, t = B[..., :r], B[..., r]
        act = np.einsum("...ij,...j->...i", stack[s], b)
        aa = (a + act) % mods
        ss = np.broadcast_to(((s + t) % p)[..., None], aa.shape[:-1] + (1,))
        return np.concatenate([aa, ss], axis=-1)

    def fmt(c):
        return "(" + ",".join(map(str, c[:r])) + "|" + (_power_label("ζ", c[r]) or "1") + ")"

    gens = [one + [0], [0] * r + [1]]
    return _coordinate_group(moduli + [p], mul, gens, fmt, desc.ident, {"moduli": moduli})


def _direct_product(desc):
    groups = [construct(f) for f in desc.params["factors"]]
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H, name=f"{G.name} x {H.name}")
    G.name = desc.ident
    G.check_axioms()
    return G


_BUILDERS = {
    "cyclic": _cyclic,
    "elementary_abelian": _elementary,
    "dihedral": _dihedral,
    "quaternion": _quaternion,
    "semidihedral": _semidihedral,
    "modular_pgroup": _modular,
    "heisenberg": _heisenberg,
    "extraspecial_exp_p2": _extraspecial_exp_p2,
    "wreath_cpcp": _wreath,
    "wreath_quotient": _wreath_quotient,
    "cyclotomic_maxclass": _cyclotomic,
    "direct_product": _direct_product,
}


def construct(desc: FamilyDescriptor) -> Group:
    _validate(desc)
    G = _BUILDERS[desc.name](desc)
    G.name = desc.ident
    G.info["family"] = desc.to_json()
    G.info["facts"] = family_facts(desc)
    return G


# ---------------------------------------------------------------- census

_RANK_CAP = {2: 6, 3: 5}


def census_descriptors(p: int, max_order: int) -> list[FamilyDescriptor]:
    """Deterministic list of catalogue instances for prime ``p`` up to ``max_order``.

    Includes maximal-class families and designed negatives (abelian groups,
    class-2 groups and direct products).
    """
    if not _is_prime(p):
        raise SpecError(f"p={p} is not prime")
    if max_order > ORDER_CAP:
        raise SpecError(f"max_order {max_order} exceeds cap {ORDER_CAP}")
    # descriptors are validated only after the order filter, so candidates above the cap are harmless
    F = lambda name, **params: FamilyDescriptor(name, params)
    C = lambda m: F("cyclic", p=p, m=m)
    E = lambda k: F("elementary_abelian", p=p, k=k)
    product = lambda *factors: F("direct_product", factors=list(factors))
    out: list[FamilyDescriptor] = []
    m = 1
    while p**m <= max_order:
        out.append(C(m))
        m += 1
    k = 2
    while p**k <= max_order and k <= _RANK_CAP.get(p, 4):
        out.append(E(k))
        k += 1
    out += [product(C(2), C(1)), product(C(2), C(2)), product(C(3), C(1)), product(C(2), E(2)),
            product(C(3), C(2)), product(C(2), C(2), C(1))]
    if p == 2:
        m = 3
        while 2**m <= max_order:
            out += [F("dihedral", p=2, m=m), F("quaternion", p=2, m=m)]
            if m >= 4:
                out += [F("semidihedral", p=2, m=m), F("modular_pgroup", p=2, m=m)]
            m += 1
        out += [F("heisenberg", p=2)]
        D8, Q8, D16 = F("dihedral", p=2, m=3), F("quaternion", p=2, m=3), F("dihedral", p=2, m=4)
        out += [product(D8, C(1)), product(Q8, C(1)), product(D8, C(2)), product(D8, E(2)),
                product(D16, C(1)), product(Q8, C(2)), product(D8, D8)]
    else:
        out += [F("heisenberg", p=p), F("extraspecial_exp_p2", p=p)]
        m = 4
        while p**m <= max_order:
            out.append(F("modular_pgroup", p=p, m=m))
            m += 1
        H = F("heisenberg", p=p)
        X = F("extraspecial_exp_p2", p=p)
        out += [product(H, C(1)), product(X, C(1))]
        if p == 3:
            out += [product(H, E(2))]
    for k in range(3, p + 1):
        out.append(F("wreath_quotient", p=p, k=k))
    out.append(F("wreath_cpcp", p=p))
    n = 3
    while p**n <= max_order:
        out.append(F("cyclotomic_maxclass", p=p, n=n))
        n += 1
    seen: set[str] = set()
    result = []
    for d in out:
        if family_order(d) <= max_order and d.ident not in seen:
            _validate(d)
            seen.add(d.ident)
            result.append(d)
    return result


def census(p: int, max_order: int) -> list[Group]:
    return [construct(d) for d in census_descriptors(p, max_order)]
