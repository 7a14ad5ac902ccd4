"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line through the ``criterion`` fixture;
the lines are printed together in the terminal summary.
"""
import json
import time

import numpy as np
import pytest

import brute
from conftest import E, small_groups
from pmaxclass import catalogue
from pmaxclass.autos import automorphism_set, automorphisms_bruteforce
from pmaxclass.catalogue import census, construct, family
from pmaxclass.claims import HOLDS, REFUTED, VACUOUS, run_claim, run_suite
from pmaxclass.cli import main
from pmaxclass.core import BudgetExceeded
from pmaxclass.invariants import (
    centralizer,
    centralizer_exhaustive,
    generator_rank,
    lower_central_series,
    lower_central_term,
    maximal_subgroups,
    nilpotency_class,
    nilpotency_class_lower,
    small_subgroups,
)
from pmaxclass.maxclass import FUNDAMENTAL, MAXIMAL_CLASS_MEMBER, classify_gamma1, fundamental_subgroup, is_maximal_class

BRUTE_LIMIT = 128


def build_corpus():
    """Census tables for p = 2, 3, 5 up to 5^4 plus the on-the-fly instances up to 3^6."""
    groups = census(2, 512) + census(3, 729) + census(5, 625)
    names = {G.name for G in groups}
    for desc in (family("wreath_cpcp", p=3), family("cyclotomic_maxclass", p=3, n=6),
                 family("wreath_quotient", p=5, k=4)):
        assert construct(desc).name in names
    return groups


@pytest.fixture(scope="module")
def corpus():
    return build_corpus()


@pytest.fixture(scope="module")
def maxclass(corpus):
    return [G for G in corpus if is_maximal_class(G)]


def test_1_structural_suite(criterion):
    # timed from construction onwards, on fresh groups with nothing cached
    start = time.perf_counter()
    maxclass = [G for G in build_corpus() if is_maximal_class(G)]
    run = run_suite(["P3.2"], maxclass)
    elapsed = time.perf_counter() - start
    refuted = [r.group for r in run.results if r.status == REFUTED]
    not_held = [r.group for r in run.results if r.status != HOLDS]

    # independent spot check on the smaller groups: |G:G'|, |Z(G)| and the p+1 maximal subgroups
    brute_bad = []
    for G in maxclass:
        if G.order > BRUTE_LIMIT:
            continue
        p = G.prime_power[0]
        T = brute.table(G)
        lc, uc = brute.lower_central(T), brute.upper_central(T)
        if G.order // len(lc[1]) != p * p or len(uc[1]) != p or len(brute.maximal_subgroups(T)) != p + 1:
            brute_bad.append(G.name)

    passed = not refuted and not not_held and not brute_bad and elapsed < 120
    criterion(1, passed, f"P3.2 held on {len(maxclass)} maximal-class groups, {len(refuted)} refuted, "
                         f"{elapsed:.1f}s (limit 120s); brute cross-check mismatches: {len(brute_bad)}")
    assert not refuted and not not_held, not_held
    assert not brute_bad, brute_bad
    assert elapsed < 120


def test_2_series_coincide(criterion, maxclass):
    run = run_suite(["SERIES-COINCIDE"], maxclass)
    bad = [r.group for r in run.results if r.status != HOLDS]
    brute_bad = []
    for G in maxclass:
        if G.order > BRUTE_LIMIT:
            continue
        T = brute.table(G)
        lc, uc = brute.lower_central(T), brute.upper_central(T)
        m = len(lc)
        # lc[i-1] is K_i and uc[j] is Z_j
        if any(lc[i - 1] != uc[m - i] for i in range(2, m + 1)):
            brute_bad.append(G.name)
    criterion(2, not bad and not brute_bad,
              f"K_i = Z_(m-i) exactly on {len(maxclass) - len(bad)}/{len(maxclass)} groups; "
              f"brute mismatches: {len(brute_bad)}")
    assert not bad and not brute_bad


def test_3_normal_count_biconditional(criterion, named):
    groups = census(2, 64) + census(3, 81)
    run = run_suite(["R3.3.2"], groups)
    results = dict(zip((G.name for G in groups), run.results))
    refuted = [r.group for r in run.results if r.status == REFUTED]
    eligible = [G for G in groups if G.prime_power[1] >= 3]
    mc = [G for G in eligible if is_maximal_class(G)]
    non_mc = [G for G in eligible if not is_maximal_class(G)]
    every_cell_held = all(results[G.name].status == HOLDS for G in eligible)

    # the concrete dihedral example, counted by brute force
    D16 = named["D16"]
    proper_nontrivial = [N for N in brute.normal_subgroups(brute.table(D16)) if 1 < len(N) < 16]
    d16 = len(proper_nontrivial)

    passed = not refuted and every_cell_held and bool(mc) and bool(non_mc) and d16 == 4 + 2 - 1
    criterion(3, passed, f"{len(mc)} maximal-class and {len(non_mc)} other groups agree, "
                         f"{len(refuted)} exceptions; D16 has {d16} = 4+2-1 normal subgroups")
    assert passed


def self_centralizing_p2(G, p):
    return any(A.size == p * p and not A.is_whole and centralizer_exhaustive(G, A) == A
               for A in small_subgroups(G, p * p))


def element_with_centralizer_p2(G, p):
    T = G.table
    return any(int((T[x, :] == T[:, x]).sum()) == p * p for x in range(G.order))


def test_4_suzuki_equivalence(criterion):
    groups = [G for p, top in ((2, 512), (3, 243), (5, 125), (7, 343)) for G in census(p, top)]
    run = run_suite(["P3.5", "C3.6"], groups)
    refuted = [(r.claim_id, r.group) for r in run.results if r.status == REFUTED]
    disagreements = []
    for G in groups:
        p, m = G.prime_power
        if m < 3:
            continue
        a, b, c = self_centralizing_p2(G, p), element_with_centralizer_p2(G, p), is_maximal_class(G)
        if not a == b == c:
            disagreements.append((G.name, a, b, c))
    criterion(4, not refuted and not disagreements,
              f"{len(groups)} census groups: {len(refuted)} claim refutations, "
              f"{len(disagreements)} pairwise disagreements among the three conditions")
    assert not refuted and not disagreements, disagreements


def test_5_fundamental_subgroup_suite(criterion, maxclass):
    subjects = [G for G in maxclass if G.prime_power[1] >= 4]
    problems = []
    characteristic_checked = 0
    for G in subjects:
        p, m = G.prime_power
        G1 = fundamental_subgroup(G)
        if G1.index != p or not lower_central_term(G, 2) <= G1:
            problems.append((G.name, "index or K_2"))
        for cid in ("R4.3.1", "R4.3.2", "E4.7"):
            status = run_claim(cid, G).status
            if status == REFUTED or (cid == "R4.3.1" and status != HOLDS):
                problems.append((G.name, cid, status))
        if G.order <= 243 and generator_rank(G) == 2:
            if run_claim("L4.2", G).status != HOLDS:
                problems.append((G.name, "L4.2"))
            characteristic_checked += 1
    e47_live = sum(run_claim("E4.7", G).status == HOLDS for G in subjects)
    r432_live = sum(run_claim("R4.3.2", G).status == HOLDS for G in subjects)
    passed = not problems and characteristic_checked > 0 and e47_live > 0 and r432_live > 0
    criterion(5, passed, f"{len(subjects)} groups of order >= p^4: {len(problems)} problems; "
                         f"L4.2 by full automorphism enumeration on {characteristic_checked}; "
                         f"R4.3.2 non-vacuous on {r432_live}, E4.7 on {e47_live}")
    assert passed, problems


def test_6_cyclotomic_three(criterion):
    notes, ok = [], True
    for n in (5, 6):
        G = construct(family("cyclotomic_maxclass", p=3, n=n))
        lower = lower_central_series(G)
        certified = is_maximal_class(G) and nilpotency_class(G) == n - 1 and len(lower) == n
        roles = [role for _, role in classify_gamma1(G).gamma1]
        gamma_ok = len(roles) == 4 and roles.count(FUNDAMENTAL) == 1 and roles.count(MAXIMAL_CLASS_MEMBER) == 3
        l44 = run_claim("L4.4", G).status
        ok &= certified and gamma_ok and l44 == HOLDS and len(maximal_subgroups(G)) == 4
        notes.append(f"3^{n}: class {nilpotency_class(G)}, roles {roles.count(FUNDAMENTAL)}+"
                     f"{roles.count(MAXIMAL_CLASS_MEMBER)}")
    sweep = run_claim("P4.6", construct(family("cyclotomic_maxclass", p=3, n=5)))
    ok &= sweep.status == HOLDS
    criterion(6, ok, "; ".join(notes) + f"; P4.6 on 3^5 {sweep.status} ({sweep.detail})")
    assert ok


def test_7_oracle_equivalences(criterion, corpus):
    aut_agree, aut_outside = 0, []
    aut_bad = []
    for G in small_groups():
        try:
            fast = automorphism_set(G)
        except BudgetExceeded:
            aut_outside.append(G)
            continue
        if fast.keys == {m.tobytes() for m in automorphisms_bruteforce(G)}:
            aut_agree += 1
        else:
            aut_bad.append(G.name)
    # groups beyond the d <= 3 search budget are reported with their bijection-scan count
    outside = []
    for G in aut_outside:
        outside.append(f"{G.name} (d={generator_rank(G)}, |Aut|={len(automorphisms_bruteforce(G))} by scan)")
    outside_ok = [G.name for G in aut_outside] == [E(2, 4).name] and "|Aut|=20160" in outside[0]

    cent_bad, cent_checked = [], 0
    rng = np.random.default_rng(1)
    for G in corpus:
        if G.order > 512:
            continue
        probes = list(maximal_subgroups(G)) + list(lower_central_series(G))
        probes += [G.generated([int(x)]) for x in rng.choice(G.order, size=min(8, G.order), replace=False)]
        probes += [G.generated([int(x) for x in rng.choice(G.order, size=2)])]
        for H in probes:
            cent_checked += 1
            if centralizer(G, H) != centralizer_exhaustive(G, H):
                cent_bad.append(G.name)

    whole_census = corpus + census(7, 2401)
    class_bad = [G.name for G in whole_census if nilpotency_class(G) != nilpotency_class_lower(G)]

    passed = not aut_bad and outside_ok and not cent_bad and not class_bad
    criterion(7, passed, f"Aut agrees on {aut_agree} groups of order <= 24, outside budget: {', '.join(outside)}; "
                         f"centralizers agree on {cent_checked - len(cent_bad)}/{cent_checked} probes; "
                         f"upper/lower class agree on {len(whole_census) - len(class_bad)}/{len(whole_census)}")
    assert passed, (aut_bad, outside, cent_bad, class_bad)


def test_8_cli_contract(criterion, capsys, monkeypatch):
    argv = ["verify", "--claims", "all", "--p", "2,3", "--max-order", "81", "--json", "--no-timing"]
    first_code = main(argv)
    first = capsys.readouterr().out
    second_code = main(argv)
    second = capsys.readouterr().out
    report = json.loads(first)
    clean = first_code == 0 and second_code == 0 and first == second and report["summary"][REFUTED] == 0

    # dihedral multiplication with the twist sign flipped
    def flipped(desc):
        return catalogue._two_generator_metacyclic(desc, 2 ** (desc.params["m"] - 1), 1, 0)

    monkeypatch.setitem(catalogue._BUILDERS, "dihedral", flipped)
    mutant_code = main(argv)
    mutant = json.loads(capsys.readouterr().out)
    caught = [r for r in mutant["results"] if r["status"] == REFUTED]
    detected = mutant_code == 1 and bool(caught) and all(r["witness"] is not None for r in caught)

    criterion(8, clean and detected,
              f"clean run exit {first_code}, byte-identical repeat: {first == second}, "
              f"{report['summary'][HOLDS]} holds / {report['summary'][VACUOUS]} vacuous; "
              f"mutant exit {mutant_code} with {len(caught)} refuted cells")
    assert clean and detected
