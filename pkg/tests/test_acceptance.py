"""Acceptance criteria AC-1 .. AC-10.

Each criterion runs at its stated tolerance (all exact) and prints one
PASS/FAIL line.  Two criteria assert the existence of witnesses inside
candidate spaces where the existence is ruled out by the equivalence
theorem the engine itself verifies (see notes on AC-4 and AC-7 below and
the companion tests that locate the genuine witnesses in the order-8
block-extension space).
"""

from __future__ import annotations

import functools
import itertools
import time

import numpy as np
import pytest

from loopkit import (
    INFINITE,
    AbelianGroupTable,
    Subloop,
    all_normal_subloops,
    assoc_group,
    build_extension,
    center_subloop,
    classical_derived_series,
    commutator_subloop,
    congruence_derived_series,
    decompose_extension,
    direct_product,
    division_closed_forms,
    g_oplus,
    group_order,
    is_abelian_in_A1,
    is_abelian_in_A3,
    is_abelian_in_A4,
    is_central_in,
    is_finite,
    is_isomorphic,
    is_supernilpotent,
    lemma31_analyze,
    nilpotency_class_loop,
    normalize_cocycle,
    quotient,
    solvable_class,
    supernilpotent_crosscheck,
)
from loopkit.commutator import _l_block, _r_block, _t_block, a3_subconditions
from loopkit.errors import NotAbelianIn
from loopkit.extensions import (
    Cocycle,
    extract_cocycle,
    iter_cocycles_exhaustive,
    iter_cocycles_random,
    pair_index,
)
from loopkit.pools import central_cocycle_pool
from loopkit.tables import cyclic, elementary_abelian, klein, latin_squares

from conftest import group_commutator_oracle, group_derived_length, group_nilpotency_class


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"{name}: FAIL")
                raise
            print(f"{name}: PASS")
            return result

        return wrapper

    return decorate


@pytest.fixture(scope="session")
def abelianess_data(pool):
    """Per pool loop, per normal subloop: all abelianess/centrality routes."""
    data = []
    for entry in pool:
        q = entry.table
        z = set(center_subloop(q).elements)
        rows = []
        for a in all_normal_subloops(q):
            rows.append(
                dict(
                    A=a,
                    a1=is_abelian_in_A1(q, a),
                    a3=is_abelian_in_A3(q, a),
                    a4=is_abelian_in_A4(q, a) is not None,
                    c1=is_central_in(q, a, "C1"),
                    c3=is_central_in(q, a, "C3"),
                    c3p=is_central_in(q, a, "C3prime"),
                    c4=is_central_in(q, a, "C4"),
                    central_by_containment=set(a.elements) <= z,
                )
            )
        data.append((entry, rows))
    return data


@criterion("AC-1")
def test_ac1_abelianess_routes_agree(abelianess_data):
    checked = 0
    for entry, rows in abelianess_data:
        for row in rows:
            assert row["a1"] == row["a3"] == row["a4"], (entry.tag, row["A"].elements)
            checked += 1
    assert checked > 400


@criterion("AC-2")
def test_ac2_centrality_routes_agree(abelianess_data):
    for entry, rows in abelianess_data:
        for row in rows:
            assert row["c1"] == row["c3"] == row["c3p"] == row["c4"], (
                entry.tag,
                row["A"].elements,
            )
            assert row["c1"] == row["central_by_containment"]
            if row["c1"]:
                assert row["a1"]


@criterion("AC-3")
def test_ac3_group_oracle(groups):
    for entry in groups:
        q = entry.table
        if q.order > 16:
            continue
        subs = all_normal_subloops(q)
        for a, b in itertools.product(subs, repeat=2):
            assert commutator_subloop(q, a, b).elements == group_commutator_oracle(q, a, b)
        length = group_derived_length(q)
        _, ccls = congruence_derived_series(q)
        _, kcls = classical_derived_series(q)
        if length is None:
            assert ccls is INFINITE and kcls is INFINITE
        else:
            assert ccls == length and kcls == length
        ncls = group_nilpotency_class(q)
        got = nilpotency_class_loop(q)
        assert got == (INFINITE if ncls is None else ncls)


def _ac4_predicate(q):
    fiber = Subloop(q, tuple(range(4)))
    if is_abelian_in_A1(q, fiber):
        return False
    if congruence_derived_series(q)[1] is not INFINITE:
        return False
    if not is_finite(classical_derived_series(q)[1]):
        return False
    return is_finite(solvable_class(assoc_group(q, "MLT")))


@criterion("AC-4")
def test_ac4_mlt_solvable_without_congruence_solvability():
    """Literal criterion: a witness among the 64 loop cocycles over (Z4, Z2).

    Every loop-cocycle extension has its fiber abelian in Q (the same
    equivalence AC-1 verifies), so this space cannot contain the witness;
    the genuine order-8 witness lives in the block-extension space and is
    located by test_paper_counterexample_in_goplus_space below.  See the
    decisions ledger.
    """
    start = time.perf_counter()
    hits = []
    for gamma in iter_cocycles_exhaustive(AbelianGroupTable(cyclic(4)), cyclic(2)):
        q = build_extension(gamma)
        if _ac4_predicate(q):
            hits.append(q)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    assert len(hits) >= 1, "no witness among the 64 loop cocycles (spec defect; see ledger)"


def test_paper_counterexample_in_goplus_space():
    """Mlt solvable, classically solvable, yet not congruence solvable:
    the order-8 witness with a normal Z4 fiber that is not an abelian
    extension fiber."""
    witness = None
    for oplus in latin_squares(4):
        q = g_oplus(cyclic(4), oplus)
        if _ac4_predicate(q):
            witness = q
            break
    assert witness is not None
    fiber = Subloop(witness, (0, 1, 2, 3))
    # the three abelianess routes all reject the fiber
    assert not is_abelian_in_A1(witness, fiber)
    assert not is_abelian_in_A3(witness, fiber)
    assert is_abelian_in_A4(witness, fiber) is None
    with pytest.raises(NotAbelianIn):
        decompose_extension(witness, fiber)


@criterion("AC-5")
def test_ac5_nonsolvable_inner_mapping_groups():
    budget = 100_000
    found = None
    candidates = iter_cocycles_random(
        AbelianGroupTable(elementary_abelian(2, 3)), cyclic(2), seed=1, budget=budget
    )
    for gamma in candidates:
        q = build_extension(gamma)
        if is_finite(solvable_class(assoc_group(q, "INN"))):
            continue
        _, ccls = congruence_derived_series(q)
        if is_finite(ccls) and ccls <= 2:
            found = q
            break
    assert found is not None, "no hit within the 1e5 candidate budget"
    from loopkit import hierarchy_report

    rep = hierarchy_report(found)
    assert rep.congruence_solvability_class == 2
    assert rep.inn_solvable_class is INFINITE


@criterion("AC-6")
def test_ac6_order6_nilpotent_not_supernilpotent():
    start = time.perf_counter()
    witness = None
    for gamma in iter_cocycles_exhaustive(
        AbelianGroupTable(cyclic(2)), cyclic(3), central=True
    ):
        q = build_extension(gamma)
        s_mlt = is_supernilpotent(q)
        s_dec = supernilpotent_crosscheck(q)
        assert s_mlt == s_dec, "supernilpotence routes disagree"
        if (
            witness is None
            and not q.is_associative
            and nilpotency_class_loop(q) == 2
            and not s_mlt
            and not s_dec
        ):
            witness = q
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    assert witness is not None
    # some triple fails to associate in the witness
    assert any(
        witness.mul_at(witness.mul_at(x, y), z) != witness.mul_at(x, witness.mul_at(y, z))
        for x, y, z in itertools.product(range(6), repeat=3)
    )


@criterion("AC-7")
def test_ac7_syntactic_condition_optimality():
    """Literal criterion over the two stated G[oplus] spaces.

    The (i)-failure cannot occur over G = Z2^2: a normal fiber of that
    shape makes every neutral-fixing bijection an automorphism, so
    condition (i) holds automatically (exhaustively confirmed).  Both
    optimality witnesses in fact live over G = Z4; see
    test_paper_condition_i_witness_over_z4 and the decisions ledger.
    """
    k4 = klein()
    z4 = cyclic(4)
    hit_not_i = False
    hit_not_vi = False
    for oplus in latin_squares(4):
        qk = g_oplus(k4, oplus)
        sub = a3_subconditions(qk, Subloop(qk, (0, 1, 2, 3)))
        if not sub["i"] and all(sub[k] for k in ("ii", "iii", "iv", "v", "vi")):
            hit_not_i = True
        qz = g_oplus(z4, oplus)
        sub = a3_subconditions(qz, Subloop(qz, (0, 1, 2, 3)))
        if not sub["vi"] and all(sub[k] for k in ("i", "ii", "iii", "iv", "v")):
            hit_not_vi = True
    assert hit_not_vi, "no (i)-(v)-but-not-(vi) witness over Z4"
    assert hit_not_i, "no (ii)-(vi)-but-not-(i) witness over Z2^2 (spec defect; see ledger)"


def test_routes_agree_on_block_extension_loops():
    """The abelianess and centrality routes must also agree outside the
    cocycle world; block extensions supply fibers that genuinely fail."""
    for i, oplus in enumerate(latin_squares(4)):
        if i % 31:
            continue
        for base in (cyclic(4), klein()):
            q = g_oplus(base, oplus)
            for a in all_normal_subloops(q):
                a1 = is_abelian_in_A1(q, a)
                assert a1 == is_abelian_in_A3(q, a)
                assert a1 == (is_abelian_in_A4(q, a) is not None)
                modes = {is_central_in(q, a, m) for m in ("C1", "C3", "C3prime", "C4")}
                assert len(modes) == 1


def test_paper_condition_i_witness_over_z4():
    """Condition (i) cannot be dropped: a Z4[oplus] fiber satisfying the
    five identity conditions whose inner restrictions are not additive."""
    for oplus in latin_squares(4):
        q = g_oplus(cyclic(4), oplus)
        sub = a3_subconditions(q, Subloop(q, (0, 1, 2, 3)))
        if not sub["i"] and all(sub[k] for k in ("ii", "iii", "iv", "v", "vi")):
            return
    pytest.fail("no (ii)-(vi)-but-not-(i) witness over Z4 either")


@criterion("AC-8")
def test_ac8_central_extension_solvability_bounds(central_pool):
    assert len(central_pool) == 100
    for tag, gamma in central_pool:
        q = build_extension(gamma)
        f = gamma.F
        mq = solvable_class(assoc_group(q, "MLT"))
        mf = solvable_class(assoc_group(f, "MLT"))
        iq = solvable_class(assoc_group(q, "INN"))
        inn_f = solvable_class(assoc_group(f, "INN"))
        if is_finite(mq) and is_finite(mf):
            assert mq <= mf + 1, (tag, mq, mf)
        if is_finite(iq) and is_finite(inn_f):
            assert iq <= inn_f + 1, (tag, iq, inn_f)


def _induced_inner_map_checks(L, N):
    """Generator-wise verification of the induced map Inn(L) -> Inn(L/N)."""
    table, proj_list = quotient(L, N)
    proj = np.asarray(proj_list, dtype=np.int64)
    m = table.order
    ident = np.arange(m)
    # T family: descent and the kernel characterization
    t_l = _t_block(L)
    t_q = _t_block(table)
    assert np.array_equal(proj[t_l], t_q[proj][:, proj])
    in_kernel = (proj[t_l] == proj[None, :]).all(axis=1)
    maps_to_id = (t_q[proj] == ident[None, :]).all(axis=1)
    assert np.array_equal(in_kernel, maps_to_id)
    # L and R families, sliced per first argument
    for x in range(L.order):
        for block_l, block_q in (
            (_l_block(L, x), _l_block(table, int(proj[x]))),
            (_r_block(L, x), _r_block(table, int(proj[x]))),
        ):
            assert np.array_equal(proj[block_l], block_q[proj][:, proj])
            in_kernel = (proj[block_l] == proj[None, :]).all(axis=1)
            maps_to_id = (block_q[proj] == ident[None, :]).all(axis=1)
            assert np.array_equal(in_kernel, maps_to_id)
    # surjectivity: the projection hits every coset, so every generator
    # of Inn(L/N) is the image of a generator of Inn(L)
    assert set(proj.tolist()) == set(range(m))
    # homomorphism spot check on composed generators
    g = t_l[1 % L.order]
    h = t_l[(L.order - 1)]
    lhs = proj[g[h]]
    rhs = t_q[int(proj[1 % L.order])][t_q[int(proj[L.order - 1])][proj]]
    assert np.array_equal(lhs, rhs)
    return table


@criterion("AC-9")
def test_ac9_induced_inner_maps(pool):
    for entry in pool:
        L = entry.table
        inn_l = group_order(assoc_group(L, "INN"))
        for N in all_normal_subloops(L):
            table = _induced_inner_map_checks(L, N)
            inn_q = group_order(assoc_group(table, "INN"))
            assert inn_l % inn_q == 0, (entry.tag, N.elements)


def _shift_theta(gamma, a):
    A = gamma.A
    theta = tuple(
        tuple(
            A.add(
                A.sub(A.sub(gamma.theta[x][y], gamma.phi[x][y](a)), gamma.psi[x][y](a)),
                a,
            )
            for y in range(gamma.F.order)
        )
        for x in range(gamma.F.order)
    )
    return Cocycle(gamma.A, gamma.F, gamma.phi, gamma.psi, theta)


@criterion("AC-10")
def test_ac10_round_trips(pool):
    from loopkit.extensions import _raw_extension_table

    iso_samples = 0
    for entry in pool:
        if entry.cocycle is None:
            continue
        gamma0 = entry.cocycle
        q = entry.table
        na = gamma0.A.order
        # build then decompose, with an explicitly verified witness
        fiber = Subloop(q, tuple(range(na)))
        gamma, reps = decompose_extension(q, fiber)
        rebuilt = build_extension(gamma)
        elems = fiber.elements
        f = np.asarray(
            [q.mul_at(elems[i % na], reps[i // na]) for i in range(q.order)],
            dtype=np.int64,
        )
        assert len(set(f.tolist())) == q.order
        assert np.array_equal(f[rebuilt.mul], q.mul[np.ix_(f, f)])
        if iso_samples < 25:
            assert is_isomorphic(rebuilt, q) is not None
            iso_samples += 1
        # normalization round trip through a shifted neutral
        if na > 1:
            a = 1 if gamma0.A.zero != 1 else 0
            shifted = _shift_theta(gamma0, a)
            assert lemma31_analyze(shifted) == (a, gamma0.F.neutral)
            fixed = normalize_cocycle(shifted, a)
            raw = _raw_extension_table(shifted)
            built = build_extension(fixed)
            shift_map = np.asarray(
                [
                    pair_index(gamma0, gamma0.A.sub(b, a), y)
                    for y in range(gamma0.F.order)
                    for b in range(na)
                ],
                dtype=np.int64,
            )
            assert np.array_equal(shift_map[raw], built.mul[np.ix_(shift_map, shift_map)])
        # the closed-form divisions agree with the table on every cell
        ld, rd = division_closed_forms(gamma0)
        assert np.array_equal(ld, q.ldiv)
        assert np.array_equal(rd, q.rdiv)
