"""Shared fixtures and independent oracles for the loopkit suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from loopkit import all_normal_subloops
from loopkit.pools import (
    central_cocycle_pool,
    exhaustive_small_extensions,
    full_pool,
    group_pool,
    random_extension_pool,
)


@pytest.fixture(scope="session")
def groups():
    return group_pool()


@pytest.fixture(scope="session")
def small_extensions():
    return exhaustive_small_extensions()


@pytest.fixture(scope="session")
def random_extensions():
    return random_extension_pool(200)


@pytest.fixture(scope="session")
def pool(groups, small_extensions, random_extensions):
    return groups + small_extensions + random_extensions


@pytest.fixture(scope="session")
def central_pool():
    return central_cocycle_pool(100)


# -- independent oracles -------------------------------------------------------


def closure_order(generators, cap=200_000) -> int:
    """Breadth-first closure count, independent of the stabilizer chain."""
    if not generators:
        return 1
    degree = len(generators[0])
    gens = [tuple(g) for g in generators]
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[v] for v in g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise RuntimeError("closure oracle cap exceeded")
        frontier = nxt
    return len(seen)


def group_inverse(Q, x: int) -> int:
    return Q.ldiv_at(x, Q.neutral)


def group_commutator_oracle(Q, A, B):
    """Brute-force [A,B] for a group table: subgroup generated by the
    element commutators, closed under conjugation."""
    assert Q.is_associative
    elems = {Q.neutral}
    for a in A.elements:
        for b in B.elements:
            c = Q.mul_at(
                Q.mul_at(Q.mul_at(a, b), group_inverse(Q, a)), group_inverse(Q, b)
            )
            elems.add(c)
    changed = True
    while changed:
        changed = False
        snapshot = list(elems)
        for x in snapshot:
            for y in snapshot:
                v = Q.mul_at(x, y)
                if v not in elems:
                    elems.add(v)
                    changed = True
        for g in range(Q.order):
            gi = group_inverse(Q, g)
            for x in snapshot:
                v = Q.mul_at(Q.mul_at(g, x), gi)
                if v not in elems:
                    elems.add(v)
                    changed = True
    return tuple(sorted(elems))


def group_derived_length(Q) -> int | None:
    """Derived length via element-level closure; None when non-solvable."""
    from loopkit import Subloop

    current = tuple(range(Q.order))
    length = 0
    while len(current) > 1:
        sub = Subloop(Q, current)
        nxt = group_commutator_oracle(Q, sub, sub)
        if nxt == current:
            return None
        current = nxt
        length += 1
    return length


def group_nilpotency_class(Q) -> int | None:
    """Lower central series length via element closure; None if it stalls."""
    from loopkit import Subloop

    whole = Subloop(Q, tuple(range(Q.order)))
    current = tuple(range(Q.order))
    length = 0
    while len(current) > 1:
        nxt = group_commutator_oracle(Q, whole, Subloop(Q, current))
        if nxt == current:
            return None
        current = nxt
        length += 1
    return length


def normal_subloop_pairs(Q):
    subs = all_normal_subloops(Q)
    return [(A, B) for A in subs for B in subs]
