"""Deterministic loop pools used by the verification suite and scripts.

The pool has two halves: every loop of order at most 6 reachable from
exhaustive small-cocycle extension spaces plus the standard group tables,
and a fixed count of seeded random abelian extensions of orders 8..16.
Entries carry a human-readable tag; extension entries keep their cocycle
so round-trip checks can reuse it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import LoopTable
from .extensions import (
    AbelianGroupTable,
    Cocycle,
    build_extension,
    iter_cocycles_exhaustive,
    iter_cocycles_random,
)
from .tables import cyclic, elementary_abelian, klein, small_groups
from .util import SplitMix64

POOL_MASTER_SEED = 0xA11CE


@dataclass(frozen=True)
class PoolEntry:
    tag: str
    table: LoopTable
    cocycle: Cocycle | None = None


def exhaustive_small_extensions() -> list[PoolEntry]:
    """All extensions over the full cocycle spaces with |A|*|F| <= 6."""
    out = []
    spaces = [
        ("Z2byZ2", cyclic(2), cyclic(2)),
        ("Z2byZ3", cyclic(2), cyclic(3)),
        ("Z3byZ2", cyclic(3), cyclic(2)),
    ]
    for tag, a_table, f_table in spaces:
        A = AbelianGroupTable(a_table)
        for i, gamma in enumerate(iter_cocycles_exhaustive(A, f_table)):
            out.append(PoolEntry(f"{tag}#{i}", build_extension(gamma), gamma))
    return out


def group_pool() -> list[PoolEntry]:
    return [PoolEntry(name, table) for name, table in sorted(small_groups().items())]


_RANDOM_SHAPES = [
    ("Z2", lambda: cyclic(2), "Z4", lambda: cyclic(4)),
    ("Z2", lambda: cyclic(2), "K4", klein),
    ("Z2", lambda: cyclic(2), "Z5", lambda: cyclic(5)),
    ("Z2", lambda: cyclic(2), "Z6", lambda: cyclic(6)),
    ("Z2", lambda: cyclic(2), "Z7", lambda: cyclic(7)),
    ("Z2", lambda: cyclic(2), "Z8", lambda: cyclic(8)),
    ("Z3", lambda: cyclic(3), "Z3", lambda: cyclic(3)),
    ("Z3", lambda: cyclic(3), "Z4", lambda: cyclic(4)),
    ("Z3", lambda: cyclic(3), "K4", klein),
    ("Z3", lambda: cyclic(3), "Z5", lambda: cyclic(5)),
    ("Z4", lambda: cyclic(4), "Z2", lambda: cyclic(2)),
    ("Z4", lambda: cyclic(4), "Z3", lambda: cyclic(3)),
    ("Z4", lambda: cyclic(4), "Z4", lambda: cyclic(4)),
    ("K4", klein, "Z2", lambda: cyclic(2)),
    ("K4", klein, "Z3", lambda: cyclic(3)),
    ("K4", klein, "K4", klein),
    ("Z5", lambda: cyclic(5), "Z2", lambda: cyclic(2)),
    ("Z5", lambda: cyclic(5), "Z3", lambda: cyclic(3)),
    ("Z6", lambda: cyclic(6), "Z2", lambda: cyclic(2)),
    ("Z7", lambda: cyclic(7), "Z2", lambda: cyclic(2)),
    ("Z8", lambda: cyclic(8), "Z2", lambda: cyclic(2)),
    ("Z2^3", lambda: elementary_abelian(2, 3), "Z2", lambda: cyclic(2)),
]


def random_extension_pool(count: int = 200, master_seed: int = POOL_MASTER_SEED):
    """Seeded random abelian extensions of orders 8..16."""
    out = []
    seeds = SplitMix64(master_seed)
    i = 0
    while len(out) < count:
        a_tag, a_fn, f_tag, f_fn = _RANDOM_SHAPES[i % len(_RANDOM_SHAPES)]
        i += 1
        A = AbelianGroupTable(a_fn())
        F = f_fn()
        gamma = next(iter(iter_cocycles_random(A, F, seed=seeds.next_u64(), budget=1)))
        out.append(
            PoolEntry(f"{a_tag}by{f_tag}#{len(out)}", build_extension(gamma), gamma)
        )
    return out


def full_pool(random_count: int = 200) -> list[PoolEntry]:
    return group_pool() + exhaustive_small_extensions() + random_extension_pool(random_count)


_CENTRAL_SHAPES = [
    ("Z2", lambda: cyclic(2), "Z2", lambda: cyclic(2)),
    ("Z2", lambda: cyclic(2), "Z3", lambda: cyclic(3)),
    ("Z2", lambda: cyclic(2), "Z4", lambda: cyclic(4)),
    ("Z2", lambda: cyclic(2), "K4", klein),
    ("Z2", lambda: cyclic(2), "Z5", lambda: cyclic(5)),
    ("Z2", lambda: cyclic(2), "Z6", lambda: cyclic(6)),
    ("Z2", lambda: cyclic(2), "Z8", lambda: cyclic(8)),
    ("Z3", lambda: cyclic(3), "Z3", lambda: cyclic(3)),
    ("Z3", lambda: cyclic(3), "Z4", lambda: cyclic(4)),
    ("Z4", lambda: cyclic(4), "Z4", lambda: cyclic(4)),
    ("K4", klein, "Z4", lambda: cyclic(4)),
    ("Z4", lambda: cyclic(4), "Z6", lambda: cyclic(6)),
    ("Z3", lambda: cyclic(3), "Z8", lambda: cyclic(8)),
    ("K4", klein, "Z8", lambda: cyclic(8)),
]


def central_cocycle_pool(count: int = 100, master_seed: int = POOL_MASTER_SEED ^ 0xC0C):
    """Seeded random central cocycles over assorted (A, F), |F| <= 8."""
    out = []
    seeds = SplitMix64(master_seed)
    i = 0
    while len(out) < count:
        a_tag, a_fn, f_tag, f_fn = _CENTRAL_SHAPES[i % len(_CENTRAL_SHAPES)]
        i += 1
        A = AbelianGroupTable(a_fn())
        F = f_fn()
        gamma = next(
            iter(
                iter_cocycles_random(
                    A, F, seed=seeds.next_u64(), budget=1, central=True
                )
            )
        )
        out.append((f"central-{a_tag}by{f_tag}#{len(out)}", gamma))
    return out
