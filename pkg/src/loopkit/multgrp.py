"""Multiplication and inner mapping groups of a loop.

The inner generator families are the standard words

    T_x = R_x^-1 L_x          U_x = R_x^-1 M_x
    L_{x,y} = L_{xy}^-1 L_x L_y
    R_{x,y} = R_{yx}^-1 R_x R_y
    M_{x,y} = M_{y\\x}^-1 M_x M_y

and the groups are generated from these explicit word families over all
argument tuples (not by a stabilizer computation inside the
multiplication group, so the stabilizer identity |MLT| = n * |INN| stays
a genuine cross-check).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import LoopTable
from .errors import ArityMismatch
from .perm import PermGroup, Permutation

INNER_ARITY = {"T": 1, "U": 1, "L": 2, "R": 2, "M": 2}


def inner_generator(Q: LoopTable, name: str, args) -> Permutation:
    """One generator of the (tot-)inner family; always fixes the neutral."""
    if name not in INNER_ARITY:
        raise ArityMismatch(f"unknown inner generator {name!r}")
    args = tuple(args)
    if len(args) != INNER_ARITY[name]:
        raise ArityMismatch(
            f"{name} takes {INNER_ARITY[name]} argument(s), got {len(args)}"
        )
    for a in args:
        Q.check_element(a)
    mul, ldiv, rdiv = Q.mul, Q.ldiv, Q.rdiv
    z = np.arange(Q.order)
    if name == "T":
        (x,) = args
        images = rdiv[mul[x, z], x]
    elif name == "U":
        (x,) = args
        images = rdiv[ldiv[z, x], x]
    elif name == "L":
        x, y = args
        images = ldiv[mul[x, y], mul[x, mul[y, z]]]
    elif name == "R":
        x, y = args
        images = rdiv[mul[mul[z, y], x], mul[y, x]]
    else:  # M
        x, y = args
        images = rdiv[ldiv[y, x], ldiv[ldiv[z, y], x]]
    return Permutation._wrap(tuple(int(v) for v in images))


def _translation_rows(Q: LoopTable, kinds) -> list[tuple]:
    rows = []
    for kind in kinds:
        if kind == "L":
            rows.extend(Q.rows)
        elif kind == "R":
            rows.extend(tuple(int(v) for v in Q.mul[:, x]) for x in range(Q.order))
        else:
            rows.extend(tuple(int(v) for v in Q.ldiv[:, x]) for x in range(Q.order))
    return rows


def inner_generator_family(Q: LoopTable, names) -> list[Permutation]:
    """All generators of the given families over all argument tuples."""
    out = []
    n = Q.order
    for name in names:
        if INNER_ARITY[name] == 1:
            out.extend(inner_generator(Q, name, (x,)) for x in range(n))
        else:
            out.extend(
                inner_generator(Q, name, (x, y))
                for x in range(n)
                for y in range(n)
            )
    return out


@lru_cache(maxsize=None)
def assoc_group(Q: LoopTable, which: str) -> PermGroup:
    """MLT, INN, TMLT or TINN of the loop as a permutation group."""
    n = Q.order
    if which == "MLT":
        gens = [Permutation._wrap(r) for r in _translation_rows(Q, "LR")]
    elif which == "TMLT":
        gens = [Permutation._wrap(r) for r in _translation_rows(Q, "LRM")]
    elif which == "INN":
        gens = inner_generator_family(Q, ("T", "L", "R"))
    elif which == "TINN":
        gens = inner_generator_family(Q, ("T", "U", "L", "R", "M"))
    else:
        raise ValueError(f"unknown associated group {which!r}")
    return PermGroup(n, gens)
