"""The commutator of normal subloops and the solvability/nilpotence hierarchy.

The commutator [A,B] is the smallest normal subloop containing all
deviations W_u(a) / W_v(a), where W runs over the five tot-inner word
families T, U, L, R, M, a over A, and each substituted argument pair
(u, v) satisfies u/v in B (so u ranges over B*v for every v).  The
inner-only word family {T, L, R} is available as a diagnostic but
nothing is asserted about it.

Abelianess of a normal subloop has three independent routes here:

  A1  the commutator [A,A] is trivial,
  A3  a syntactic scan (restriction automorphisms plus associator and
      commutator identities),
  A4  extraction of a cocycle presenting Q as an extension of A by Q/A.

Centrality gets the analogous four routes C1, C3, C3', C4.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .core import LoopTable
from .errors import NotNormal
from .extensions import extract_cocycle
from .multgrp import assoc_group
from .perm import group_order, nilpotency_class_group, solvable_class
from .structure import (
    Subloop,
    all_normal_subloops,
    center_subloop,
    cosets,
    direct_decomposition,
    is_normal,
    quotient,
)
from .util import INFINITE, Infinite, fmt_class, is_finite, is_prime_power, parse_class

TOT_INNER_WORDS = ("T", "U", "L", "R", "M")
INNER_WORDS = ("T", "L", "R")

_CHUNK_LIMIT = 1 << 22

_log = logging.getLogger(__name__)


def _one_var_values(Q: LoopTable, word: str, a: int) -> np.ndarray:
    """W_x(a) for all x, as a length-n vector."""
    mul, ldiv, rdiv = Q.mul, Q.ldiv, Q.rdiv
    xs = np.arange(Q.order)
    if word == "T":
        return rdiv[mul[:, a], xs]
    if word == "U":
        return rdiv[ldiv[a, :], xs]
    raise ValueError(word)


def _two_var_values(Q: LoopTable, word: str, a: int) -> np.ndarray:
    """W_{x,y}(a) for all (x, y), as an n x n matrix."""
    mul, ldiv, rdiv = Q.mul, Q.ldiv, Q.rdiv
    if word == "L":
        return ldiv[mul, mul[:, mul[:, a]]]
    if word == "R":
        return rdiv[mul[mul[a], :].T, mul.T]
    if word == "M":
        return rdiv[ldiv.T, ldiv[ldiv[a], :].T]
    raise ValueError(word)


def commutator_generators(Q: LoopTable, A: Subloop, B: Subloop, words=TOT_INNER_WORDS):
    """The word deviations whose normal closure is the commutator."""
    mul, rdiv = Q.mul, Q.rdiv
    n = Q.order
    bidx = np.fromiter(B.elements, dtype=np.int64)
    U = mul[np.ix_(bidx, np.arange(n))]  # U[b, v] = b*v, the set {u : u/v in B}
    found: set[int] = set()
    for a in A.elements:
        for word in words:
            if word in ("T", "U"):
                vals = _one_var_values(Q, word, a)
                devs = rdiv[vals[U], vals[np.newaxis, :]]
                found.update(np.unique(devs).tolist())
            else:
                vm = _two_var_values(Q, word, a)
                if (len(bidx) * n) ** 2 <= _CHUNK_LIMIT:
                    lhs = vm[U[:, :, None, None], U[None, None, :, :]]
                    devs = rdiv[lhs, vm[None, :, None, :]]
                    found.update(np.unique(devs).tolist())
                else:
                    for row in U:
                        lhs = vm[row[:, None, None], U[None, :, :]]
                        devs = rdiv[lhs, vm[:, None, :]]
                        found.update(np.unique(devs).tolist())
    found.discard(Q.neutral)
    return found


def commutator_subloop(Q: LoopTable, A: Subloop, B: Subloop, words=TOT_INNER_WORDS) -> Subloop:
    """[A, B]: normal closure of the word deviations under B-congruent
    substitutions applied to elements of A."""
    if not is_normal(Q, A):
        raise NotNormal("first argument is not normal")
    if not is_normal(Q, B):
        raise NotNormal("second argument is not normal")
    from .structure import normal_closure

    gens = commutator_generators(Q, A, B, words)
    if not gens:
        return Subloop(Q, (Q.neutral,))
    escaped = gens - set(A.elements)
    if escaped:
        # containment in the first argument is observed, not guaranteed
        _log.info("commutator deviations leave A at %s", sorted(escaped))
    return normal_closure(Q, gens)


# -- abelianess ----------------------------------------------------------------


def _whole(Q: LoopTable) -> Subloop:
    return Subloop(Q, tuple(range(Q.order)))


def is_abelian_in_A1(Q: LoopTable, A: Subloop) -> bool:
    return commutator_subloop(Q, A, A).is_trivial()


def _r_block(Q: LoopTable, x: int) -> np.ndarray:
    # R_{x,y}(z) = ((z y) x) / (y x), rows indexed by y
    mul = Q.mul
    return Q.rdiv[mul[mul.T, x], mul[:, x][:, None]]


def _l_block(Q: LoopTable, x: int) -> np.ndarray:
    # L_{x,y}(z) = (xy) \ (x (y z)), rows indexed by y
    mul = Q.mul
    return Q.ldiv[mul[x][:, None], mul[x][mul]]


def _t_block(Q: LoopTable) -> np.ndarray:
    # T_x(z) = (x z) / x, rows indexed by x
    return Q.rdiv[Q.mul, np.arange(Q.order)[:, None]]


def _restrictions_automorphic(Q: LoopTable, A: Subloop, block: np.ndarray) -> bool:
    """Each row of block, restricted to A, is an automorphism of A's table."""
    idx = np.fromiter(A.elements, dtype=np.int64)
    member = np.zeros(Q.order, dtype=bool)
    member[idx] = True
    imgs = block[:, idx]
    if not member[imgs].all():
        return False
    mul = Q.mul
    sub_products = mul[np.ix_(idx, idx)]
    for row, img in zip(block, imgs):
        if not np.array_equal(row[sub_products], mul[np.ix_(img, img)]):
            return False
    return True


def a3_subconditions(Q: LoopTable, A: Subloop) -> dict[str, bool]:
    """The six syntactic sub-conditions of the abelianess characterization.

    i    inner generators restrict to automorphisms of A
    ii   [a,b] = 1
    iii  [a,b,x] = 1
    iv   [a,x,b] = 1
    v    [x,a,b] = 1
    vi   [a,x,u] = [a,x,v] whenever u/v in A
    """
    mul = Q.mul
    n = Q.order
    idx = np.fromiter(A.elements, dtype=np.int64)
    cond_i = _restrictions_automorphic(Q, A, _t_block(Q)) and all(
        _restrictions_automorphic(Q, A, _l_block(Q, x))
        and _restrictions_automorphic(Q, A, _r_block(Q, x))
        for x in range(n)
    )
    sub = mul[np.ix_(idx, idx)]
    cond_ii = bool(np.array_equal(sub, sub.T))
    BA = mul[idx]  # BA[i, x] = a_i * x
    cond_iii = bool(
        np.array_equal(mul[sub], mul[idx[:, None, None], BA[None, :, :]])
    )
    cond_iv = bool(
        np.array_equal(mul[BA][:, :, idx], BA[:, mul[:, idx]])
    )
    cond_v = bool(
        np.array_equal(mul[mul[:, idx]][:, :, idx], mul[:, sub])
    )
    cond_vi = True
    parts = cosets(Q, A)
    rdiv = Q.rdiv
    for a in A.elements:
        W = rdiv[rdiv[mul[mul[a], :], mul], a]  # W[x, u] = [a, x, u]
        for coset in parts:
            cols = np.fromiter(coset, dtype=np.int64)
            if not (W[:, cols] == W[:, cols[:1]]).all():
                cond_vi = False
                break
        if not cond_vi:
            break
    return {
        "i": cond_i,
        "ii": cond_ii,
        "iii": cond_iii,
        "iv": cond_iv,
        "v": cond_v,
        "vi": cond_vi,
    }


def is_abelian_in_A3(Q: LoopTable, A: Subloop) -> bool:
    if not is_normal(Q, A):
        raise NotNormal("subloop is not normal")
    return all(a3_subconditions(Q, A).values())


def is_abelian_in_A4(Q: LoopTable, A: Subloop):
    """The extracted cocycle presenting Q over the fiber A, or None.

    This route is purely structural: it never consults the syntactic
    conditions or the commutator, so the three characterizations stay
    independently testable.
    """
    if not is_normal(Q, A):
        raise NotNormal("subloop is not normal")
    result = extract_cocycle(Q, A)
    return None if result is None else result[0]


# -- centrality ----------------------------------------------------------------


def is_central_in(Q: LoopTable, A: Subloop, mode: str) -> bool:
    if not is_normal(Q, A):
        raise NotNormal("subloop is not normal")
    mul = Q.mul
    n = Q.order
    idx = np.fromiter(A.elements, dtype=np.int64)
    if mode == "C1":
        return commutator_subloop(Q, A, _whole(Q)).is_trivial()
    if mode == "C3":
        if not np.array_equal(_t_block(Q)[:, idx], np.broadcast_to(idx, (n, len(idx)))):
            return False
        for x in range(n):
            target = np.broadcast_to(idx, (n, len(idx)))
            if not np.array_equal(_l_block(Q, x)[:, idx], target):
                return False
            if not np.array_equal(_r_block(Q, x)[:, idx], target):
                return False
        return True
    if mode == "C3prime":
        if not np.array_equal(mul[idx, :], mul[:, idx].T):
            return False
        BA = mul[idx]
        if not np.array_equal(mul[BA], BA[:, mul]):  # (a x) y = a (x y)
            return False
        rhs = mul[np.arange(n)[:, None, None], BA[None, :, :]]
        if not np.array_equal(mul[mul[:, idx]], rhs):  # (x a) y = x (a y)
            return False
        if not np.array_equal(mul[mul][:, :, idx], mul[:, mul[:, idx]]):  # (x y) a = x (y a)
            return False
        return True
    if mode == "C4":
        result = extract_cocycle(Q, A)
        return result is not None and result[0].is_central()
    raise ValueError(f"unknown centrality mode {mode!r}")


# -- series and classes -----------------------------------------------------------


def congruence_derived_series(Q: LoopTable):
    """Iterated commutator with the whole loop as ambient: D0 = Q,
    D_{i+1} = [D_i, D_i].  Returns (series, class or INFINITE)."""
    series = [_whole(Q)]
    while True:
        current = series[-1]
        if current.is_trivial():
            return series, len(series) - 1
        nxt = commutator_subloop(Q, current, current)
        if nxt.elements == current.elements:
            return series, INFINITE
        if not set(nxt.elements) <= set(current.elements):
            raise AssertionError("commutator series failed to descend")
        series.append(nxt)


def _least_commutative_group_kernel(Q: LoopTable) -> Subloop:
    """Least normal subloop with a commutative-group quotient."""
    candidates = []
    for N in all_normal_subloops(Q):
        table, _ = quotient(Q, N)
        if table.is_commutative and table.is_associative:
            candidates.append(N)
    candidates.sort(key=lambda s: (s.size, s.elements))
    least = candidates[0]
    least_set = set(least.elements)
    if any(not least_set <= set(c.elements) for c in candidates):
        raise AssertionError("derived subloop is not the least candidate")
    return least


def classical_derived_series(Q: LoopTable):
    """Derived-subloop iteration, each step inside the previous term.

    Produces a subnormal series with commutative-group factors.  Whether
    this coincides with the subnormal-series definition of classical
    solvability for every finite loop is not settled; the class reported
    here is the derived-subloop length.
    """
    series = [_whole(Q)]
    while True:
        current = series[-1]
        if current.is_trivial():
            return series, len(series) - 1
        table = current.induced_table()
        derived = _least_commutative_group_kernel(table)
        lifted = tuple(current.elements[i] for i in derived.elements)
        if lifted == current.elements:
            return series, INFINITE
        series.append(Subloop(Q, lifted))


def upper_central_series(Q: LoopTable):
    """Z0 = 1, Z_{i+1} = preimage of the center of Q/Z_i."""
    series = [Subloop(Q, (Q.neutral,))]
    while True:
        Z = series[-1]
        if Z.is_whole():
            return series, len(series) - 1
        table, proj = quotient(Q, Z)
        C = center_subloop(table)
        if C.is_trivial():
            return series, INFINITE
        cset = set(C.elements)
        series.append(
            Subloop(Q, tuple(x for x in range(Q.order) if proj[x] in cset))
        )


def nilpotency_class_loop(Q: LoopTable) -> int | Infinite:
    return upper_central_series(Q)[1]


def is_supernilpotent(Q: LoopTable) -> bool:
    """Nilpotence of the multiplication group (the finite characterization)."""
    return is_finite(nilpotency_class_group(assoc_group(Q, "MLT")))


def supernilpotent_crosscheck(Q: LoopTable) -> bool:
    """Independent route: a full direct decomposition into centrally
    nilpotent factors of prime power order."""
    n = Q.order
    if n == 1:
        return True
    if is_prime_power(n):
        return is_finite(nilpotency_class_loop(Q))
    for A, B in direct_decomposition(Q):
        if supernilpotent_crosscheck(A.induced_table()) and supernilpotent_crosscheck(
            B.induced_table()
        ):
            return True
    return False


# -- the aggregate report -----------------------------------------------------------


@dataclass(frozen=True)
class HierarchyReport:
    order: int
    commutative: bool
    associative: bool
    center_size: int
    nilpotency_class: int | Infinite
    congruence_solvability_class: int | Infinite
    classical_solvability_class: int | Infinite
    supernilpotent: bool
    mlt_order: int
    mlt_solvable_class: int | Infinite
    mlt_nilpotency_class: int | Infinite
    inn_order: int
    inn_solvable_class: int | Infinite

    def check(self):
        """The vertical implications any report must satisfy."""
        if is_finite(self.nilpotency_class) and not is_finite(
            self.congruence_solvability_class
        ):
            raise AssertionError("nilpotent but not congruence solvable")
        if is_finite(self.congruence_solvability_class) and not is_finite(
            self.classical_solvability_class
        ):
            raise AssertionError("congruence solvable but not classically solvable")
        if self.supernilpotent and not is_finite(self.nilpotency_class):
            raise AssertionError("supernilpotent but not nilpotent")

    def to_lines(self) -> str:
        parts = []
        for f in sorted(fields(self), key=lambda f: f.name):
            v = getattr(self, f.name)
            if isinstance(v, bool):
                text = "true" if v else "false"
            else:
                text = fmt_class(v)
            parts.append(f"{f.name}: {text}")
        return "\n".join(parts) + "\n"

    @classmethod
    def from_lines(cls, text: str) -> "HierarchyReport":
        values = {}
        for ln in text.splitlines():
            if not ln.strip():
                continue
            key, _, raw = ln.partition(":")
            values[key.strip()] = raw.strip()
        kwargs = {}
        for f in fields(cls):
            raw = values[f.name]
            if raw in ("true", "false"):
                kwargs[f.name] = raw == "true"
            else:
                kwargs[f.name] = parse_class(raw)
        return cls(**kwargs)

    def field_values(self) -> dict[str, str]:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = ("true" if v else "false") if isinstance(v, bool) else fmt_class(v)
        return out


@lru_cache(maxsize=None)
def hierarchy_report(Q: LoopTable) -> HierarchyReport:
    mlt = assoc_group(Q, "MLT")
    inn = assoc_group(Q, "INN")
    report = HierarchyReport(
        order=Q.order,
        commutative=Q.is_commutative,
        associative=Q.is_associative,
        center_size=center_subloop(Q).size,
        nilpotency_class=nilpotency_class_loop(Q),
        congruence_solvability_class=congruence_derived_series(Q)[1],
        classical_solvability_class=classical_derived_series(Q)[1],
        supernilpotent=is_supernilpotent(Q),
        mlt_order=group_order(mlt),
        mlt_solvable_class=solvable_class(mlt),
        mlt_nilpotency_class=nilpotency_class_group(mlt),
        inn_order=group_order(inn),
        inn_solvable_class=solvable_class(inn),
    )
    report.check()
    return report
