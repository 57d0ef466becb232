"""Finite loops as Latin-square Cayley tables.

Elements are 0-based indices into the table.  The neutral element is
detected, not required to be index 0; canonicalize() relabels it to 0 and
minimizes the table for catalog storage.  All tables are immutable after
construction and every operation here is a pure function.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded, Malformed, NoNeutral, NotAbelianGroup, NotLatin
from .perm import Permutation
from .util import hash_tokens

ORDER_CAP = 512

CANONICAL_NODE_BUDGET = 5_000_000


class LoopTable:
    """A finite loop: an n x n Latin square with a two-sided neutral element."""

    __slots__ = ("order", "rows", "neutral", "mul", "ldiv", "rdiv", "_hash", "_flags")

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise Malformed("empty table")
        if n > ORDER_CAP:
            raise CapExceeded(f"order {n} exceeds cap {ORDER_CAP}")
        if any(len(row) != n for row in rows):
            raise Malformed("table is not square")
        if any(v < 0 or v >= n for row in rows for v in row):
            raise Malformed("entry out of range")
        mul = np.asarray(rows, dtype=np.int64)
        full = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(mul[i]), full):
                raise NotLatin(f"row {i} repeats a value")
            if not np.array_equal(np.sort(mul[:, i]), full):
                raise NotLatin(f"column {i} repeats a value")
        neutral = -1
        for e in range(n):
            if np.array_equal(mul[e], full) and np.array_equal(mul[:, e], full):
                neutral = e
                break
        if neutral < 0:
            raise NoNeutral("no two-sided neutral element")
        ldiv = np.argsort(mul, axis=1)
        rdiv = np.argsort(mul, axis=0)
        for a in (mul, ldiv, rdiv):
            a.setflags(write=False)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "neutral", neutral)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "ldiv", ldiv)
        object.__setattr__(self, "rdiv", rdiv)
        object.__setattr__(self, "_flags", None)
        object.__setattr__(self, "_hash", hash((n, rows)))

    # -- arithmetic -------------------------------------------------------

    def check_element(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise ValueError(f"element {x} out of range 0..{self.order - 1}")
        return x

    def mul_at(self, x: int, y: int) -> int:
        return int(self.mul[self.check_element(x), self.check_element(y)])

    def ldiv_at(self, x: int, y: int) -> int:
        """The unique z with x * z = y."""
        return int(self.ldiv[self.check_element(x), self.check_element(y)])

    def rdiv_at(self, x: int, y: int) -> int:
        """The unique z with z * y = x."""
        return int(self.rdiv[self.check_element(x), self.check_element(y)])

    # -- translations -----------------------------------------------------

    def left_translation(self, x: int) -> Permutation:
        """y -> x * y (the x-th row)."""
        return Permutation._wrap(self.rows[self.check_element(x)])

    def right_translation(self, x: int) -> Permutation:
        """y -> y * x (the x-th column)."""
        self.check_element(x)
        return Permutation._wrap(tuple(int(v) for v in self.mul[:, x]))

    def middle_translation(self, x: int) -> Permutation:
        """y -> y \\ x."""
        self.check_element(x)
        return Permutation._wrap(tuple(int(v) for v in self.ldiv[:, x]))

    # -- structure flags ----------------------------------------------------

    def _compute_flags(self):
        mul = self.mul
        commutative = bool(np.array_equal(mul, mul.T))
        associative = True
        for x in range(self.order):
            if not np.array_equal(mul[mul[x]], mul[x][mul]):
                associative = False
                break
        self._flags = (commutative, associative)

    @property
    def is_commutative(self) -> bool:
        if self._flags is None:
            self._compute_flags()
        return self._flags[0]

    @property
    def is_associative(self) -> bool:
        if self._flags is None:
            self._compute_flags()
        return self._flags[1]

    # -- plumbing -----------------------------------------------------------

    def subtable(self, elements) -> "LoopTable":
        """The induced table on a multiplication-closed subset."""
        elements = sorted(elements)
        pos = {e: i for i, e in enumerate(elements)}
        try:
            rows = [[pos[int(self.mul[a, b])] for b in elements] for a in elements]
        except KeyError as exc:
            raise Malformed(f"subset not closed under multiplication: {exc}") from None
        return LoopTable(rows)

    def relabel(self, images) -> "LoopTable":
        """Apply the bijection x -> images[x] to the table."""
        n = self.order
        images = list(images)
        if sorted(images) != list(range(n)):
            raise Malformed("relabeling is not a bijection")
        sigma = np.asarray(images, dtype=np.int64)
        inv = np.argsort(sigma)
        return LoopTable(sigma[self.mul[np.ix_(inv, inv)]])

    def __eq__(self, other):
        return isinstance(other, LoopTable) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __setattr__(self, name, value):
        if name == "_flags":
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("LoopTable is immutable")

    def __repr__(self):
        return f"LoopTable(order={self.order}, neutral={self.neutral})"


# -- element words ---------------------------------------------------------


def op(Q: LoopTable, kind: str, x: int, y: int) -> int:
    """Dispatch mul / ldiv / rdiv by name."""
    if kind == "mul":
        return Q.mul_at(x, y)
    if kind == "ldiv":
        return Q.ldiv_at(x, y)
    if kind == "rdiv":
        return Q.rdiv_at(x, y)
    raise ValueError(f"unknown operation kind {kind!r}")


def translation(Q: LoopTable, kind: str, x: int) -> Permutation:
    if kind == "L":
        return Q.left_translation(x)
    if kind == "R":
        return Q.right_translation(x)
    if kind == "M":
        return Q.middle_translation(x)
    raise ValueError(f"unknown translation kind {kind!r}")


def commutator_element(Q: LoopTable, y: int, x: int) -> int:
    """((y*x)/y)/x; neutral exactly when x and y commute."""
    return Q.rdiv_at(Q.rdiv_at(Q.mul_at(y, x), y), x)


def associator_element(Q: LoopTable, x: int, y: int, z: int) -> int:
    """(((x*y)*z)/(y*z))/x; neutral exactly when (xy)z = x(yz)."""
    return Q.rdiv_at(Q.rdiv_at(Q.mul_at(Q.mul_at(x, y), z), Q.mul_at(y, z)), x)


# -- file format -------------------------------------------------------------


def parse_table(text: str) -> LoopTable:
    """Parse the Cayley-table format: order line, then n rows of n indices.

    Lines starting with '#' are comments and skipped.
    """
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise Malformed("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise Malformed(f"bad order line {lines[0]!r}") from None
    if n <= 0:
        raise Malformed(f"non-positive order {n}")
    if n > ORDER_CAP:
        raise CapExceeded(f"order {n} exceeds cap {ORDER_CAP}")
    if len(lines) != n + 1:
        raise Malformed(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise Malformed(f"bad token in row {ln!r}") from None
        if len(row) != n:
            raise Malformed(f"row has {len(row)} entries, expected {n}")
        if any(v < 0 or v >= n for v in row):
            raise Malformed("entry out of range")
        rows.append(row)
    return LoopTable(rows)


def format_table(Q: LoopTable) -> str:
    lines = [str(Q.order)]
    lines.extend(" ".join(str(v) for v in row) for row in Q.rows)
    return "\n".join(lines) + "\n"


# -- constructions ------------------------------------------------------------


def direct_product(Q1: LoopTable, Q2: LoopTable) -> LoopTable:
    """Componentwise table on pairs, encoded as x1 + |Q1| * x2."""
    n1, n2 = Q1.order, Q2.order
    if n1 * n2 > ORDER_CAP:
        raise CapExceeded(f"product order {n1 * n2} exceeds cap {ORDER_CAP}")
    m1, m2 = Q1.mul, Q2.mul
    table = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
    for x2 in range(n2):
        for y2 in range(n2):
            block = m1 + n1 * m2[x2, y2]
            table[x2 * n1 : (x2 + 1) * n1, y2 * n1 : (y2 + 1) * n1] = block
    return LoopTable(table)


def g_oplus(G: LoopTable, oplus) -> LoopTable:
    """Loop on G x Z2: pairs multiply additively unless both halves are odd,
    in which case the first coordinates combine through the supplied Latin
    square.  Pair (x, a) is encoded as x + n*a."""
    n = G.order
    if not (G.is_commutative and G.is_associative):
        raise NotAbelianGroup("base table must be a commutative group")
    op_arr = np.asarray([[int(v) for v in row] for row in oplus], dtype=np.int64)
    if op_arr.shape != (n, n):
        raise Malformed("oplus table has wrong shape")
    if op_arr.min() < 0 or op_arr.max() >= n:
        raise Malformed("oplus entry out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(op_arr[i]), full) or not np.array_equal(
            np.sort(op_arr[:, i]), full
        ):
            raise NotLatin("oplus is not a Latin square")
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    table[:n, :n] = G.mul
    table[:n, n:] = G.mul + n
    table[n:, :n] = G.mul + n
    table[n:, n:] = op_arr
    return LoopTable(table)


# -- isomorphism --------------------------------------------------------------


def _profiles(Q: LoopTable):
    """Per-element relabeling-invariant profile used for pruning."""
    out = []
    for x in range(Q.order):
        lo = Q.left_translation(x).order()
        ro = Q.right_translation(x).order()
        sq = 1 if Q.mul_at(x, x) == x else 0
        comm = int(np.count_nonzero(Q.mul[x] == Q.mul[:, x]))
        out.append((lo, ro, sq, comm))
    return out


def is_isomorphic(Q1: LoopTable, Q2: LoopTable):
    """A table isomorphism Q1 -> Q2 as an image list, or None.

    Deterministic: depth-first over positions in index order trying images
    in increasing order, so the returned bijection has the
    lexicographically least image sequence among all isomorphisms.
    """
    if Q1.order != Q2.order:
        return None
    if (Q1.is_commutative, Q1.is_associative) != (Q2.is_commutative, Q2.is_associative):
        return None
    n = Q1.order
    prof1, prof2 = _profiles(Q1), _profiles(Q2)
    if sorted(prof1) != sorted(prof2):
        return None
    candidates = [
        [y for y in range(n) if prof2[y] == prof1[x]] for x in range(n)
    ]
    if prof2[Q2.neutral] != prof1[Q1.neutral]:
        return None
    mul1, mul2 = Q1.rows, Q2.rows
    f = [-1] * n
    used = [False] * n
    f[Q1.neutral] = Q2.neutral
    used[Q2.neutral] = True

    def consistent(x: int) -> bool:
        fx = f[x]
        for a in range(n):
            fa = f[a]
            if fa < 0:
                continue
            v = f[mul1[a][x]]
            if v >= 0 and mul2[fa][fx] != v:
                return False
            v = f[mul1[x][a]]
            if v >= 0 and mul2[fx][fa] != v:
                return False
        return True

    def extend(x: int) -> bool:
        while x < n and f[x] >= 0:
            x += 1
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and extend(x + 1):
                return True
            f[x] = -1
            used[y] = False
        return False

    if Q1.neutral < n and not consistent(Q1.neutral):
        return None
    return list(f) if extend(0) else None


# -- canonical form ------------------------------------------------------------


def canonicalize(Q: LoopTable) -> LoopTable:
    """The least relabeling of Q sending neutral to 0, compared row-major.

    Candidate relabelings place the neutral at 0, one branched element at
    position 1, branched elements at the remaining column positions of
    row 1, and give every element surfacing as a row-1 value the least
    position still free; row 1 then fixes the whole bijection, so the
    rest of the table is forced.  The rule is structural, so isomorphic
    tables produce identical results and the hashed fingerprint is
    relabeling-invariant.  The walk is budgeted; pathological highly
    symmetric tables beyond order ~16 raise CapExceeded.
    """
    n = Q.order
    if n == 1:
        return LoopTable([[0]])
    rows = Q.rows
    best: list[int] | None = None
    cells = [CANONICAL_NODE_BUDGET]

    def spend():
        cells[0] -= 1
        if cells[0] < 0:
            raise CapExceeded("canonical form search budget exceeded")

    def search(r1: int):
        nonlocal best
        sigma = [-1] * n
        rho = [-1] * n
        sigma[Q.neutral] = 0
        rho[0] = Q.neutral
        sigma[r1] = 1
        rho[1] = r1
        row1 = rows[r1]
        prefix: list[int] = []

        def place(element: int):
            p = next(i for i in range(n) if rho[i] < 0)
            sigma[element] = p
            rho[p] = element

        def unplace(element: int):
            rho[sigma[element]] = -1
            sigma[element] = -1

        def scan(j: int, tight: bool):
            spend()
            if j == n:
                finish(tight)
                return
            pos = len(prefix)
            h = rho[j]
            if h >= 0:
                v = row1[h]
                fresh = sigma[v] < 0
                if fresh:
                    place(v)
                value = sigma[v]
                if best is None or not tight or value <= best[pos]:
                    still = tight and best is not None and value == best[pos]
                    prefix.append(value)
                    scan(j + 1, still)
                    prefix.pop()
                if fresh:
                    unplace(v)
                return
            options = []
            for cand in range(n):
                if sigma[cand] >= 0:
                    continue
                rho[j] = cand
                sigma[cand] = j
                v = row1[cand]
                if sigma[v] >= 0:
                    value = sigma[v]
                else:
                    value = next(i for i in range(n) if rho[i] < 0)
                options.append((value, cand))
                rho[j] = -1
                sigma[cand] = -1
            options.sort()
            for value, cand in options:
                if best is not None and tight and value > best[pos]:
                    break
                rho[j] = cand
                sigma[cand] = j
                v = row1[cand]
                fresh = sigma[v] < 0
                if fresh:
                    place(v)
                still = tight and best is not None and value == best[pos]
                prefix.append(value)
                scan(j + 1, still)
                prefix.pop()
                if fresh:
                    unplace(v)
                rho[j] = -1
                sigma[cand] = -1

        def finish(tight: bool):
            nonlocal best
            out = list(prefix)
            pos = len(out)
            for i in range(2, n):
                row = rows[rho[i]]
                for j in range(n):
                    spend()
                    value = sigma[row[rho[j]]]
                    if tight and best is not None:
                        if value > best[pos]:
                            return
                        if value < best[pos]:
                            tight = False
                    out.append(value)
                    pos += 1
            if best is None or out < best:
                best = out

        scan(0, best is not None)

    for r1 in range(n):
        if r1 != Q.neutral:
            search(r1)
    table = [list(range(n))]
    for i in range(n - 1):
        table.append(best[i * n : (i + 1) * n])
    return LoopTable(table)


def fingerprint(Q: LoopTable) -> int:
    """64-bit relabeling-invariant fingerprint: hash of the canonical table."""
    canon = canonicalize(Q)
    tokens = [canon.order]
    for row in canon.rows:
        tokens.extend(row)
    return hash_tokens(tokens)
