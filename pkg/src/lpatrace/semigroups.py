"""Finite semigroups with zero, given by Cayley tables.

Provides the conjugacy-type equivalence (the transitive closure of relating
ab to ba), central maps, contracted-semigroup-ring arithmetic, trace
evaluation, the canonical minimal trace into the free module on the nonzero
classes, and the associated decision procedures.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, PreconditionError
from .linalg import rank
from .scalars import FieldElem, Q, fe, fe_one, fe_zero


@dataclass(frozen=True)
class FiniteSemigroup:
    """A validated Cayley table with an absorbing zero element."""

    table: tuple
    zero: int
    labels: tuple | None = None

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def nonzero_elements(self):
        return [i for i in range(self.size) if i != self.zero]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def __repr__(self):
        return f"FiniteSemigroup(size={self.size}, zero={self.zero})"


def build_semigroup(table, zero_index: int, labels=None) -> FiniteSemigroup:
    """Validate a Cayley table: squareness, associativity, absorbing zero."""
    rows = tuple(tuple(int(x) for x in row) for row in table)
    n = len(rows)
    if n == 0:
        raise ValueError("empty table")
    if any(len(row) != n for row in rows):
        raise ValueError("table is not square")
    if any(x < 0 or x >= n for row in rows for x in row):
        raise ValueError("table entry out of range")
    if not 0 <= zero_index < n:
        raise ValueError("zero index out of range")
    t = np.array(rows, dtype=np.int64)
    for a in range(n):
        # t[t[a]][b, c] = (a*b)*c  versus  t[a][t][b, c] = a*(b*c)
        if not np.array_equal(t[t[a]], t[a][t]):
            bad = np.argwhere(t[t[a]] != t[a][t])[0]
            b, c = int(bad[0]), int(bad[1])
            raise ValueError(
                f"table not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
            )
    z = zero_index
    if not (np.all(t[z] == z) and np.all(t[:, z] == z)):
        raise ValueError(f"element {z} is not absorbing")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be unique and cover all elements")
    return FiniteSemigroup(rows, zero_index, labels)


def parse_cayley(text: str) -> FiniteSemigroup:
    """Parse the Cayley-table file format.

    First line `n <size> zero <index>`, then <size> rows of element indices,
    then optional `label <index> <name>` lines.  `#` starts a comment.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise ParseError("empty Cayley file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 4 or parts[0] != "n" or parts[2] != "zero":
        raise ParseError("expected `n <size> zero <index>`", lineno)
    try:
        size, zero = int(parts[1]), int(parts[3])
    except ValueError:
        raise ParseError("size and zero index must be integers", lineno) from None
    if len(lines) < 1 + size:
        raise ParseError(f"expected {size} table rows", lineno)
    table = []
    for lineno, line in lines[1: 1 + size]:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError("table rows must be integers", lineno) from None
        if len(row) != size:
            raise ParseError(f"expected {size} entries", lineno)
        table.append(row)
    labels = None
    label_map = {}
    for lineno, line in lines[1 + size:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "label":
            raise ParseError("expected `label <index> <name>`", lineno)
        try:
            idx = int(parts[1])
        except ValueError:
            raise ParseError("label index must be an integer", lineno) from None
        label_map[idx] = parts[2]
    if label_map:
        labels = tuple(label_map.get(i, str(i)) for i in range(size))
    try:
        return build_semigroup(table, zero, labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def matrix_units_semigroup(n: int) -> FiniteSemigroup:
    """Matrix units e_ij (1 <= i,j <= n) with zero; e_ij e_kl = [j=k] e_il."""
    if n < 1:
        raise ValueError("n must be positive")
    size = n * n + 1
    table = [[0] * size for _ in range(size)]
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        if j == k:
            a = matrix_unit_index(n, i, j)
            b = matrix_unit_index(n, k, l)
            table[a][b] = matrix_unit_index(n, i, l)
    labels = ["0"] + [
        f"e{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)
    ]
    return build_semigroup(table, 0, labels)


def matrix_unit_index(n: int, i: int, j: int) -> int:
    """Element index of e_ij (1-based i, j) in matrix_units_semigroup(n)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("matrix unit index out of range")
    return 1 + (i - 1) * n + (j - 1)


def group_with_zero(group_table, labels=None) -> FiniteSemigroup:
    """Adjoin an absorbing zero (index 0) to a group's Cayley table."""
    rows = [list(int(x) for x in row) for row in group_table]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("group table must be square and nonempty")
    identity = None
    for e in range(n):
        if all(rows[e][x] == x == rows[x][e] for x in range(n)):
            identity = e
            break
    if identity is None:
        raise ValueError("input is not a group: no identity element")
    for i in range(n):
        if sorted(rows[i]) != list(range(n)):
            raise ValueError("input is not a group: rows are not permutations")
        if sorted(rows[j][i] for j in range(n)) != list(range(n)):
            raise ValueError("input is not a group: columns are not permutations")
    size = n + 1
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i + 1][j + 1] = rows[i][j] + 1
    if labels is not None:
        labels = ("0",) + tuple(labels)
    return build_semigroup(table, 0, labels)


def endo_semigroup(n: int) -> FiniteSemigroup:
    """All set maps {0..n-1} -> {0..n-1} under composition, zero adjoined.

    Element 1 + k corresponds to the k-th map in lexicographic order of its
    image tuple; the product f*g is "apply g, then f".
    """
    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    maps = list(itertools.product(range(n), repeat=n))
    index = {m: i + 1 for i, m in enumerate(maps)}
    size = len(maps) + 1
    table = [[0] * size for _ in range(size)]
    for f in maps:
        for g in maps:
            comp = tuple(f[g[x]] for x in range(n))
            table[index[f]][index[g]] = index[comp]
    labels = ["0"] + ["m" + "".join(str(x) for x in m) for m in maps]
    return build_semigroup(table, 0, labels)


def endo_map_index(n: int, images) -> int:
    """Element index of the map with the given 0-based image tuple."""
    images = tuple(images)
    if len(images) != n or any(not 0 <= x < n for x in images):
        raise ValueError("bad image tuple")
    idx = 0
    for x in images:
        idx = idx * n + x
    return 1 + idx


# ---------------------------------------------------------------------------
# The conjugacy-type equivalence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimPartition:
    """Partition by the transitive closure of relating ab to ba.

    Classes are sorted tuples of element indices, ordered by least member,
    so the partition is a canonical value.
    """

    class_of: tuple
    classes: tuple
    zero_class_id: int

    @property
    def nonzero_class_ids(self):
        return tuple(
            i for i in range(len(self.classes)) if i != self.zero_class_id
        )

    def representatives(self):
        """One element per nonzero class (the least index in each)."""
        return tuple(self.classes[i][0] for i in self.nonzero_class_ids)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


_SIM_CACHE: "weakref.WeakKeyDictionary[FiniteSemigroup, SimPartition]" = (
    weakref.WeakKeyDictionary()
)


def sim_classes(G: FiniteSemigroup, pair_order=None) -> SimPartition:
    """Union-find closure of the merges {ab, ba} over all ordered pairs.

    `pair_order` is only for tests: any permutation of the pairs must give
    the identical partition.  Results for the default order are cached per
    semigroup (the partition is a pure function of the table).
    """
    if pair_order is None:
        cached = _SIM_CACHE.get(G)
        if cached is not None:
            return cached
    n = G.size
    uf = _UnionFind(n)
    pairs = pair_order if pair_order is not None else itertools.product(range(n), repeat=2)
    for a, b in pairs:
        uf.union(G.table[a][b], G.table[b][a])
    groups = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    classes = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0])
    class_of = [0] * n
    zero_class_id = 0
    for cid, cls in enumerate(classes):
        for x in cls:
            class_of[x] = cid
        if G.zero in cls:
            zero_class_id = cid
    result = SimPartition(tuple(class_of), tuple(classes), zero_class_id)
    if pair_order is None:
        _SIM_CACHE[G] = result
    return result


def sim_witness_chain(G: FiniteSemigroup, g: int, h: int):
    """Shortest chain g = a1 b1, b1 a1 = a2 b2, ..., bn an = h, or None.

    Returns the empty list when g == h, a list of (a, b) pairs when a chain
    exists, and None when g and h are inequivalent.
    """
    if g == h:
        return []
    n = G.size
    adjacency = {}
    for a in range(n):
        row = G.table[a]
        for b in range(n):
            u, v = row[b], G.table[b][a]
            adjacency.setdefault(u, {}).setdefault(v, (a, b))
    parent = {g: None}
    frontier = [g]
    while frontier:
        nxt = []
        for u in frontier:
            for v, witness in adjacency.get(u, {}).items():
                if v not in parent:
                    parent[v] = (u, witness)
                    if v == h:
                        chain = []
                        node = h
                        while parent[node] is not None:
                            prev, w = parent[node]
                            chain.append(w)
                            node = prev
                        chain.reverse()
                        return chain
                    nxt.append(v)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# Ring elements, central maps, traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeVector:
    """Finitely supported vector in the free module on arbitrary keys."""

    entries: tuple

    @staticmethod
    def _key_rank(k):
        return (type(k).__name__, repr(k))

    @classmethod
    def make(cls, mapping) -> "FreeVector":
        items = [(k, v) for k, v in mapping.items() if v]
        items.sort(key=lambda t: cls._key_rank(t[0]))
        return cls(tuple(items))

    def get(self, key, default=None):
        for k, v in self.entries:
            if k == key:
                return v
        return default

    def as_dict(self):
        return dict(self.entries)

    def __add__(self, other):
        acc = dict(self.entries)
        for k, v in other.entries:
            acc[k] = acc[k] + v if k in acc else v
        return FreeVector.make(acc)

    def __neg__(self):
        return FreeVector(tuple((k, -v) for k, v in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: FieldElem) -> "FreeVector":
        return FreeVector.make({k: c * v for k, v in self.entries})

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        return "FreeVector(" + ", ".join(f"{k!r}: {v!r}" for k, v in self.entries) + ")"


FREE_ZERO = FreeVector(())


@dataclass(frozen=True)
class SgRingElem:
    """Element of the contracted semigroup ring: {element index: coefficient}."""

    coeffs: tuple  # sorted (index, FieldElem) pairs, no zeros

    @classmethod
    def make(cls, mapping) -> "SgRingElem":
        items = sorted((int(k), v) for k, v in mapping.items() if v)
        return cls(tuple(items))

    def as_dict(self):
        return dict(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)


def sg_element(G: FiniteSemigroup, mapping, field=Q) -> SgRingElem:
    acc = {}
    for idx, c in mapping.items():
        idx = int(idx)
        if not 0 <= idx < G.size:
            raise ValueError(f"element index {idx} out of range")
        if not isinstance(c, FieldElem):
            c = fe(c, 0, field)
        if idx == G.zero:
            continue
        acc[idx] = acc[idx] + c if idx in acc else c
    return SgRingElem.make(acc)


def sg_add(x: SgRingElem, y: SgRingElem) -> SgRingElem:
    acc = x.as_dict()
    for k, v in y.coeffs:
        acc[k] = acc[k] + v if k in acc else v
    return SgRingElem.make(acc)


def sg_neg(x: SgRingElem) -> SgRingElem:
    return SgRingElem(tuple((k, -v) for k, v in x.coeffs))


def sg_scale(c: FieldElem, x: SgRingElem) -> SgRingElem:
    return SgRingElem.make({k: c * v for k, v in x.coeffs})


def sg_mul(G: FiniteSemigroup, x: SgRingElem, y: SgRingElem) -> SgRingElem:
    acc = {}
    for a, ca in x.coeffs:
        row = G.table[a]
        for b, cb in y.coeffs:
            prod = row[b]
            if prod == G.zero:
                continue
            c = ca * cb
            acc[prod] = acc[prod] + c if prod in acc else c
    return SgRingElem.make(acc)


def sg_commutator(G: FiniteSemigroup, x: SgRingElem, y: SgRingElem) -> SgRingElem:
    return sg_add(sg_mul(G, x, y), sg_neg(sg_mul(G, y, x)))


@dataclass(frozen=True)
class CentralMap:
    """A zero-preserving central map, as a total value table.

    Values are FieldElems (trace into the field) or FreeVectors (trace into
    the free module on the nonzero classes).
    """

    values: tuple
    field: str

    @property
    def is_vector_valued(self) -> bool:
        return any(isinstance(v, FreeVector) for v in self.values)

    def __call__(self, idx: int):
        return self.values[idx]


def _value_is_zero(v) -> bool:
    return not v


def is_central_map(G: FiniteSemigroup, values) -> bool:
    """Whether values[0-indexed table] is central and kills zero."""
    values = tuple(values)
    if len(values) != G.size:
        raise ValueError("value table must cover every element")
    if not _value_is_zero(values[G.zero]):
        return False
    n = G.size
    for a in range(n):
        row = G.table[a]
        for b in range(a + 1, n):
            if values[row[b]] != values[G.table[b][a]]:
                return False
    return True


def central_map(G: FiniteSemigroup, values, field=Q) -> CentralMap:
    values = tuple(values)
    if not is_central_map(G, values):
        raise PreconditionError("value table is not a central map")
    return CentralMap(values, field)


def sg_trace_eval(G: FiniteSemigroup, delta: CentralMap, x: SgRingElem):
    """sum of a_g * delta(g); FieldElem- or FreeVector-valued with delta."""
    if delta.is_vector_valued:
        acc = FREE_ZERO
        for idx, c in x.coeffs:
            v = delta.values[idx]
            if v:
                acc = acc + v.scale(c)
        return acc
    acc = fe_zero(delta.field)
    for idx, c in x.coeffs:
        acc = acc + c * delta.values[idx]
    return acc


def minimal_trace(G: FiniteSemigroup, field=Q) -> CentralMap:
    """The canonical minimal trace: unit vector at the class of g, 0 on [0]."""
    part = sim_classes(G)
    one = fe_one(field)
    values = []
    for idx in range(G.size):
        cid = part.class_of[idx]
        if cid == part.zero_class_id:
            values.append(FREE_ZERO)
        else:
            values.append(FreeVector.make({cid: one}))
    return CentralMap(tuple(values), field)


def in_commutator_span(G: FiniteSemigroup, x: SgRingElem, field=Q) -> bool:
    """Membership in the additive span of all commutators gh - hg."""
    return not sg_trace_eval(G, minimal_trace(G, field), x)


def is_minimal_sg_trace(G: FiniteSemigroup, delta: CentralMap) -> bool:
    """Linear independence of the values over the distinct nonzero classes."""
    part = sim_classes(G)
    reps = part.representatives()
    if not reps:
        return True
    values = [delta.values[r] for r in reps]
    if any(isinstance(v, FreeVector) for v in values):
        keys = sorted(
            {k for v in values for k, _ in v.entries},
            key=FreeVector._key_rank,
        )
        zero = fe_zero(delta.field)
        rows = [[v.get(k, zero) for k in keys] for v in values]
    else:
        rows = [[v] for v in values]
    return rank(rows, delta.field) == len(reps)


def admits_normalized_minimal(G: FiniteSemigroup) -> bool:
    """True iff there is at most one nonzero class."""
    return len(sim_classes(G).nonzero_class_ids) <= 1
