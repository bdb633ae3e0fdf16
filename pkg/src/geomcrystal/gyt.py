"""The free crystal on generalized Young tableaux.

An element is an integer point (B_{k,j}) indexed by 1 <= k < j <= n+1;
diagonal slots are never stored, and updates addressed to them are
discarded.  Kashiwara operators, their closed-form powers, the Weyl
involutions, and a classical-tableau tensor-rule oracle (via the arabic
reading word into the box crystal) are provided.

The k-th column datum b_k sums the first k entries of column i+1 minus
the first k-1 entries of column i; epsilon is the maximum of these, and
the raising operator acts at the first maximizer, the lowering operator
at the last.
"""

from __future__ import annotations

import json
import random
from typing import Mapping, Sequence

NEG_INF = float("-inf")  # only ever an empty-max placeholder, never a value


class Annihilated(Exception):
    """A raising power would leave the finite box-word crystal."""


def index_pairs(n: int) -> list:
    """All stored index pairs (k, j), 1 <= k < j <= n+1, lexicographic."""
    return [(k, j) for k in range(1, n + 1) for j in range(k + 1, n + 2)]


class SharpElement:
    """Integer lattice point of the free crystal."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Mapping):
        expected = index_pairs(n)
        entries = {key: int(val) for key, val in entries.items()}
        unknown = set(entries) - set(expected)
        if unknown:
            raise ValueError(f"entries outside the index set: {sorted(unknown)}")
        self.n = n
        self.entries = {key: entries.get(key, 0) for key in expected}

    @classmethod
    def zero(cls, n: int) -> "SharpElement":
        return cls(n, {})

    @classmethod
    def random(cls, n: int, rng: random.Random, lo: int = -10, hi: int = 10) -> "SharpElement":
        return cls(n, {key: rng.randint(lo, hi) for key in index_pairs(n)})

    def b(self, k: int, j: int) -> int:
        return self.entries[(k, j)]

    def replace(self, updates: Mapping) -> "SharpElement":
        merged = dict(self.entries)
        merged.update(updates)
        return SharpElement(self.n, merged)

    def key(self) -> tuple:
        return tuple(self.entries[p] for p in index_pairs(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SharpElement):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, self.key()))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "B": {f"{k},{j}": self.entries[(k, j)] for (k, j) in index_pairs(self.n)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SharpElement":
        entries = {}
        for key, val in data["B"].items():
            k, j = (int(part) for part in key.split(","))
            entries[(k, j)] = val
        return cls(data["n"], entries)

    def __repr__(self) -> str:
        return f"SharpElement(n={self.n}, {json.dumps(self.to_json()['B'])})"


# ---------------------------------------------------------------------------
# crystal data


def bvals(i: int, v: SharpElement) -> tuple:
    """Column data (b_1, ..., b_i) for direction i."""
    _check_direction(i, v.n)
    out = []
    acc = 0
    for k in range(1, i + 1):
        acc += v.entries[(k, i + 1)]
        out.append(acc)
        if k < i:
            acc -= v.entries[(k, i)]
    return tuple(out)


def _check_direction(i: int, n: int):
    if not 1 <= i <= n:
        raise IndexError(f"direction {i} out of range 1..{n}")


def epsilon(i: int, v: SharpElement) -> int:
    return max(bvals(i, v))


def weight(v: SharpElement) -> tuple:
    """Coefficients (w_1, ..., w_n) of the weight on the simple-root basis."""
    out = []
    for i in range(1, v.n + 1):
        total = 0
        for k in range(1, i + 1):
            for j in range(i + 1, v.n + 2):
                total += v.entries[(k, j)]
        out.append(-total)
    return tuple(out)


def weight_pairing(i: int, v: SharpElement) -> int:
    """<h_i, wt(v)> through the tridiagonal Cartan pairing."""
    w = weight(v)
    total = 2 * w[i - 1]
    if i >= 2:
        total -= w[i - 2]
    if i < v.n:
        total -= w[i]
    return total


def phi(i: int, v: SharpElement) -> int:
    return epsilon(i, v) + weight_pairing(i, v)


def extremes(i: int, v: SharpElement) -> tuple:
    """(first, last) index k at which b_k attains epsilon."""
    bs = bvals(i, v)
    top = max(bs)
    first = bs.index(top) + 1
    last = len(bs) - bs[::-1].index(top)
    return first, last


def _shift(v: SharpElement, k: int, i: int, amount: int) -> SharpElement:
    """Add ``amount`` to slot (k, i) and subtract it from (k, i+1);
    the diagonal slot (i, i) is not stored and its update is dropped."""
    updates = {}
    if k < i:
        updates[(k, i)] = v.entries[(k, i)] + amount
    updates[(k, i + 1)] = v.entries[(k, i + 1)] - amount
    return v.replace(updates)


def etilde(i: int, v: SharpElement) -> SharpElement:
    """Raising operator: acts at the first maximizer of the column data."""
    first, _ = extremes(i, v)
    return _shift(v, first, i, 1)


def ftilde(i: int, v: SharpElement) -> SharpElement:
    """Lowering operator: acts at the last maximizer of the column data."""
    _, last = extremes(i, v)
    return _shift(v, last, i, -1)


def etilde_pow(i: int, beta: int, v: SharpElement) -> SharpElement:
    """Closed form of the beta-fold raising operator, beta >= 0.

    The per-row amounts come from the two-max formula; empty inner maxima
    drop out of the outer max.
    """
    if beta < 0:
        raise ValueError("negative power; iterate the lowering operator instead")
    if beta == 0:
        return v
    amounts = etilde_pow_amounts(i, beta, v)
    out = v
    for k in range(1, i + 1):
        if amounts[k - 1]:
            out = _shift(out, k, i, amounts[k - 1])
    return out


def etilde_pow_amounts(i: int, beta: int, v: SharpElement) -> tuple:
    """Row amounts (beta_1, ..., beta_i) applied by ``etilde_pow``."""
    _check_direction(i, v.n)
    bs = bvals(i, v)
    prefix = [NEG_INF]
    for b in bs:
        prefix.append(max(prefix[-1], b))
    suffix = [NEG_INF] * (i + 2)
    for k in range(i, 0, -1):
        suffix[k] = max(suffix[k + 1], bs[k - 1])
    out = []
    for k in range(1, i + 1):
        head = max(beta + prefix[k], suffix[k + 1])
        tail = max(beta + prefix[k - 1], suffix[k])
        out.append(int(head - tail))
    return tuple(out)


def ftilde_pow(i: int, count: int, v: SharpElement) -> SharpElement:
    """count-fold lowering operator (iterated; count >= 0)."""
    if count < 0:
        raise ValueError("negative count; use etilde_pow instead")
    _check_direction(i, v.n)
    bs = list(bvals(i, v))
    hits = [0] * (i + 1)
    for _ in range(count):
        top = max(bs)
        last = len(bs) - bs[::-1].index(top)
        hits[last] += 1
        bs[last - 1] += 1
        for k in range(last, i):
            bs[k] += 2
    out = v
    for k in range(1, i + 1):
        if hits[k]:
            out = _shift(out, k, i, -hits[k])
    return out


def crystal_power(i: int, z: int, v: SharpElement) -> SharpElement:
    """Signed power: raising for z >= 0, lowering for z < 0."""
    if z >= 0:
        return etilde_pow(i, z, v)
    return ftilde_pow(i, -z, v)


def stilde(i: int, v: SharpElement) -> SharpElement:
    """Weyl involution in direction i: the signed power by minus the
    weight pairing."""
    return crystal_power(i, -weight_pairing(i, v), v)


class GraphSlice:
    """Radius-r neighborhood of an element under all raising and
    lowering operators: the node set closed under the radius, plus every
    arc (v, i, direction, v') between nodes of the slice."""

    __slots__ = ("root", "radius", "nodes", "arcs")

    def __init__(self, root: SharpElement, radius: int):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        n = root.n
        nodes = {root}
        frontier = [root]
        for _ in range(radius):
            new = []
            for v in frontier:
                for i in range(1, n + 1):
                    for moved in (etilde(i, v), ftilde(i, v)):
                        if moved not in nodes:
                            nodes.add(moved)
                            new.append(moved)
            frontier = new
        self.root = root
        self.radius = radius
        self.nodes = sorted(nodes, key=lambda v: v.key())
        arcs = []
        for v in self.nodes:
            for i in range(1, n + 1):
                up = etilde(i, v)
                if up in nodes:
                    arcs.append((v, i, "e", up))
                down = ftilde(i, v)
                if down in nodes:
                    arcs.append((v, i, "f", down))
        self.arcs = arcs


# ---------------------------------------------------------------------------
# classical tableaux and the box-word oracle


class Tableau:
    """Semistandard Young tableau with entries in 1..n+1 (rows weakly
    increase, columns strictly increase)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        widths = [len(r) for r in rows]
        if any(w == 0 for w in widths) or any(
            a < b for a, b in zip(widths, widths[1:])
        ):
            raise ValueError("row lengths must be positive and weakly decreasing")
        for r, row in enumerate(rows):
            if any(e < 1 for e in row):
                raise ValueError("entries must be >= 1")
            if any(a > b for a, b in zip(row, row[1:])):
                raise ValueError(f"row {r + 1} is not weakly increasing")
            if r:
                above = rows[r - 1]
                if any(above[c] >= row[c] for c in range(len(row))):
                    raise ValueError(f"column strictness fails in row {r + 1}")
        self.rows = rows

    @property
    def shape(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    @property
    def cells(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Tableau":
        t = cls(data["rows"])
        if "shape" in data and tuple(data["shape"]) != t.shape:
            raise ValueError("declared shape disagrees with the rows")
        return t

    @classmethod
    def random(
        cls, n: int, rng: random.Random, max_cells: int = 12, max_tries: int = 200
    ) -> "Tableau":
        """Uniformly random shape (over all partitions with at most
        ``max_cells`` boxes and n+1 rows), filled by a random
        semistandard completion with entries in 1..n+1."""
        shapes = _partitions_upto(max_cells, n + 1)
        for _ in range(max_tries):
            shape = rng.choice(shapes)
            rows = []
            ok = True
            for r, width in enumerate(shape):
                row = []
                for c in range(width):
                    lo = r + 1
                    if c:
                        lo = max(lo, row[c - 1])
                    if r:
                        lo = max(lo, rows[r - 1][c] + 1)
                    if lo > n + 1:
                        ok = False
                        break
                    row.append(rng.randint(lo, n + 1))
                if not ok:
                    break
                rows.append(row)
            if ok:
                return cls(rows)
        raise RuntimeError("could not sample a semistandard tableau")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Tableau({list(list(r) for r in self.rows)})"


_PARTITION_CACHE: dict = {}


def _partitions_upto(max_cells: int, max_rows: int) -> list:
    """All partitions with 1..max_cells boxes and at most max_rows rows."""
    key = (max_cells, max_rows)
    if key not in _PARTITION_CACHE:
        out = []

        def extend(prefix, remaining, limit):
            if prefix:
                out.append(tuple(prefix))
            if remaining == 0 or len(prefix) == max_rows:
                return
            for width in range(min(limit, remaining), 0, -1):
                prefix.append(width)
                extend(prefix, remaining - width, width)
                prefix.pop()

        extend([], max_cells, max_cells)
        _PARTITION_CACHE[key] = sorted(set(out))
    return _PARTITION_CACHE[key]


def arabic_reading(t: Tableau) -> tuple:
    """Reading word: each row right to left, top row first."""
    word = []
    for row in t.rows:
        word.extend(reversed(row))
    return tuple(word)


def tableau_rowcounts(t: Tableau, n: int) -> SharpElement:
    """Off-diagonal row content counts; diagonal counts are discarded."""
    entries = {}
    for r, row in enumerate(t.rows, start=1):
        for value in row:
            if value > n + 1:
                raise ValueError(f"entry {value} exceeds the content range 1..{n + 1}")
            if value > r:
                key = (r, value)
                entries[key] = entries.get(key, 0) + 1
    return SharpElement(n, entries)


def rowcounts_from_word(word: Sequence[int], shape: Sequence[int], n: int) -> SharpElement:
    """Row content counts of a (possibly non-semistandard) filling given
    by its arabic reading word and shape."""
    entries: dict = {}
    pos = 0
    for r, width in enumerate(shape, start=1):
        for value in word[pos : pos + width]:
            if value != r:
                key = (r, value)
                entries[key] = entries.get(key, 0) + 1
        pos += width
    if pos != len(word):
        raise ValueError("word length disagrees with the shape")
    for (k, j) in entries:
        if j < k:
            raise ValueError(f"content {j} above the main diagonal in row {k}")
    return SharpElement(n, entries)


def _box_epsilon(i: int, letter: int) -> int:
    return 1 if letter == i + 1 else 0


def _box_pairing(i: int, letter: int) -> int:
    if letter == i:
        return 1
    if letter == i + 1:
        return -1
    return 0


def tensor_e_pow(i: int, beta: int, word: Sequence[int]) -> tuple:
    """beta-fold raising operator on a box word via the tensor rule.

    Each letter is one tensor factor; the per-factor powers come from the
    two-max formula on the running data b_k.  Raises :class:`Annihilated`
    if any factor would be raised out of the box crystal.
    """
    if beta < 0:
        raise ValueError("negative power is not defined on box words")
    word = tuple(int(w) for w in word)
    if beta == 0:
        return word
    length = len(word)
    bs = []
    pairing_before = 0
    for letter in word:
        bs.append(_box_epsilon(i, letter) - pairing_before)
        pairing_before += _box_pairing(i, letter)
    prefix = [NEG_INF]
    for b in bs:
        prefix.append(max(prefix[-1], b))
    suffix = [NEG_INF] * (length + 2)
    for k in range(length, 0, -1):
        suffix[k] = max(suffix[k + 1], bs[k - 1])
    out = []
    applied = 0
    for k in range(1, length + 1):
        head = max(beta + prefix[k], suffix[k + 1])
        tail = max(beta + prefix[k - 1], suffix[k])
        c_k = int(head - tail)
        letter = word[k - 1]
        if c_k == 0:
            out.append(letter)
        elif c_k == 1 and letter == i + 1:
            out.append(i)
            applied += 1
        else:
            raise Annihilated(
                f"raising power {beta} in direction {i} leaves the box-word crystal"
            )
    if applied != beta:
        raise Annihilated(
            f"raising power {beta} in direction {i} leaves the box-word crystal"
        )
    return tuple(out)


def word_epsilon(i: int, word: Sequence[int]) -> int:
    """Largest raising power applicable to a box word."""
    bs = []
    pairing_before = 0
    for letter in word:
        bs.append(_box_epsilon(i, letter) - pairing_before)
        pairing_before += _box_pairing(i, letter)
    top = max(bs, default=0)
    return top if top > 0 else 0
