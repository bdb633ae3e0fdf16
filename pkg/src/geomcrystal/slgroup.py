"""Matrix realization of SL(n+1) over the rational function field.

Provides the elementary one-parameter generators, diagonal coroot
elements, Gauss (LDU) decomposition as a partial map with explicit
domain errors, the corner-minor torus correction that embeds the lower
unipotent subgroup into the Borel, and the induced one-parameter crystal
action on lower unitriangular matrices.

The crystal action uses the parameter (c-1)/phi(u) for the leading
elementary factor.  The reciprocal convention phi(u)/(c-1) that is
sometimes written for this action is inconsistent with the
one-parameter law e^1 = id and with the chart-level closed form, and is
not used here.  ``crystal_act`` computes the commutation-derived
factored form; ``crystal_act_gauss`` computes the same map from first
principles through the Gauss decomposition, and the test suite proves
the two agree symbolically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .ratfun import RatFun, var


class DecompositionOutsideDomain(ArithmeticError):
    """A leading principal minor vanishes identically; the rational
    Gauss decomposition is undefined there."""


class TorusUndefined(ArithmeticError):
    """Some corner minor is identically zero, so the torus correction
    does not exist at this element."""


class PhiVanishes(ArithmeticError):
    """The subdiagonal coordinate phi_i is identically zero; the crystal
    action in direction i is undefined."""


def cartan_entry(i: int, j: int) -> int:
    """Entry a_ij of the type-A Cartan matrix."""
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


def cartan_matrix(n: int) -> list:
    """The full rank-n type-A Cartan matrix (symmetric, tridiagonal)."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    return [[cartan_entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def _as_ratfun(value) -> RatFun:
    return value if isinstance(value, RatFun) else RatFun.const(value)


class MatRF:
    """Square matrix with :class:`RatFun` entries, 0-indexed storage."""

    __slots__ = ("size", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [[_as_ratfun(e) for e in row] for row in rows]
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        self.size = size
        self.rows = rows

    @classmethod
    def identity(cls, size: int) -> "MatRF":
        one, zero = RatFun.const(1), RatFun.const(0)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)])

    @property
    def rank(self) -> int:
        return self.size - 1

    def __mul__(self, other: "MatRF") -> "MatRF":
        if self.size != other.size:
            raise ValueError("size mismatch")
        m = self.size
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = None
                for k in range(m):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.is_zero or b.is_zero:
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else RatFun.const(0))
            out.append(row)
        return MatRF(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatRF):
            return NotImplemented
        if self.size != other.size:
            return False
        return all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.size)
            for j in range(self.size)
        )

    __hash__ = None

    def first_difference(self, other: "MatRF"):
        """(i, j, lhs, rhs) for the first differing entry, or None."""
        for i in range(self.size):
            for j in range(self.size):
                if not self.rows[i][j] == other.rows[i][j]:
                    return (i, j, self.rows[i][j], other.rows[i][j])
        return None

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "MatRF":
        return MatRF([[self.rows[i][j] for j in col_idx] for i in row_idx])

    def det(self) -> RatFun:
        return _det(self.rows)

    def is_lower_unitriangular(self) -> bool:
        for i in range(self.size):
            if not self.rows[i][i] == 1:
                return False
            for j in range(i + 1, self.size):
                if not self.rows[i][j].is_zero:
                    return False
        return True

    def is_upper_unitriangular(self) -> bool:
        for i in range(self.size):
            if not self.rows[i][i] == 1:
                return False
            for j in range(i):
                if not self.rows[i][j].is_zero:
                    return False
        return True

    def to_json(self) -> dict:
        return {"n": self.rank, "entries": [[str(e) for e in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: Mapping) -> "MatRF":
        from .ratfun import parse

        entries = data["entries"]
        mat = cls([[parse(e) for e in row] for row in entries])
        if mat.rank != data["n"]:
            raise ValueError("matrix size disagrees with declared rank")
        return mat

    def __str__(self) -> str:
        return json.dumps(self.to_json()["entries"])

    def __repr__(self) -> str:
        return f"MatRF(size={self.size})"


def _det(rows: list) -> RatFun:
    m = len(rows)
    if m == 1:
        return rows[0][0]
    if m == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    # expand along the first column, skipping structural zeros
    total = None
    for i in range(m):
        pivot = rows[i][0]
        if pivot.is_zero:
            continue
        minor = [[rows[r][c] for c in range(1, m)] for r in range(m) if r != i]
        term = pivot * _det(minor)
        if i % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else RatFun.const(0)


class TorusElem:
    """Diagonal torus element.  For SL-group elements the product of the
    diagonal entries is 1; constructor paths in this module preserve
    that, and the test suite asserts it."""

    __slots__ = ("diag",)

    def __init__(self, diag: Sequence):
        self.diag = tuple(_as_ratfun(d) for d in diag)

    @classmethod
    def identity(cls, size: int) -> "TorusElem":
        return cls([RatFun.const(1)] * size)

    @property
    def size(self) -> int:
        return len(self.diag)

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        if self.size != other.size:
            raise ValueError("size mismatch")
        return TorusElem([a * b for a, b in zip(self.diag, other.diag)])

    def inverse(self) -> "TorusElem":
        return TorusElem([d**-1 for d in self.diag])

    def as_matrix(self) -> MatRF:
        zero = RatFun.const(0)
        return MatRF(
            [
                [self.diag[i] if i == j else zero for j in range(self.size)]
                for i in range(self.size)
            ]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.size == other.size and all(
            a == b for a, b in zip(self.diag, other.diag)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return "TorusElem(" + ", ".join(str(d) for d in self.diag) + ")"


# ---------------------------------------------------------------------------
# generators


def _check_index(i: int, n: int):
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} out of range 1..{n}")


def x_elem(i: int, t, n: int) -> MatRF:
    """I + t*E_{i,i+1}: the upper elementary one-parameter element."""
    _check_index(i, n)
    mat = MatRF.identity(n + 1)
    mat.rows[i - 1][i] = _as_ratfun(t)
    return mat


def y_elem(i: int, t, n: int) -> MatRF:
    """I + t*E_{i+1,i}: the lower elementary one-parameter element."""
    _check_index(i, n)
    mat = MatRF.identity(n + 1)
    mat.rows[i][i - 1] = _as_ratfun(t)
    return mat


def coroot(i: int, c, n: int) -> TorusElem:
    """diag(1, ..., c, c^-1, ..., 1) with c in slot i (1-indexed)."""
    _check_index(i, n)
    c = _as_ratfun(c)
    if c.is_zero:
        raise ZeroDivisionError("coroot parameter must be nonzero")
    diag = [RatFun.const(1)] * (n + 1)
    diag[i - 1] = c
    diag[i] = c**-1
    return TorusElem(diag)


def factored_unipotent(n: int, coords: Mapping) -> MatRF:
    """Product of lower elementary elements in the triangular pattern
    y_n(a_{1,n})...y_1(a_{1,1}) * y_n(a_{2,n})...y_2(a_{2,2}) * ... *
    y_n(a_{n,n}), for coordinates keyed by (k, j) with 1 <= k <= j <= n.
    """
    out = MatRF.identity(n + 1)
    for k in range(1, n + 1):
        for j in range(n, k - 1, -1):
            out = out * y_elem(j, coords[(k, j)], n)
    return out


def symbolic_lower_coords(n: int, prefix: str = "a") -> dict:
    """Fresh symbols {(k, j): prefix[k,j]} for 1 <= k <= j <= n."""
    return {
        (k, j): var(f"{prefix}[{k},{j}]")
        for k in range(1, n + 1)
        for j in range(k, n + 1)
    }


def generic_unipotent(n: int) -> MatRF:
    """The factored unipotent element on fresh symbolic coordinates."""
    return factored_unipotent(n, symbolic_lower_coords(n))


# ---------------------------------------------------------------------------
# Gauss decomposition


@dataclass
class GaussFactors:
    """g = lower * torus * upper with lower/upper unitriangular."""

    lower: MatRF
    torus: TorusElem
    upper: MatRF

    @property
    def borel(self) -> MatRF:
        """The Borel factor lower*torus of the decomposition."""
        return self.lower * self.torus.as_matrix()

    def recompose(self) -> MatRF:
        return self.lower * self.torus.as_matrix() * self.upper


def gauss_decompose(g: MatRF) -> GaussFactors:
    """LDU decomposition by sequential elimination on the leading
    principal minors.  Raises :class:`DecompositionOutsideDomain` when a
    pivot (a ratio of consecutive leading minors) is identically zero.
    """
    m = g.size
    work = [list(row) for row in g.rows]
    lower = MatRF.identity(m)
    upper = MatRF.identity(m)
    diag = []
    for k in range(m):
        pivot = work[k][k]
        if pivot.is_zero:
            raise DecompositionOutsideDomain(
                f"leading principal minor {k + 1} vanishes identically"
            )
        diag.append(pivot)
        for i in range(k + 1, m):
            lower.rows[i][k] = work[i][k] / pivot
        for j in range(k + 1, m):
            upper.rows[k][j] = work[k][j] / pivot
        for i in range(k + 1, m):
            if work[i][k].is_zero:
                continue
            factor = work[i][k] / pivot
            for j in range(k + 1, m):
                if not work[k][j].is_zero:
                    work[i][j] = work[i][j] - factor * work[k][j]
    return GaussFactors(lower, TorusElem(diag), upper)


# ---------------------------------------------------------------------------
# unipotent-crystal data on the lower unipotent subgroup


def chi(i: int, g: MatRF) -> RatFun:
    """Subdiagonal coordinate of the lower-unipotent part of a Borel
    element: entry (i+1, i) divided by the diagonal entry (i, i)."""
    _check_index(i, g.rank)
    return g.rows[i][i - 1] / g.rows[i - 1][i - 1]


def phi(i: int, u: MatRF) -> RatFun:
    """Entry (i+1, i) of a lower unitriangular element."""
    _check_index(i, u.rank)
    return u.rows[i][i - 1]


def corner_minor(i: int, u: MatRF) -> RatFun:
    """Determinant of the lower-left i x i block (last i rows, first i
    columns)."""
    _check_index(i, u.rank)
    m = u.size
    return u.submatrix(range(m - i, m), range(i)).det()


def torus_weight(u: MatRF) -> TorusElem:
    """Product over i of coroot(i, 1/corner_minor(i, u)); the torus part
    of the Borel embedding and the weight map of the induced crystal."""
    n = u.rank
    out = TorusElem.identity(u.size)
    for i in range(1, n + 1):
        m_i = corner_minor(i, u)
        if m_i.is_zero:
            raise TorusUndefined(f"corner minor {i} is identically zero")
        out = out * coroot(i, m_i**-1, n)
    return out


def borel_embed(u: MatRF) -> MatRF:
    """u times its torus correction; lands in the lower Borel."""
    return u * torus_weight(u).as_matrix()


def crystal_act(i: int, c, u: MatRF) -> MatRF:
    """One-parameter crystal action on a lower unitriangular element.

    Computed in the commutation-derived factored form
    x_i((c-1)/phi) * u * x_i((1-c)/(c*phi)) * coroot(i, c)^-1,
    which equals the lower factor of the Gauss decomposition of
    x_i((c-1)/phi) * u (see :func:`crystal_act_gauss`).
    """
    n = u.rank
    _check_index(i, n)
    c = _as_ratfun(c)
    p = phi(i, u)
    if p.is_zero:
        raise PhiVanishes(f"phi_{i} vanishes identically on this element")
    t1 = (c - 1) / p
    t2 = (1 - c) / (c * p)
    return x_elem(i, t1, n) * u * x_elem(i, t2, n) * coroot(i, c, n).inverse().as_matrix()


def crystal_act_gauss(i: int, c, u: MatRF) -> MatRF:
    """The same action from first principles: the lower unitriangular
    factor of the Gauss decomposition of x_i((c-1)/phi(u)) * u."""
    n = u.rank
    _check_index(i, n)
    c = _as_ratfun(c)
    p = phi(i, u)
    if p.is_zero:
        raise PhiVanishes(f"phi_{i} vanishes identically on this element")
    t1 = (c - 1) / p
    return gauss_decompose(x_elem(i, t1, n) * u).lower


def borel_pair_act(x: MatRF, b1: MatRF, b2: MatRF):
    """Unipotent action on a pair of Borel elements: the first factor
    absorbs x, the second absorbs the upper remainder of the first."""
    f1 = gauss_decompose(x * b1)
    f2 = gauss_decompose(f1.upper * b2)
    return f1.borel, f2.borel


# ---------------------------------------------------------------------------
# identity checks


@dataclass
class IdentityReport:
    identity: str
    holds: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"identity": self.identity, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _matrix_report(name: str, lhs: MatRF, rhs: MatRF) -> IdentityReport:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return IdentityReport(name, True)
    i, j, a, b = diff
    return IdentityReport(name, False, f"entry ({i + 1},{j + 1}): {a} != {b}")


def check_braid_relation(i: int, j: int, n: int) -> IdentityReport:
    """Verify the rank-2 relation between the actions in directions i
    and j on the generic factored unipotent element, with symbolic
    parameters.  In type A only the commuting case (distant indices) and
    the braid case (adjacent indices) occur."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise IndexError("need two distinct directions in range")
    u = generic_unipotent(n)
    c1, c2 = var("c1"), var("c2")
    pairing = cartan_entry(i, j)
    if pairing == 0:
        name = f"commute(e_{i}, e_{j}) at n={n}"
        lhs = crystal_act(i, c1, crystal_act(j, c2, u))
        rhs = crystal_act(j, c2, crystal_act(i, c1, u))
    else:
        name = f"braid(e_{i}, e_{j}) at n={n}"
        lhs = crystal_act(i, c1, crystal_act(j, c1 * c2, crystal_act(i, c2, u)))
        rhs = crystal_act(j, c2, crystal_act(i, c1 * c2, crystal_act(j, c1, u)))
    return _matrix_report(name, lhs, rhs)


def check_borel_embed_equivariant(i: int, n: int) -> IdentityReport:
    """The Borel embedding intertwines the unipotent actions on the
    lower unipotent subgroup and on the Borel, for the generator
    x_i(s) applied to the generic factored element."""
    u = generic_unipotent(n)
    x = x_elem(i, var("s"), n)
    lhs = borel_embed(gauss_decompose(x * u).lower)
    rhs = gauss_decompose(x * borel_embed(u)).borel
    return _matrix_report(f"embed-equivariance(i={i}) at n={n}", lhs, rhs)


def check_torus_compatibility(i: int, n: int) -> IdentityReport:
    """Generator-level torus identity behind the Borel embedding: the
    torus correction of the transported element equals the torus factor
    of x_i(s)*u times the correction of u."""
    u = generic_unipotent(n)
    x = x_elem(i, var("s"), n)
    factors = gauss_decompose(x * u)
    lhs = torus_weight(factors.lower)
    rhs = factors.torus * torus_weight(u)
    name = f"torus-compatibility(i={i}) at n={n}"
    for k, (a, b) in enumerate(zip(lhs.diag, rhs.diag)):
        if not a == b:
            return IdentityReport(name, False, f"diagonal slot {k + 1}: {a} != {b}")
    return IdentityReport(name, True)
