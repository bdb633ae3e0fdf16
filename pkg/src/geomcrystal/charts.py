"""The two torus charts on the lower unipotent subgroup.

The factor chart ("a") parametrizes the dense torus by the parameters of
the triangular product of lower elementary elements; the ratio chart
("A") is its image under the birational coordinate change whose
components are ratios of staircase products.  Both carry the closed-form
crystal action, every component of which is subtraction-free, so each
carries a positivity certificate by construction.

Coordinates are stored sparsely by index pair (k, j), 1 <= k <= j <= n;
serialization orders indices lexicographically.  The crystal parameter
is a fresh symbol named ``z`` when not supplied numerically.
"""

from __future__ import annotations

from typing import Mapping

from .ratfun import RatFun, var
from .slgroup import MatRF, TorusElem, coroot, factored_unipotent


def crystal_parameter() -> RatFun:
    """The symbolic one-parameter group variable of the crystal action."""
    return var("z")


def index_pairs(n: int) -> list:
    return [(k, j) for k in range(1, n + 1) for j in range(k, n + 1)]


def _as_ratfun(value) -> RatFun:
    return value if isinstance(value, RatFun) else RatFun.const(value)


def _sum(values) -> RatFun:
    values = list(values)
    if not values:
        raise ValueError("empty sum has no subtraction-free form")
    total = values[0]
    for v in values[1:]:
        total = total + v
    return total


def _prod(values) -> RatFun:
    total = RatFun.const(1)
    for v in values:
        total = total * v
    return total


class _ChartPoint:
    """Shared storage/serialization for both charts."""

    chart: str = ""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Mapping):
        expected = set(index_pairs(n))
        coords = {key: _as_ratfun(val) for key, val in coords.items()}
        if set(coords) != expected:
            raise ValueError(
                f"chart point of rank {n} needs exactly the index pairs {sorted(expected)}"
            )
        self.n = n
        self.coords = coords

    @classmethod
    def symbolic(cls, n: int):
        prefix = "a" if cls.chart == "a" else "A"
        return cls(
            n, {(k, j): var(f"{prefix}[{k},{j}]") for (k, j) in index_pairs(n)}
        )

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and all(
            self.coords[key] == other.coords[key] for key in index_pairs(self.n)
        )

    __hash__ = None

    def all_positive_certs(self) -> bool:
        return all(v.positive_cert for v in self.coords.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chart": self.chart,
            "coords": {
                f"{k},{j}": str(self.coords[(k, j)]) for (k, j) in index_pairs(self.n)
            },
        }

    @classmethod
    def from_json(cls, data: Mapping):
        from .ratfun import parse

        if data.get("chart") != cls.chart:
            raise ValueError(f"expected a chart-{cls.chart!r} point")
        coords = {}
        for key, text in data["coords"].items():
            k, j = (int(part) for part in key.split(","))
            coords[(k, j)] = parse(text)
        return cls(data["n"], coords)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{key}: {self.coords[key]}" for key in index_pairs(self.n)
        )
        return f"{type(self).__name__}({body})"


def factor_act_coefficient(i: int, k: int, coords: Mapping, alpha) -> RatFun:
    """Column-i mixing ratio of the factor-chart action, defined for
    0 <= k <= i; the boundary values are 1 at k = 0 and alpha at k = i.
    """
    if k == 0:
        return RatFun.const(1)
    head = _sum(coords[(l, i)] for l in range(1, k + 1)) * alpha
    tail = [coords[(l, i)] for l in range(k + 1, i + 1)]
    num = head + _sum(tail) if tail else head
    den = _sum(coords[(l, i)] for l in range(1, i + 1))
    return num / den


class TorusPointA(_ChartPoint):
    """Point of the factor chart: parameters of the triangular product
    of lower elementary elements."""

    chart = "a"

    def to_matrix(self) -> MatRF:
        return factored_unipotent(self.n, self.coords)

    def act(self, i: int, alpha) -> "TorusPointA":
        """Closed-form crystal action: columns i-1, i, i+1 are rescaled
        by consecutive mixing ratios, everything else is fixed."""
        alpha = _as_ratfun(alpha)
        cache: dict = {}

        def coeff(k: int) -> RatFun:
            if k not in cache:
                cache[k] = factor_act_coefficient(i, k, self.coords, alpha)
            return cache[k]

        out = {}
        for (k, j), value in self.coords.items():
            if j == i - 1:
                out[(k, j)] = coeff(k) * value
            elif j == i:
                out[(k, j)] = value / (coeff(k - 1) * coeff(k))
            elif j == i + 1:
                out[(k, j)] = coeff(k - 1) * value
            else:
                out[(k, j)] = value
        return TorusPointA(self.n, out)

    def to_ratio(self) -> "TorusPointB":
        """Coordinate change onto the ratio chart: each new coordinate is
        a staircase product over a shorter staircase product."""
        out = {}
        for (k, j) in index_pairs(self.n):
            num = _prod(self.coords[(k - l, j - l)] for l in range(k))
            den = _prod(self.coords[(k - 1 - l, j - l)] for l in range(k - 1))
            out[(k, j)] = num / den
        return TorusPointB(self.n, out)


def ratio_ladder(i: int, j: int, coords: Mapping) -> RatFun:
    """Column product prod_{l<=j} A_{l,i} / prod_{l<=j-1} A_{l,i-1}."""
    num = _prod(coords[(l, i)] for l in range(1, j + 1))
    den = _prod(coords[(l, i - 1)] for l in range(1, j))
    return num / den


def ratio_act_coefficient(i: int, k: int, coords: Mapping, alpha) -> RatFun:
    """Mixing ratio of the ratio-chart action for 1 <= k <= i: a ratio of
    two alpha-weighted sums of the column ladder products.  Empty inner
    sums drop out."""
    ladders = [ratio_ladder(i, j, coords) for j in range(1, i + 1)]
    num_head = _sum(ladders[:k]) * alpha
    num_tail = ladders[k:]
    num = num_head + _sum(num_tail) if num_tail else num_head
    den_tail = _sum(ladders[k - 1 :])
    den = _sum(ladders[: k - 1]) * alpha + den_tail if k > 1 else den_tail
    return num / den


class TorusPointB(_ChartPoint):
    """Point of the ratio chart, the image of the factor chart under the
    staircase-ratio coordinate change."""

    chart = "A"

    def act(self, i: int, alpha) -> "TorusPointB":
        """Closed-form crystal action: column i-1 is multiplied by the
        mixing ratios, column i is divided by them, all else fixed."""
        alpha = _as_ratfun(alpha)
        cache: dict = {}

        def coeff(k: int) -> RatFun:
            if k not in cache:
                cache[k] = ratio_act_coefficient(i, k, self.coords, alpha)
            return cache[k]

        out = {}
        for (k, j), value in self.coords.items():
            if j == i - 1:
                out[(k, j)] = coeff(k) * value
            elif j == i:
                out[(k, j)] = value / coeff(k)
            else:
                out[(k, j)] = value
        return TorusPointB(self.n, out)

    def to_factor(self) -> TorusPointA:
        """Inverse coordinate change: column products over the previous
        column's products."""
        out = {}
        for (k, j) in index_pairs(self.n):
            num = _prod(self.coords[(l, j)] for l in range(1, k + 1))
            den = _prod(self.coords[(l, j - 1)] for l in range(1, k))
            out[(k, j)] = num / den
        return TorusPointA(self.n, out)

    def weight_component(self, i: int) -> RatFun:
        """Reciprocal of the hook product prod_{k<=i, j>=i} A_{k,j}."""
        return RatFun.const(1) / _prod(
            self.coords[(k, j)]
            for k in range(1, i + 1)
            for j in range(i, self.n + 1)
        )

    def torus_weight(self) -> TorusElem:
        """Torus-valued weight in ratio coordinates: the product of
        coroots at the reciprocal hook products."""
        out = TorusElem.identity(self.n + 1)
        for i in range(1, self.n + 1):
            out = out * coroot(i, self.weight_component(i), self.n)
        return out
