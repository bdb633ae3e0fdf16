"""Structural tropicalization of subtraction-free rational maps.

A certified rational function is rewritten over the max-plus semiring:
multiplication becomes addition, division subtraction, addition becomes
max, and positive constants become 0.  The rewriting walks the value's
construction-history certificate, so expression size stays linear in
the formula; the independent degree oracle (exact monomial substitution
followed by univariate degree extraction) proves pointwise correctness.

Bottom is the explicit minus-infinity value of the semiring: a sum with
a Bottom operand is Bottom, a max ignores Bottom operands, and an empty
max is Bottom.  Expressions built from nonzero certified values never
evaluate to Bottom at the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .gyt import SharpElement
from .ratfun import (
    CAdd,
    CConst,
    CDiv,
    CMul,
    CPow,
    CVar,
    RatFun,
    cert_variables,
)


class NotPositive(ValueError):
    """Tropicalization requires a subtraction-free certificate."""


class _Bottom:
    __slots__ = ()

    def __repr__(self) -> str:
        return "-inf"


BOTTOM = _Bottom()


@dataclass(frozen=True, slots=True)
class TVar:
    index: int


@dataclass(frozen=True, slots=True)
class TConst:
    pass


@dataclass(frozen=True, slots=True)
class TSum:
    args: tuple


@dataclass(frozen=True, slots=True)
class TDiff:
    pos: object
    neg: object


@dataclass(frozen=True, slots=True)
class TMax:
    args: tuple


@dataclass(frozen=True, slots=True)
class TBottom:
    pass


def tmax(args) -> object:
    """Max node; Bottom children drop, an empty max is Bottom, a
    singleton collapses to its child."""
    kept = []
    for a in args:
        if isinstance(a, TBottom):
            continue
        if isinstance(a, TMax):
            kept.extend(a.args)
        else:
            kept.append(a)
    if not kept:
        return TBottom()
    if len(kept) == 1:
        return kept[0]
    return TMax(tuple(kept))


def tsum(args) -> object:
    """Sum node; a Bottom child makes the whole sum Bottom."""
    kept = []
    for a in args:
        if isinstance(a, TBottom):
            return TBottom()
        if isinstance(a, TSum):
            kept.extend(a.args)
        elif not isinstance(a, TConst):
            kept.append(a)
    if not kept:
        return TConst()
    if len(kept) == 1:
        return kept[0]
    return TSum(tuple(kept))


def tdiff(pos, neg) -> object:
    if isinstance(neg, TBottom):
        raise ValueError("cannot subtract Bottom")
    if isinstance(pos, TBottom):
        return TBottom()
    if isinstance(neg, TConst):
        return pos
    return TDiff(pos, neg)


def _scaled(node, k: int) -> object:
    if k == 0:
        return TConst()
    body = tsum([node] * abs(k))
    if k > 0:
        return body
    return tdiff(TConst(), body)


class TropExpr:
    """Max-plus expression over a fixed ordered variable tuple."""

    __slots__ = ("vars", "root")

    def __init__(self, vars: tuple, root):
        self.vars = tuple(vars)
        self.root = root

    def eval(self, point):
        """Evaluate at an integer vector (aligned with :attr:`vars`) or a
        mapping {name: int}; returns an int or BOTTOM."""
        if isinstance(point, Mapping):
            values = [int(point[name]) for name in self.vars]
        else:
            values = [int(x) for x in point]
            if len(values) != len(self.vars):
                raise ValueError(
                    f"point has {len(values)} coordinates, expression has {len(self.vars)}"
                )
        return _eval_node(self.root, values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropExpr):
            return NotImplemented
        return self.vars == other.vars and self.root == other.root

    __hash__ = None

    def __str__(self) -> str:
        return _prefix(self.root, self.vars)

    def __repr__(self) -> str:
        return f"TropExpr({self})"


def _eval_node(node, values: list):
    if isinstance(node, TVar):
        return values[node.index]
    if isinstance(node, TConst):
        return 0
    if isinstance(node, TBottom):
        return BOTTOM
    if isinstance(node, TSum):
        total = 0
        for a in node.args:
            v = _eval_node(a, values)
            if v is BOTTOM:
                return BOTTOM
            total += v
        return total
    if isinstance(node, TDiff):
        p = _eval_node(node.pos, values)
        n = _eval_node(node.neg, values)
        if n is BOTTOM:
            raise ValueError("cannot subtract Bottom")
        if p is BOTTOM:
            return BOTTOM
        return p - n
    if isinstance(node, TMax):
        best = BOTTOM
        for a in node.args:
            v = _eval_node(a, values)
            if v is BOTTOM:
                continue
            if best is BOTTOM or v > best:
                best = v
        return best
    raise TypeError(f"unknown node {node!r}")


def _prefix(node, vars: tuple) -> str:
    if isinstance(node, TVar):
        return vars[node.index]
    if isinstance(node, TConst):
        return "0"
    if isinstance(node, TBottom):
        return "-inf"
    if isinstance(node, TSum):
        return "(+ " + " ".join(_prefix(a, vars) for a in node.args) + ")"
    if isinstance(node, TDiff):
        return f"(- {_prefix(node.pos, vars)} {_prefix(node.neg, vars)})"
    if isinstance(node, TMax):
        return "(max " + " ".join(_prefix(a, vars) for a in node.args) + ")"
    raise TypeError(f"unknown node {node!r}")


def tropicalize(f: RatFun, vars: tuple | None = None) -> TropExpr:
    """Rewrite a certified value over the max-plus semiring.

    ``vars`` optionally fixes the variable order (it must cover the
    certificate's variables); by default the certificate's variables in
    sorted order are used.
    """
    if f.cert is None:
        raise NotPositive("value carries no subtraction-free certificate")
    names = cert_variables(f.cert)
    if vars is None:
        vars = tuple(sorted(names))
    else:
        vars = tuple(vars)
        missing = names - set(vars)
        if missing:
            raise ValueError(f"variable order misses {sorted(missing)}")
    index = {name: i for i, name in enumerate(vars)}
    return TropExpr(vars, _build(f.cert, index))


def _build(cert, index: Mapping):
    if isinstance(cert, CVar):
        return TVar(index[cert.name])
    if isinstance(cert, CConst):
        return TConst()
    if isinstance(cert, CAdd):
        return tmax([_build(a, index) for a in cert.args])
    if isinstance(cert, CMul):
        return tsum([_build(a, index) for a in cert.args])
    if isinstance(cert, CDiv):
        return tdiff(_build(cert.num, index), _build(cert.den, index))
    if isinstance(cert, CPow):
        return _scaled(_build(cert.base, index), cert.exponent)
    raise TypeError(f"unknown certificate node {cert!r}")


def degree_oracle(f: RatFun, point) -> int:
    """Ground truth for tropicalization: substitute the monomial
    co-character exactly and read off the univariate degree."""
    return f.subst_monomial(point).degree()


class TropMap:
    """Componentwise tropicalized map between co-character lattices."""

    __slots__ = ("vars", "names", "components")

    def __init__(self, vars: tuple, names: tuple, components: tuple):
        self.vars = tuple(vars)
        self.names = tuple(names)
        self.components = tuple(components)

    @property
    def domain_dim(self) -> int:
        return len(self.vars)

    @property
    def codomain_dim(self) -> int:
        return len(self.components)

    def eval(self, point) -> tuple:
        if not isinstance(point, Mapping):
            point = dict(zip(self.vars, point))
        return tuple(e.eval(point) for e in self.components)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "components": {n: str(e) for n, e in zip(self.names, self.components)},
        }

    def __repr__(self) -> str:
        return f"TropMap({len(self.vars)} -> {len(self.components)})"


def ud_map(components, vars: tuple | None = None) -> TropMap:
    """Tropicalize a named family of certified values over a shared
    domain.  ``components`` is a mapping name -> RatFun or a sequence of
    (name, RatFun) pairs."""
    if isinstance(components, Mapping):
        items = list(components.items())
    else:
        items = [(name, f) for name, f in components]
    if vars is None:
        names: set = set()
        for _, f in items:
            if f.cert is None:
                raise NotPositive(f"component {_!r} carries no certificate")
            names |= cert_variables(f.cert)
        vars = tuple(sorted(names))
    exprs = tuple(tropicalize(f, vars) for _, f in items)
    return TropMap(vars, tuple(name for name, _ in items), exprs)


# ---------------------------------------------------------------------------
# identification of the chart lattice with the tableau lattice


def chart_to_sharp(n: int, values: Mapping) -> SharpElement:
    """Send the chart coordinate (k, j), 1 <= k <= j <= n, to the stored
    slot (k, j+1) of the free crystal (the index shift j -> j+1)."""
    entries = {}
    for (k, j), val in values.items():
        if not 1 <= k <= j <= n:
            raise ValueError(f"chart index {(k, j)} out of range")
        entries[(k, j + 1)] = int(val)
    return SharpElement(n, entries)


def sharp_to_chart(v: SharpElement) -> dict:
    """Inverse identification: slot (k, j) maps to coordinate (k, j-1)."""
    return {(k, j - 1): val for (k, j), val in v.entries.items()}
